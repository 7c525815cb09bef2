//! Mixed correlation functions of the lifted colored process: a gamma-ratio
//! prefactor times a simplex integral of per-color Whittaker correlation
//! determinants against the Dirichlet-type weight `Π δ_l^{τ_l - n_l - 1}`,
//! where `τ_l = a_l ā_l`.
//!
//! The simplex is parameterized by stick-breaking variables
//! `δ_j = v_j Π_{i<j} (1-v_i)`, which turns the weight together with the
//! Jacobian into a product of one-dimensional Jacobi weights
//! `v_j^{τ_j - n_j - 1} (1-v_j)^{Σ_{l>j}(τ_l - n_l) - 1}`; each level then
//! integrates with Gauss–Jacobi nodes, so the endpoint singularities sit in
//! the quadrature weight and the remaining factor is smooth. Node counts
//! double until two successive evaluations agree to the requested tolerance.

use num_complex::Complex64;

use bigwreath_core::measures::a_params;
use bigwreath_core::{FiniteGroup, Scalar};

use crate::error::{Result, WhittakerError};
use crate::gamma::gamma_real;
use crate::kernel::WhittakerKernel;
use crate::quadrature::GaussJacobi;

/// Result of a mixed-correlation evaluation.
#[derive(Debug, Clone, Copy)]
pub struct MixedValue {
    pub value: f64,
    pub est_error: f64,
    /// Gauss–Jacobi nodes per simplex dimension in the accepted evaluation.
    pub nodes_per_dim: usize,
}

pub const DEFAULT_TOL: f64 = 1e-6;

/// Closed form of the simplex integral with all correlation factors set to
/// one: `Γ(Στ) Π Γ(τ_l - n_l) / (Π Γ(τ_l) · Γ(Σ(τ_l - n_l)))`.
pub fn dirichlet_moment(tau: &[f64], counts: &[usize]) -> f64 {
    let total: f64 = tau.iter().sum();
    let shifted: f64 = tau.iter().zip(counts).map(|(&t, &n)| t - n as f64).sum();
    let mut value = gamma_real(total) / gamma_real(shifted);
    for (&t, &n) in tau.iter().zip(counts) {
        value *= gamma_real(t - n as f64) / gamma_real(t);
    }
    value
}

fn tau_params(g: &FiniteGroup, z: &[Scalar]) -> Result<Vec<f64>> {
    let a = a_params(g, z)?;
    Ok(a.iter().map(|al| al.to_c64().norm_sqr()).collect())
}

/// Integrand factors: per color `l`, a function of the scaled points
/// `x^{(l)}/δ_l`.
trait RhoFactors {
    fn eval(&self, color: usize, scaled_points: &[f64]) -> Result<f64>;
}

struct WhittakerFactors {
    kernels: Vec<WhittakerKernel>,
}

impl RhoFactors for WhittakerFactors {
    fn eval(&self, color: usize, scaled_points: &[f64]) -> Result<f64> {
        self.kernels[color].correlation(scaled_points)
    }
}

/// Test hook replacing every correlation factor by the constant one; the
/// integral then has the [`dirichlet_moment`] closed form.
struct UnitFactors;

impl RhoFactors for UnitFactors {
    fn eval(&self, _color: usize, _points: &[f64]) -> Result<f64> {
        Ok(1.0)
    }
}

struct SimplexIntegrator<'a> {
    tau: &'a [f64],
    points: &'a [Vec<f64>],
    rho: &'a dyn RhoFactors,
    rules: Vec<GaussJacobi>,
}

impl<'a> SimplexIntegrator<'a> {
    fn new(
        tau: &'a [f64],
        points: &'a [Vec<f64>],
        rho: &'a dyn RhoFactors,
        nodes: usize,
    ) -> Result<Self> {
        let k = tau.len();
        let mut rules = Vec::with_capacity(k - 1);
        for j in 0..k - 1 {
            let pow_v = tau[j] - points[j].len() as f64 - 1.0;
            let tail: f64 = (j + 1..k).map(|l| tau[l] - points[l].len() as f64).sum();
            let pow_1mv = tail - 1.0;
            rules.push(GaussJacobi::new(nodes, pow_1mv, pow_v)?);
        }
        Ok(SimplexIntegrator {
            tau,
            points,
            rho,
            rules,
        })
    }

    /// Integrates levels `depth..k-1`, with `remaining` the unallocated
    /// simplex mass `Π_{i<depth}(1-v_i)`.
    fn recurse(&self, depth: usize, remaining: f64, deltas: &mut Vec<f64>) -> Result<f64> {
        let k = self.tau.len();
        if depth == k - 1 {
            deltas.push(remaining);
            let mut prod = 1.0;
            for (l, delta) in deltas.iter().enumerate() {
                if self.points[l].is_empty() {
                    continue;
                }
                let scaled: Vec<f64> = self.points[l].iter().map(|x| x / delta).collect();
                prod *= self.rho.eval(l, &scaled)?;
                if prod == 0.0 {
                    break;
                }
            }
            deltas.pop();
            return Ok(prod);
        }
        let rule = &self.rules[depth];
        // per-level weights v^{τ_j - n_j - 1} (1-v)^{Σ_{l>j}(τ_l - n_l) - 1}
        // absorb the full simplex weight together with the stick-breaking
        // Jacobian, so no residual power of `remaining` is left over
        rule.integrate_unit(|v| {
            deltas.push(remaining * v);
            let inner = self.recurse(depth + 1, remaining * (1.0 - v), deltas);
            deltas.pop();
            inner
        })
    }
}

fn mixed_correlation_impl(
    g: &FiniteGroup,
    z: &[Scalar],
    points: &[Vec<f64>],
    tol: f64,
    rho: &dyn RhoFactors,
) -> Result<MixedValue> {
    if points.len() != g.k() || z.len() != g.k() {
        return Err(WhittakerError::DomainError(format!(
            "need {} colors of parameters and points",
            g.k()
        )));
    }
    for pts in points {
        if pts.iter().any(|&x| x == 0.0 || !x.is_finite()) {
            return Err(WhittakerError::DomainError(
                "points must be finite and nonzero".into(),
            ));
        }
    }
    let tau = tau_params(g, z)?;
    // one color: the simplex collapses to δ = 1, the prefactor cancels, and
    // no integrability constraint arises
    if g.k() == 1 {
        let value = rho.eval(0, &points[0])?;
        return Ok(MixedValue {
            value,
            est_error: 0.0,
            nodes_per_dim: 0,
        });
    }
    for (l, &t) in tau.iter().enumerate() {
        if t - points[l].len() as f64 <= 0.0 {
            return Err(WhittakerError::ParameterOutOfRegime(format!(
                "color {}: a_l ā_l = {t} must exceed the point count {}",
                l + 1,
                points[l].len()
            )));
        }
    }
    let total: f64 = tau.iter().sum();
    let mut prefactor = gamma_real(total);
    for &t in &tau {
        prefactor /= gamma_real(t);
    }

    let mut nodes = 16usize;
    let integrator = SimplexIntegrator::new(&tau, points, rho, nodes)?;
    let mut prev = integrator.recurse(0, 1.0, &mut Vec::new())?;
    while nodes <= 256 {
        nodes *= 2;
        let integrator = SimplexIntegrator::new(&tau, points, rho, nodes)?;
        let cur = integrator.recurse(0, 1.0, &mut Vec::new())?;
        let est_error = (cur - prev).abs() * prefactor;
        if est_error <= tol * (cur.abs() * prefactor).max(1e-300) || est_error <= tol * tol {
            return Ok(MixedValue {
                value: prefactor * cur,
                est_error,
                nodes_per_dim: nodes,
            });
        }
        prev = cur;
    }
    Err(WhittakerError::QuadratureFailure {
        tol,
        estimate: (prev * prefactor).abs() * tol * 10.0,
    })
}

/// Mixed correlation function at colored points `points[l]` (one list per
/// color), to relative tolerance `tol`.
pub fn mixed_correlation(
    g: &FiniteGroup,
    z: &[Scalar],
    points: &[Vec<f64>],
    tol: f64,
) -> Result<MixedValue> {
    let kernels = z
        .iter()
        .map(|zl| WhittakerKernel::new(zl.to_c64()))
        .collect::<Result<Vec<_>>>()?;
    mixed_correlation_impl(g, z, points, tol, &WhittakerFactors { kernels })
}

/// Same integral with every correlation factor replaced by one; reproduces
/// [`dirichlet_moment`] and pins the quadrature layer.
pub fn mixed_correlation_unit_hook(
    g: &FiniteGroup,
    z: &[Scalar],
    counts: &[usize],
    tol: f64,
) -> Result<MixedValue> {
    let points: Vec<Vec<f64>> = counts.iter().map(|&n| vec![1.0; n]).collect();
    // placeholder coordinates; the unit hook ignores them
    mixed_correlation_impl(g, z, &points, tol, &UnitFactors)
}

/// Plain single-color correlation, for the collapse check.
pub fn whittaker_correlation(z: Complex64, points: &[f64]) -> Result<f64> {
    WhittakerKernel::new(z)?.correlation(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use bigwreath_core::group::bundled;

    #[test]
    fn unit_hook_reproduces_dirichlet_moment_k2() {
        let g = bundled::z2();
        // z = (2, 1): a = (3/2, 1/2), tau = (9/4, 1/4)
        let z = [Scalar::from_int(2), Scalar::from_int(1)];
        let got = mixed_correlation_unit_hook(&g, &z, &[1, 0], 1e-9).unwrap();
        let expect = dirichlet_moment(&[2.25, 0.25], &[1, 0]);
        assert_relative_eq!(got.value, expect, max_relative = 1e-8);
    }

    #[test]
    fn unit_hook_reproduces_dirichlet_moment_k3() {
        let g = bundled::s3();
        // real z giving all tau - n in a comfortable range
        let z = [
            Scalar::from_f64(1.2),
            Scalar::from_f64(0.8),
            Scalar::from_f64(1.9),
        ];
        let tau = tau_params(&g, &z).unwrap();
        for counts in [[0usize, 0, 0], [1, 0, 0], [0, 1, 0]] {
            if tau
                .iter()
                .zip(counts.iter())
                .any(|(&t, &n)| t - n as f64 <= 0.0)
            {
                continue;
            }
            let got = mixed_correlation_unit_hook(&g, &z, &counts, 1e-9).unwrap();
            let expect = dirichlet_moment(&tau, &counts);
            assert_relative_eq!(got.value, expect, max_relative = 1e-8);
        }
    }

    #[test]
    fn single_color_collapses_to_plain_correlation() {
        let g = bundled::trivial();
        let z = [Scalar::from_f64(1.4)];
        let points = vec![vec![0.5f64, 1.25]];
        let mixed = mixed_correlation(&g, &z, &points, 1e-8).unwrap();
        let plain = whittaker_correlation(Complex64::new(1.4, 0.0), &points[0]).unwrap();
        assert!((mixed.value - plain).abs() <= 1e-10 * plain.abs().max(1.0));
    }

    #[test]
    fn rejects_out_of_regime_parameters() {
        let g = bundled::z2();
        // z = (1, 1): a = (1, 0) -> tau_2 = 0, so even zero points on color 2
        // leave the exponent non-integrable
        let z = [Scalar::from_int(1), Scalar::from_int(1)];
        let err = mixed_correlation(&g, &z, &[vec![0.5], vec![]], 1e-6).unwrap_err();
        assert!(matches!(err, WhittakerError::ParameterOutOfRegime(_)));
    }

    #[test]
    fn two_color_mixed_value_is_stable_under_tolerance_refinement() {
        let g = bundled::z2();
        let z = [Scalar::from_int(2), Scalar::gauss(0, 1, 1, 1)]; // a = (1+i/2)... nonzero taus
        let points = vec![vec![0.6f64], vec![]];
        let coarse = mixed_correlation(&g, &z, &points, 1e-4).unwrap();
        let fine = mixed_correlation(&g, &z, &points, 1e-8).unwrap();
        assert_relative_eq!(coarse.value, fine.value, max_relative = 1e-4);
        assert!(fine.est_error <= 1e-8 * fine.value.abs().max(1e-300) * 10.0);
        assert!(fine.value.is_finite());
    }
}
