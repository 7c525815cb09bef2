//! Gauss–Jacobi quadrature with endpoint-singular weights, by Golub–Welsch:
//! the nodes are the eigenvalues of the symmetric tridiagonal recurrence
//! matrix of the Jacobi polynomials, the weights come from the first
//! eigenvector components scaled by the weight-function mass.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Result, WhittakerError};
use crate::gamma::gamma_real;

/// Quadrature rule for `∫_{-1}^{1} (1-u)^α (1+u)^β f(u) du`.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussJacobi {
    pub fn new(degree: usize, alpha: f64, beta: f64) -> Result<Self> {
        if degree < 2 {
            return Err(WhittakerError::DomainError(format!(
                "quadrature degree {degree} too small"
            )));
        }
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(WhittakerError::ParameterOutOfRegime(format!(
                "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
            )));
        }
        let n = degree;
        let mut m = DMatrix::<f64>::zeros(n, n);
        let ab = alpha + beta;
        for i in 0..n {
            let k = i as f64;
            let diag = if i == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
            };
            m[(i, i)] = diag;
            if i > 0 {
                let off_sq = if i == 1 {
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0))
                } else {
                    4.0 * k * (k + alpha) * (k + beta) * (k + ab)
                        / ((2.0 * k + ab).powi(2) * ((2.0 * k + ab).powi(2) - 1.0))
                };
                let off = off_sq.sqrt();
                m[(i, i - 1)] = off;
                m[(i - 1, i)] = off;
            }
        }
        let mu0 = 2f64.powf(ab + 1.0) * gamma_real(alpha + 1.0) * gamma_real(beta + 1.0)
            / gamma_real(ab + 2.0);
        let eigen = SymmetricEigen::new(m);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let node = eigen.eigenvalues[i];
                let first = eigen.eigenvectors[(0, i)];
                (node, mu0 * first * first)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(GaussJacobi {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
            alpha,
            beta,
        })
    }

    /// `∫_{-1}^{1} (1-u)^α (1+u)^β f(u) du`.
    pub fn integrate<F: FnMut(f64) -> Result<f64>>(&self, mut f: F) -> Result<f64> {
        let mut acc = 0.0;
        for (&u, &w) in self.nodes.iter().zip(self.weights.iter()) {
            acc += w * f(u)?;
        }
        Ok(acc)
    }

    /// `∫_0^1 v^{pow_v} (1-v)^{pow_1mv} f(v) dv` through the affine map
    /// `v = (1+u)/2` (so `pow_v` pairs with β and `pow_1mv` with α).
    pub fn integrate_unit<F: FnMut(f64) -> Result<f64>>(&self, mut f: F) -> Result<f64> {
        let scale = 2f64.powf(-(self.alpha + self.beta + 1.0));
        let v = self.integrate(|u| f((1.0 + u) / 2.0))?;
        Ok(scale * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn beta_fn(a: f64, b: f64) -> f64 {
        gamma_real(a) * gamma_real(b) / gamma_real(a + b)
    }

    #[test]
    fn integrates_weight_mass() {
        for &(alpha, beta) in &[(0.0, 0.0), (-0.5, 0.25), (1.5, -0.7)] {
            let rule = GaussJacobi::new(12, alpha, beta).unwrap();
            let total: f64 = rule.weights.iter().sum();
            let expect = 2f64.powf(alpha + beta + 1.0) * beta_fn(alpha + 1.0, beta + 1.0);
            assert_relative_eq!(total, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn beta_moments_on_unit_interval() {
        // ∫_0^1 v^{p}(1-v)^{q} v^3 dv = B(p+4, q+1)
        let (p, q) = (-0.4f64, 2.3f64);
        let rule = GaussJacobi::new(16, q, p).unwrap();
        let got = rule.integrate_unit(|v| Ok(v.powi(3))).unwrap();
        assert_relative_eq!(got, beta_fn(p + 4.0, q + 1.0), max_relative = 1e-12);
    }

    #[test]
    fn handles_endpoint_singular_smooth_factor() {
        // ∫_0^1 v^{-1/2} cos(v) dv, converges fast despite the singularity
        let rule = GaussJacobi::new(20, 0.0, -0.5).unwrap();
        let got = rule.integrate_unit(|v| Ok(v.cos())).unwrap();
        // reference: 2 ∫_0^1 cos(w²) dw = √(2π) C(√(2/π)) (Fresnel), fixed value
        assert_relative_eq!(got, 1.8090484758005438, max_relative = 1e-10);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(GaussJacobi::new(8, -1.0, 0.0).is_err());
        assert!(GaussJacobi::new(1, 0.0, 0.0).is_err());
    }
}
