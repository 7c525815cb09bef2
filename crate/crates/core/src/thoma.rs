//! The generalized Thoma set and the kernel expressing harmonic functions on
//! the branching graph through extended Schur functions.
//!
//! A point carries, per color, truncated weakly decreasing nonnegative
//! sequences `α`, `β` and a scalar `δ`, subject to `Σ_i (α_i + β_i) ≤ δ` per
//! color and `Σ_l δ^{(l)} = 1`. The kernel evaluates Schur functions in the
//! extended power sums `p_1 -> δ`, `p_r -> Σ α_i^r + (-1)^{r-1} Σ β_i^r`.

use crate::characters::{sym_group_character, z_rho};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::multipartition::{partitions_of, MultiPartition, YoungDiagram};
use crate::scalar::{Scalar, FLOAT_TOL};

/// One color of a Thoma point.
#[derive(Debug, Clone)]
pub struct ThomaColor {
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub delta: Scalar,
}

/// A finitely supported point of the generalized Thoma set `Ω(G)`.
#[derive(Debug, Clone)]
pub struct ColoredThomaPoint {
    pub colors: Vec<ThomaColor>,
}

fn check_sorted_nonneg(xs: &[Scalar], what: &str) -> Result<()> {
    for x in xs {
        let re = x.re_f64();
        let imag_ok = match x {
            Scalar::Exact(g) => g.is_real(),
            Scalar::Float(z) => z.im.abs() <= FLOAT_TOL,
        };
        if !imag_ok || re < 0.0 {
            return Err(Error::NonPositiveParameter(format!(
                "{what} entries must be nonnegative reals, got {x}"
            )));
        }
    }
    for w in xs.windows(2) {
        if w[0].re_f64() < w[1].re_f64() - FLOAT_TOL {
            return Err(Error::Parse(format!("{what} not weakly decreasing")));
        }
    }
    Ok(())
}

impl ColoredThomaPoint {
    pub fn k(&self) -> usize {
        self.colors.len()
    }

    /// Defining inequalities of `Ω(G)`.
    pub fn validate(&self) -> Result<()> {
        let mut delta_total = Scalar::zero();
        for (l, color) in self.colors.iter().enumerate() {
            check_sorted_nonneg(&color.alpha, &format!("alpha^{}", l + 1))?;
            check_sorted_nonneg(&color.beta, &format!("beta^{}", l + 1))?;
            if color.delta.re_f64() < 0.0 {
                return Err(Error::NonPositiveParameter(format!(
                    "delta^{} = {}",
                    l + 1,
                    color.delta
                )));
            }
            let mass = self.color_mass(l);
            let excess = &mass - &color.delta;
            if excess.re_f64() > FLOAT_TOL {
                return Err(Error::Parse(format!(
                    "color {}: alpha/beta mass {} exceeds delta {}",
                    l + 1,
                    mass,
                    color.delta
                )));
            }
            delta_total = &delta_total + &color.delta;
        }
        if !delta_total.approx_eq(&Scalar::one(), FLOAT_TOL) {
            return Err(Error::Parse(format!(
                "deltas must sum to 1, got {delta_total}"
            )));
        }
        Ok(())
    }

    fn color_mass(&self, l: usize) -> Scalar {
        let c = &self.colors[l];
        c.alpha
            .iter()
            .chain(c.beta.iter())
            .fold(Scalar::zero(), |acc, v| &acc + v)
    }

    /// Membership in the degenerate series `Ω_0(G)`: the alpha/beta mass
    /// saturates `δ` in every color.
    pub fn is_degenerate_series(&self) -> bool {
        (0..self.k()).all(|l| {
            let diff = &self.color_mass(l) - &self.colors[l].delta;
            diff.is_zero_tol(FLOAT_TOL)
        })
    }

    /// Extended power sum `P^o_{r,l}`.
    pub fn power_sum(&self, r: u64, l: usize) -> Scalar {
        let color = &self.colors[l];
        if r == 1 {
            return color.delta.clone();
        }
        let alpha_sum = color
            .alpha
            .iter()
            .fold(Scalar::zero(), |acc, v| &acc + &v.pow_i(r as i64));
        let beta_sum = color
            .beta
            .iter()
            .fold(Scalar::zero(), |acc, v| &acc + &v.pow_i(r as i64));
        if r % 2 == 1 {
            &alpha_sum + &beta_sum
        } else {
            &alpha_sum - &beta_sum
        }
    }

    /// Extended Schur function `S^o_λ` in color `l`, via the power-sum
    /// expansion `s_λ = Σ_ρ z_ρ^{-1} χ^λ_ρ p_ρ`.
    pub fn extended_schur(&self, lambda: &YoungDiagram, l: usize) -> Result<Scalar> {
        let n = lambda.size();
        if n == 0 {
            return Ok(Scalar::one());
        }
        let mut acc = Scalar::zero();
        for rho in partitions_of(n) {
            let chi = sym_group_character(lambda, &rho)?;
            if chi == 0 {
                continue;
            }
            let mut term = &Scalar::from_int(chi) / &Scalar::from_biguint(&z_rho(&rho));
            for &r in rho.parts() {
                term = &term * &self.power_sum(r, l);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// The kernel `𝕂(Λ, ω) = Π_l d_l^{-|λ^{(l)}|} S^o_{λ^{(l)}}(ω)`.
pub fn thoma_kernel(
    mp: &MultiPartition,
    omega: &ColoredThomaPoint,
    g: &FiniteGroup,
) -> Result<Scalar> {
    if mp.k() != g.k() || omega.k() != g.k() {
        return Err(Error::SizeMismatch(format!(
            "kernel needs {} colors, got partition with {} and point with {}",
            g.k(),
            mp.k(),
            omega.k()
        )));
    }
    let mut acc = Scalar::one();
    for l in 0..g.k() {
        let comp = mp.component(l);
        let d = Scalar::from_int(g.dims[l] as i64);
        let s = omega.extended_schur(comp, l)?;
        acc = &acc * &(&s / &d.pow_i(comp.size() as i64));
    }
    Ok(acc)
}
