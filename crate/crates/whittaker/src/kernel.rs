//! The determinantal kernel of the lifted spectral process and its
//! correlation determinants.
//!
//! With `z = a + ib`, `t = z z̄`, and
//! `P_±(u) = u^{-1/2}/|Γ(1±z)| · W_{±a+1/2, ib}(u)`,
//! `Q_±(u) = t u^{-1/2}/|Γ(1±z)| · W_{±a-1/2, ib}(u)`,
//! the kernel on the punctured real line is
//!
//! ```text
//! K(x,y) =  [P₊(x)Q₊(y) - Q₊(x)P₊(y)] / (x-y)        x>0, y>0
//!           [P₊(x)P₋(-y) + Q₊(x)Q₋(-y)] / (x-y)      x>0, y<0
//!           [P₋(-x)P₊(y) + Q₋(-x)Q₊(y)] / (x-y)      x<0, y>0
//!          -[P₋(-x)Q₋(-y) - Q₋(-x)P₋(-y)] / (x-y)    x<0, y<0
//! ```
//!
//! symmetric within each half-line and antisymmetric across them (the
//! integrable J-symmetric form). Values on the diagonal are the limits
//! `Q(u)P'(u) - P(u)Q'(u)`.
//!
//! This kernel circulates in several normalization conventions; the one here
//! is pinned by exact degenerations of the process it describes: at z = 1 the
//! process is a single Exp(1) particle, so the kernel must be `e^{-(x+y)/2}`
//! on the positive axis (fixing the `u^{-1/2}` prefactor on `P_±` and the
//! mirrored antisymmetric mixed quadrants); at z = 2 it is a two-particle
//! ensemble with kernel `e^{-(x+y)/2}(xy-x-y+2)`; and for every z the first
//! lifted moment forces `∫|x| K(x,x) dx = z z̄`, which pins the overall
//! scale.

use num_complex::Complex64;

use crate::error::{Result, WhittakerError};
use crate::gamma::gamma_abs;
use crate::wfun::{whittaker_w, whittaker_w_prime};

/// Maximum number of points accepted by the correlation determinant.
pub const MAX_CORRELATION_POINTS: usize = 8;

#[derive(Debug, Clone)]
pub struct WhittakerKernel {
    pub z: Complex64,
    /// `1 / |Γ(1+z)|` and `1 / |Γ(1-z)|`.
    c_plus: f64,
    c_minus: f64,
}

#[derive(Debug, Clone, Copy)]
struct PointData {
    p: f64,
    q: f64,
}

impl WhittakerKernel {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.norm() == 0.0 {
            return Err(WhittakerError::DomainError("z must be nonzero".into()));
        }
        // 1/Γ vanishes identically at the poles (integer real z); the float
        // reflection formula only reaches ~1e-16 there, so pin it exactly
        let at_pole = |w: Complex64| w.im == 0.0 && w.re <= 0.0 && w.re.fract() == 0.0;
        let recip_gamma_abs = |w: Complex64| {
            if at_pole(w) {
                0.0
            } else {
                1.0 / gamma_abs(w)
            }
        };
        let c_plus = recip_gamma_abs(Complex64::new(1.0, 0.0) + z);
        let c_minus = recip_gamma_abs(Complex64::new(1.0, 0.0) - z);
        Ok(WhittakerKernel { z, c_plus, c_minus })
    }

    fn side_coef(&self, positive: bool) -> (f64, f64) {
        // (coefficient, kappa shift sign)
        if positive {
            (self.c_plus, 1.0)
        } else {
            (self.c_minus, -1.0)
        }
    }

    /// `P` and `Q` on the side of `x`, evaluated at `u = |x|`.
    fn point_data(&self, x: f64) -> Result<PointData> {
        if x == 0.0 || !x.is_finite() {
            return Err(WhittakerError::DomainError(format!(
                "kernel argument must be finite and nonzero, got {x}"
            )));
        }
        let u = x.abs();
        let (c, sgn) = self.side_coef(x > 0.0);
        if c == 0.0 {
            // degenerate series: the whole side vanishes
            return Ok(PointData { p: 0.0, q: 0.0 });
        }
        let mu = Complex64::new(0.0, self.z.im);
        let wp = whittaker_w(sgn * self.z.re + 0.5, mu, u)?;
        let wq = whittaker_w(sgn * self.z.re - 0.5, mu, u)?;
        debug_assert!(wp.im.abs() <= 1e-7 * wp.re.abs().max(1e-280));
        let t = self.z.norm_sqr();
        Ok(PointData {
            p: c * wp.re / u.sqrt(),
            q: c * t * wq.re / u.sqrt(),
        })
    }

    /// Diagonal value `K(x,x) = Q(u)P'(u) - P(u)Q'(u)`.
    fn diagonal(&self, x: f64) -> Result<f64> {
        let u = x.abs();
        let (c, sgn) = self.side_coef(x > 0.0);
        if c == 0.0 {
            return Ok(0.0);
        }
        let mu = Complex64::new(0.0, self.z.im);
        let t = self.z.norm_sqr();
        let wp = whittaker_w(sgn * self.z.re + 0.5, mu, u)?.re;
        let wq = whittaker_w(sgn * self.z.re - 0.5, mu, u)?.re;
        let wp_d = whittaker_w_prime(sgn * self.z.re + 0.5, mu, u)?.re;
        let wq_d = whittaker_w_prime(sgn * self.z.re - 0.5, mu, u)?.re;
        let p = c * wp / u.sqrt();
        let q = c * t * wq / u.sqrt();
        let p_d = c * (wp_d / u.sqrt() - 0.5 * wp / (u * u.sqrt()));
        let q_d = c * t * (wq_d / u.sqrt() - 0.5 * wq / (u * u.sqrt()));
        Ok(q * p_d - p * q_d)
    }

    fn eval_points(&self, x: f64, dx: &PointData, y: f64, dy: &PointData) -> f64 {
        let numerator = match (x > 0.0, y > 0.0) {
            (true, true) => dx.p * dy.q - dx.q * dy.p,
            (true, false) => dx.p * dy.p + dx.q * dy.q,
            (false, true) => dx.p * dy.p + dx.q * dy.q,
            (false, false) => -(dx.p * dy.q - dx.q * dy.p),
        };
        numerator / (x - y)
    }

    /// Kernel value with the diagonal resolved by the symmetric limit.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if x == y {
            return self.diagonal(x);
        }
        let dx = self.point_data(x)?;
        let dy = self.point_data(y)?;
        Ok(self.eval_points(x, &dx, y, &dy))
    }

    /// First correlation function `ρ₁(x) = K(x,x)`.
    pub fn rho1(&self, x: f64) -> Result<f64> {
        if x == 0.0 || !x.is_finite() {
            return Err(WhittakerError::DomainError(format!("point {x}")));
        }
        self.diagonal(x)
    }

    /// `ρ_n(x_1..x_n) = det[K(x_i, x_j)]`.
    pub fn correlation(&self, points: &[f64]) -> Result<f64> {
        if points.is_empty() {
            return Ok(1.0);
        }
        if points.len() > MAX_CORRELATION_POINTS {
            return Err(WhittakerError::DomainError(format!(
                "at most {MAX_CORRELATION_POINTS} points, got {}",
                points.len()
            )));
        }
        for (i, &x) in points.iter().enumerate() {
            for &y in &points[..i] {
                if x == y {
                    return Err(WhittakerError::DuplicatePoint(x));
                }
            }
        }
        let data: Vec<PointData> = points
            .iter()
            .map(|&x| self.point_data(x))
            .collect::<Result<_>>()?;
        let n = points.len();
        let mut matrix = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..n {
                matrix[i * n + j] = if i == j {
                    self.diagonal(points[i])?
                } else {
                    self.eval_points(points[i], &data[i], points[j], &data[j])
                };
            }
        }
        Ok(det_in_place(&mut matrix, n))
    }
}

/// Determinant by LU with partial pivoting; `n` is small here.
fn det_in_place(m: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0f64;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a * n + col].abs().total_cmp(&m[b * n + col].abs()))
            .unwrap();
        if m[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for row in col + 1..n {
            let f = m[row * n + col] / d;
            for j in col..n {
                m[row * n + j] -= f * m[col * n + j];
            }
        }
    }
    det
}
