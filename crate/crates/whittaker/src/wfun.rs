//! The Whittaker function `W_{κ,μ}(x)` for real `κ`, complex `μ`, `x > 0`.
//!
//! Route: `W_{κ,μ}(x) = e^{-x/2} x^{μ+1/2} U(μ-κ+1/2, 1+2μ, x)` with the
//! confluent hypergeometric `U` computed from its Laplace-type integral
//! `U(a,b,x) = Γ(a)^{-1} ∫_0^∞ e^{-xt} t^{a-1} (1+t)^{b-a-1} dt` (valid for
//! `Re a > 0`). The substitution `t = e^s` turns the integrand into an
//! analytic function with double-exponential decay on the right and
//! exponential decay on the left, where the trapezoid rule converges
//! geometrically; step halving continues until two refinements agree. For
//! `Re a < 1` the parameter is first shifted up by an integer and then the
//! three-term recurrence
//! `U(a-1,b,x) = (2a-b+x) U(a,b,x) - a(a-b+1) U(a+1,b,x)`
//! walks back down (stable in that direction, since `U` is the solution that
//! decays as `a` grows).
//!
//! Derivatives come from `W'_{κ,μ}(x) = (κ/x - 1/2) W_{κ,μ}(x)
//! - (μ² - (κ-1/2)²)/x · W_{κ-1,μ}(x)`.

use num_complex::Complex64;

use crate::error::{Result, WhittakerError};
use crate::gamma::ln_gamma;

/// Relative agreement required between consecutive trapezoid refinements.
const QUAD_TOL: f64 = 1e-12;

/// Trapezoid sum of the transformed integrand at step `h`.
/// Trapezoid sum together with the sum of integrand magnitudes, whose product
/// with machine epsilon is the rounding floor of the (possibly heavily
/// cancelling) oscillatory sum.
fn laplace_trapezoid(a: Complex64, b: Complex64, x: f64, h: f64) -> (Complex64, f64) {
    // s-range: left tail decays like e^{Re(a) s} with Re(a) in [1, 2);
    // right tail dies double-exponentially once x e^s passes ~745.
    let s_min = -42.0f64;
    let s_max = (745.0f64 / x).ln().max(1.0) + 2.0;
    let steps = ((s_max - s_min) / h).ceil() as usize;
    let bma1 = b - a - 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs_acc = 0.0f64;
    for j in 0..=steps {
        let s = s_min + j as f64 * h;
        let es = s.exp();
        // ln(1+e^s), stable for large s
        let ln1p = if s > 30.0 {
            s + (-s).exp().ln_1p()
        } else {
            es.ln_1p()
        };
        let exponent = a * s + bma1 * ln1p - x * es;
        if exponent.re < -745.0 {
            continue;
        }
        let term = exponent.exp();
        acc += term;
        abs_acc += term.norm();
    }
    (acc * h, abs_acc * h)
}

/// `U(a, b, x)` for `Re a >= 1` by the integral representation. Refinement
/// stops when two step sizes agree to `QUAD_TOL` relative, or agree down to
/// the rounding floor left by oscillatory cancellation (strongly imaginary
/// parameters can cancel away several digits of the integrand mass).
fn u_integral(a: Complex64, b: Complex64, x: f64) -> Result<Complex64> {
    let mut h = 0.5f64;
    let (mut prev, _) = laplace_trapezoid(a, b, x, h);
    for _ in 0..8 {
        h /= 2.0;
        let (cur, abs_mass) = laplace_trapezoid(a, b, x, h);
        let noise_floor = 64.0 * f64::EPSILON * abs_mass;
        let scale = cur.norm().max(f64::MIN_POSITIVE);
        if (cur - prev).norm() <= (QUAD_TOL * scale).max(noise_floor) {
            return Ok(cur * (-ln_gamma(a)).exp());
        }
        prev = cur;
    }
    Err(WhittakerError::ConvergenceFailure(format!(
        "U integral did not stabilize at a={a}, b={b}, x={x}"
    )))
}

/// `U(a, b, x)` for arbitrary complex `a` (shift up, integrate, recurse down).
pub fn hyper_u(a: Complex64, b: Complex64, x: f64) -> Result<Complex64> {
    if x <= 0.0 {
        return Err(WhittakerError::DomainError(format!(
            "U requires x > 0, got {x}"
        )));
    }
    let shift = (1.0 - a.re).ceil().max(0.0) as usize;
    let a0 = a + shift as f64;
    let mut cur = u_integral(a0, b, x)?;
    if shift == 0 {
        return Ok(cur);
    }
    let mut prev = u_integral(a0 + 1.0, b, x)?;
    let mut ac = a0;
    for _ in 0..shift {
        let next = (2.0 * ac - b + x) * cur - ac * (ac - b + 1.0) * prev;
        prev = cur;
        cur = next;
        ac -= 1.0;
    }
    Ok(cur)
}

/// `W_{κ,μ}(x)`, complex-valued for complex `μ`.
pub fn whittaker_w(kappa: f64, mu: Complex64, x: f64) -> Result<Complex64> {
    if x <= 0.0 {
        return Err(WhittakerError::DomainError(format!(
            "W requires x > 0, got {x}"
        )));
    }
    let a = mu - kappa + 0.5;
    let b = 2.0 * mu + 1.0;
    let u = hyper_u(a, b, x)?;
    let prefactor = ((mu + 0.5) * x.ln() - x / 2.0).exp();
    Ok(prefactor * u)
}

/// `d/dx W_{κ,μ}(x)` through the contiguous recurrence.
pub fn whittaker_w_prime(kappa: f64, mu: Complex64, x: f64) -> Result<Complex64> {
    let w = whittaker_w(kappa, mu, x)?;
    let w_down = whittaker_w(kappa - 1.0, mu, x)?;
    let coeff = mu * mu - (kappa - 0.5) * (kappa - 0.5);
    Ok((kappa / x - 0.5) * w - coeff / x * w_down)
}
