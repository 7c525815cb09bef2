//! Complex log-gamma by the Lanczos approximation (g = 7, 9 coefficients,
//! the GSL coefficient set), with reflection for Re z < 1/2.

use num_complex::Complex64;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Principal-branch `ln Γ(z)` up to an integer multiple of `2πi` in the
/// reflected half-plane; the real part is always exact, which is all the
/// kernel prefactors consume.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: ln Γ(z) = ln π - ln sin(πz) - ln Γ(1 - z)
        let pi = std::f64::consts::PI;
        return Complex64::new(pi.ln(), 0.0)
            - (pi * z).sin().ln()
            - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let zm = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        x += c / (zm + i as f64);
    }
    let t = zm + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (zm + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// `|Γ(z)|`.
pub fn gamma_abs(z: Complex64) -> f64 {
    ln_gamma(z).re.exp()
}

/// `Γ(x)` for real positive `x`.
pub fn gamma_real(x: f64) -> f64 {
    assert!(x > 0.0, "gamma_real needs x > 0, got {x}");
    ln_gamma(Complex64::new(x, 0.0)).re.exp()
}
