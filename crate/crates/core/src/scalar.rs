//! Numeric backend: complex scalars that are either exact Gaussian rationals
//! (pairs of `BigRational`s) or double-precision complex numbers.
//!
//! Arithmetic between mixed backends promotes to float. Exact values compare
//! for equality decidably; float comparisons carry an explicit tolerance.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Default relative comparison tolerance for the float backend.
pub const FLOAT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Float => write!(f, "float"),
        }
    }
}

/// A Gaussian rational `re + im·i` with arbitrary-precision components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|^2` as a rational.
    pub fn norm_sqr_rat(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussRat::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr_rat();
        assert!(!n.is_zero(), "division by exact zero");
        GaussRat::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back through a high-precision quotient for huge numerators
        let (n, d) = (r.numer(), r.denom());
        let scale = BigInt::from(1u64 << 60);
        let q = (n * &scale) / d;
        q.to_f64().unwrap_or(f64::NAN) / (1u64 << 60) as f64
    })
}

/// A complex scalar in the active numeric backend.
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(GaussRat),
    Float(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(GaussRat::from_int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Exact(GaussRat::new(Rat::from_integer(n), Rat::zero()))
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        Scalar::from_bigint(BigInt::from(n.clone()))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Exact(GaussRat::new(r, Rat::zero()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::from_rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn gauss(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Scalar::Exact(GaussRat::new(
            Rat::new(BigInt::from(re_num), BigInt::from(re_den)),
            Rat::new(BigInt::from(im_num), BigInt::from(im_den)),
        ))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(Complex64::new(x, 0.0))
    }

    pub fn from_c64(z: Complex64) -> Self {
        Scalar::Float(z)
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(g) => g.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn re_f64(&self) -> f64 {
        self.to_c64().re
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(g) => Scalar::Exact(g.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    /// `z * conj(z)`; real and nonnegative in either backend.
    pub fn norm_sqr(&self) -> Self {
        match self {
            Scalar::Exact(g) => Scalar::from_rat(g.norm_sqr_rat()),
            Scalar::Float(z) => Scalar::from_f64(z.norm_sqr()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.norm() == 0.0,
        }
    }

    /// True when the value vanishes exactly (exact backend) or within `tol`.
    pub fn is_zero_tol(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.norm() <= tol,
        }
    }

    /// Equality: exact when both sides are exact, otherwise relative within `tol`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => {
                let (a, b) = (self.to_c64(), other.to_c64());
                let scale = a.norm().max(b.norm()).max(1.0);
                (a - b).norm() <= tol * scale
            }
        }
    }

    /// The exact rational value, when this scalar is an exact real.
    pub fn as_real_rat(&self) -> Option<Rat> {
        match self {
            Scalar::Exact(g) if g.is_real() => Some(g.re.clone()),
            _ => None,
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Scalar::Exact(g) => Scalar::Exact(g.recip()),
            Scalar::Float(z) => Scalar::Float(z.inv()),
        }
    }

    /// Integer power, negative exponents through the reciprocal.
    pub fn pow_i(&self, e: i64) -> Self {
        if e < 0 {
            return self.recip().pow_i(-e);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn promote_pair(a: &Scalar, b: &Scalar) -> Option<(Complex64, Complex64)> {
        match (a, b) {
            (Scalar::Exact(_), Scalar::Exact(_)) => None,
            _ => Some((a.to_c64(), b.to_c64())),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (a, b) => a.to_c64() == b.to_c64(),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $exact:expr, $float:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                if let Some((a, b)) = Scalar::promote_pair(self, rhs) {
                    #[allow(clippy::redundant_closure_call)]
                    return Scalar::Float(($float)(a, b));
                }
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) =>
                    {
                        #[allow(clippy::redundant_closure_call)]
                        Scalar::Exact(($exact)(a, b))
                    }
                    _ => unreachable!(),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

scalar_binop!(
    Add,
    add,
    |a: &GaussRat, b: &GaussRat| GaussRat::new(&a.re + &b.re, &a.im + &b.im),
    |a: Complex64, b: Complex64| a + b
);
scalar_binop!(
    Sub,
    sub,
    |a: &GaussRat, b: &GaussRat| GaussRat::new(&a.re - &b.re, &a.im - &b.im),
    |a: Complex64, b: Complex64| a - b
);
scalar_binop!(
    Mul,
    mul,
    |a: &GaussRat, b: &GaussRat| a.mul(b),
    |a: Complex64, b: Complex64| a * b
);
scalar_binop!(
    Div,
    div,
    |a: &GaussRat, b: &GaussRat| a.mul(&b.recip()),
    |a: Complex64, b: Complex64| a / b
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(g) => Scalar::Exact(GaussRat::new(-g.re.clone(), -g.im.clone())),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => {
                if g.im.is_zero() {
                    write!(f, "{}", fmt_rat(&g.re))
                } else if g.re.is_zero() {
                    write!(f, "{}i", fmt_rat(&g.im))
                } else if g.im.is_negative() {
                    write!(f, "{}-{}i", fmt_rat(&g.re), fmt_rat(&-g.im.clone()))
                } else {
                    write!(f, "{}+{}i", fmt_rat(&g.re), fmt_rat(&g.im))
                }
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else if z.im < 0.0 {
                    write!(f, "{}-{}i", z.re, -z.im)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
        }
    }
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..n {
        acc = &acc * &(a + &Scalar::from_int(i as i64));
    }
    acc
}

pub fn rat_pochhammer(a: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..n {
        acc *= a + Rat::from_integer(BigInt::from(i));
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parse one real component: integer, `p/q` rational (exact), or a decimal
/// / scientific literal (float).
fn parse_real_component(s: &str) -> Result<Scalar> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty numeric component".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Scalar::from_rat(Rat::new(n, d)));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Scalar::from_bigint(n));
    }
    s.parse::<f64>()
        .map(Scalar::from_f64)
        .map_err(|_| Error::Parse(format!("cannot parse number {s:?}")))
}

/// Split a complex literal into real and imaginary term strings at the last
/// top-level `+`/`-`, skipping signs that belong to an exponent (`1e-3`).
fn split_complex_terms(s: &str) -> (Option<String>, Option<String>) {
    let bytes = s.as_bytes();
    let mut split_at = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E' | '/' | '+' | '-') {
            split_at = Some(i);
            break;
        }
    }
    match split_at {
        Some(i) => (Some(s[..i].to_string()), Some(s[i..].to_string())),
        None => (Some(s.to_string()), None),
    }
}

/// Parse a `zeta(m)^j` root-of-unity literal. Lands in the exact backend only
/// when the value is a Gaussian rational (m dividing 4); otherwise float.
fn parse_zeta(s: &str) -> Result<Scalar> {
    let rest = s
        .strip_prefix("zeta(")
        .ok_or_else(|| Error::Parse(format!("bad zeta literal {s:?}")))?;
    let (m_str, tail) = rest
        .split_once(')')
        .ok_or_else(|| Error::Parse(format!("bad zeta literal {s:?}")))?;
    let m: u64 = m_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad zeta order in {s:?}")))?;
    if m == 0 {
        return Err(Error::Parse("zeta order must be positive".into()));
    }
    let j: i64 = if tail.is_empty() {
        1
    } else {
        tail.strip_prefix('^')
            .ok_or_else(|| Error::Parse(format!("bad zeta exponent in {s:?}")))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad zeta exponent in {s:?}")))?
    };
    let j = j.rem_euclid(m as i64) as u64;
    match m {
        1 => Ok(Scalar::from_int(1)),
        2 => Ok(Scalar::from_int(if j == 0 { 1 } else { -1 })),
        4 => Ok(match j {
            0 => Scalar::from_int(1),
            1 => Scalar::gauss(0, 1, 1, 1),
            2 => Scalar::from_int(-1),
            _ => Scalar::gauss(0, 1, -1, 1),
        }),
        _ => {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (m as f64);
            Ok(Scalar::Float(Complex64::new(theta.cos(), theta.sin())))
        }
    }
}

/// Parse a scalar literal.
///
/// Accepted forms: `5`, `-3/2`, `0.25`, `1e-3`, `i`, `-i`, `2i`, `1/2i`,
/// `3/2+1/2i`, `0.5-0.25i`, `zeta(3)^2`. Rational and integer literals are
/// exact; decimal literals are float.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar literal".into()));
    }
    if s.starts_with("zeta(") {
        return parse_zeta(&s);
    }
    if !s.ends_with('i') {
        return parse_real_component(&s);
    }
    // imaginary tail present
    let (re_part, im_part) = split_complex_terms(&s);
    let (re_str, im_str) = match im_part {
        Some(im) => (re_part.unwrap(), im),
        None => (String::new(), re_part.unwrap()),
    };
    let im_body = im_str.strip_suffix('i').unwrap();
    let im = match im_body {
        "" | "+" => Scalar::one(),
        "-" => Scalar::from_int(-1),
        _ => parse_real_component(im_body)?,
    };
    let re = if re_str.is_empty() {
        Scalar::zero()
    } else {
        parse_real_component(&re_str)?
    };
    Ok(&re + &(&im * &Scalar::gauss(0, 1, 1, 1)))
}

/// Parse a comma-separated vector of scalar literals.
pub fn parse_scalar_vec(s: &str) -> Result<Vec<Scalar>> {
    s.split(',').map(parse_scalar).collect()
}
