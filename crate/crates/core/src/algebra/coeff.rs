//! Coefficient fields: exact rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always reduced with positive
/// denominator (`BigRational` normalizes on construction).
pub type Rational = BigRational;

/// Shorthand for a rational from small integers. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Shorthand for a Gaussian rational from small integer parts.
pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
    GaussianRational::new(rat(re_num, re_den), rat(im_num, im_den))
}

/// Field operations needed by the polynomial and matrix code.
///
/// Implemented by [`Rational`] and [`GaussianRational`]. Division must be
/// exact (both are fields).
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Render in the canonical text form used by the polynomial printer.
    fn format(&self) -> String;
}

impl Coeff for Rational {
    fn format(&self) -> String {
        format_rational(self)
    }
}

/// Canonical "a" or "a/b" rendering of a rational.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid coefficient literal `{0}`")]
pub struct ParseCoeffError(pub String);

/// Parse "a" or "a/b" into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseCoeffError> {
    let s = s.trim();
    let mk_err = || ParseCoeffError(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| mk_err())?;
            let d: BigInt = d.trim().parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rational::from(n))
        }
    }
}

/// A Gaussian rational `re + im*i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conjugate(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::from_real(re)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inverse().expect("division by zero Gaussian rational");
        self * inv
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_gaussian(self))
    }
}

impl Coeff for GaussianRational {
    fn format(&self) -> String {
        format_gaussian(self)
    }
}

/// Canonical rendering matching the point-literal grammar: "0", "3/2",
/// "1+2i", "-1/3-1/2i", "2i".
pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im_abs = format!("{}i", format_rational(&z.im.abs()));
    if z.re.is_zero() {
        return if z.im.is_negative() { format!("-{im_abs}") } else { im_abs };
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}", format_rational(&z.re), sign, im_abs)
}

/// Parse a Gaussian rational literal: "0", "3/2", "1+2i", "-1/3-1/2i", "i", "-i", "2i".
pub fn parse_gaussian(s: &str) -> Result<GaussianRational, ParseCoeffError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mk_err = || ParseCoeffError(s.clone());
    if s.is_empty() {
        return Err(mk_err());
    }
    // Split at the sign separating real and imaginary parts, if any.
    // Skip the leading character so a unary minus is not treated as a split.
    let mut split_at = None;
    for (idx, c) in s.char_indices().skip(1) {
        if c == '+' || c == '-' {
            split_at = Some(idx);
        }
    }
    let parse_im = |part: &str| -> Result<Rational, ParseCoeffError> {
        let body = part.strip_suffix('i').ok_or_else(mk_err)?;
        match body {
            "" | "+" => Ok(Rational::one()),
            "-" => Ok(-Rational::one()),
            _ => parse_rational(body),
        }
    };
    if s.ends_with('i') {
        match split_at {
            Some(idx) => {
                let re = parse_rational(&s[..idx])?;
                let sign = if s.as_bytes()[idx] == b'-' { -Rational::one() } else { Rational::one() };
                let im = parse_im(&s[idx + 1..])?;
                Ok(GaussianRational::new(re, sign * im))
            }
            None => Ok(GaussianRational::new(Rational::zero(), parse_im(&s)?)),
        }
    } else {
        Ok(GaussianRational::from_real(parse_rational(&s)?))
    }
}
