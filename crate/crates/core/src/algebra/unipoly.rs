//! Dense univariate polynomials over an exact coefficient field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::coeff::{Coeff, Rational};

/// Univariate polynomial with coefficients in ascending degree order.
///
/// Invariant: the last stored coefficient is nonzero; the zero polynomial
/// stores no coefficients and has degree `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<C: Coeff = Rational> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![C::one()] }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut factor = C::zero();
            for _ in 0..k {
                factor = factor + C::one();
            }
            out.push(c.clone() * factor);
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Monic multiple (divide by the leading coefficient). Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = C::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lc_inv = C::one() / divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - d];
        while rem.len() > d {
            let k = rem.len() - 1;
            let q = rem[k].clone() * lc_inv.clone();
            if !q.is_zero() {
                quot[k - d] = q.clone();
                for j in 0..=d {
                    let delta = q.clone() * divisor.coeffs[j].clone();
                    rem[k - d + j] = rem[k - d + j].clone() - delta;
                }
            }
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic gcd via the Euclidean algorithm; `gcd(f, 0)` is monic `f`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part `f / gcd(f, f')`, monic.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    pub fn is_square_free(&self) -> bool {
        self.is_zero() || self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Largest `e` with `(t - a)^e` dividing `self`, by repeated synthetic
    /// division. The zero polynomial vanishes to unbounded order; `None`.
    pub fn vanish_order(&self, a: &C) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let divisor = Self::from_coeffs(vec![-a.clone(), C::one()]);
        let mut f = self.clone();
        let mut order = 0;
        loop {
            if !f.evaluate(a).is_zero() {
                return Some(order);
            }
            let (q, r) = f.div_rem(&divisor);
            debug_assert!(r.is_zero());
            f = q;
            order += 1;
        }
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coeff> Add for UniPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(C::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(C::zero);
            out.push(a + b);
        }
        Self::from_coeffs(out)
    }
}

impl<C: Coeff> Sub for UniPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for UniPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: Coeff> Mul for UniPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<C: Coeff> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.format();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "t{}", if k == 1 { String::new() } else { format!("^{k}") })?;
            } else {
                write!(f, "{mag}*t{}", if k == 1 { String::new() } else { format!("^{k}") })?;
            }
        }
        Ok(())
    }
}
