//! Sparse multivariate polynomials keyed by exponent vector, with the
//! lexicographic term order in which the last variable is most significant
//! (so `x1` is the minimal variable and carries eliminants).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::coeff::{parse_rational, Coeff, GaussianRational, Rational};
use super::unipoly::UniPoly;

/// Exponent vector of a monomial. `Ord` is the lexicographic term order
/// with the last variable most significant: `a < b` iff the last nonzero
/// entry of `b - a` is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = vec![0; arity];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime_with(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Pure power of a single variable: returns `(index, exponent)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over `C` with a fixed arity.
///
/// Invariant: no zero coefficients are stored, and every stored exponent
/// vector has the declared arity.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<C: Coeff = Rational> {
    arity: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    pub fn constant(arity: usize, c: C) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arity), c);
        }
        p
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        assert!(idx < arity, "variable index out of range");
        let mut p = Self::zero(arity);
        p.terms.insert(Monomial::var(arity, idx), C::one());
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.arity(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Leading (maximal) term in the lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.arity];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut factor = C::zero();
            for _ in 0..e {
                factor = factor + C::one();
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.add_term(m2, c.clone() * factor);
        }
        out
    }

    pub fn evaluate(&self, values: &[C]) -> C {
        assert_eq!(values.len(), self.arity);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * values[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute `poly` for variable `var`.
    pub fn substitute(&self, var: usize, poly: &Self) -> Self {
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.arity, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let base = if i == var { poly.clone() } else { Self::var(self.arity, i) };
                for _ in 0..e {
                    t = t * base.clone();
                }
            }
            out = out + t;
        }
        out
    }

    /// Reinterpret with variables permuted so that new index `i` is old
    /// index `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let e = perm.iter().map(|&old| m.0[old]).collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Univariate view when the support is contained in `{var}`.
    pub fn as_unipoly_in(&self, var: usize) -> Option<UniPoly<C>> {
        let sup = self.support();
        if !sup.iter().all(|&v| v == var) {
            return None;
        }
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![C::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl MultiPoly<GaussianRational> {
    /// Coefficientwise split into real and imaginary parts, so that
    /// `p = re + i*im` with both parts over the rationals.
    pub fn split_real_imag(&self) -> (MultiPoly<Rational>, MultiPoly<Rational>) {
        let mut re = MultiPoly::zero(self.arity);
        let mut im = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            re.add_term(m.clone(), c.re.clone());
            im.add_term(m.clone(), c.im.clone());
        }
        (re, im)
    }

    pub fn conjugate(&self) -> Self {
        self.map_coeffs(|c| c.conjugate())
    }

    /// Drops the imaginary parts, which must all be zero.
    pub fn to_rational(&self) -> Option<MultiPoly<Rational>> {
        let (re, im) = self.split_real_imag();
        im.is_zero().then_some(re)
    }
}

impl MultiPoly<Rational> {
    /// Scale to integer coefficients with content 1 and positive leading
    /// coefficient.
    pub fn integer_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let factor = Rational::new(den_lcm, num_gcd);
        let scaled = self.scale(&factor);
        if scaled.leading_term().unwrap().1.is_negative() {
            scaled.scale(&-Rational::one())
        } else {
            scaled
        }
    }

    pub fn to_gaussian(&self) -> MultiPoly<GaussianRational> {
        self.map_coeffs(|c| GaussianRational::from_real(c.clone()))
    }
}

impl<C: Coeff> Add for MultiPoly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<C: Coeff> Sub for MultiPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Coeff> Mul for MultiPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.arity, rhs.arity);
        let mut out = Self::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<C: Coeff> MultiPoly<C> {
    /// Canonical text form: terms joined by " + " / " - " in descending lex
    /// order, coefficients as "a/b", variables "x1..xq", powers "^e".
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.format();
            let (neg, mag) = match cs.strip_prefix('-') {
                // A complex coefficient like -1+2i is not a negated magnitude.
                Some(rest) if !rest.contains('+') && !rest.contains('-') => (true, rest.to_string()),
                _ => (false, cs),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars = monomial_text(m);
            if vars.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&vars);
            } else {
                let needs_parens = mag.contains('+') || mag[1..].contains('-');
                if needs_parens {
                    out.push_str(&format!("({mag})*{vars}"));
                } else {
                    out.push_str(&format!("{mag}*{vars}"));
                }
            }
        }
        out
    }
}

fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(format!("x{}", i + 1));
        } else {
            parts.push(format!("x{}^{}", i + 1, e));
        }
    }
    parts.join("*")
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid polynomial text `{input}`: {reason}")]
pub struct ParsePolyError {
    pub input: String,
    pub reason: String,
}

/// Parse the canonical text form into a polynomial over the Gaussian
/// rationals; complex coefficients appear as parenthesized literals or
/// pure-imaginary factors.
pub fn parse_poly_gaussian(
    s: &str,
    arity: usize,
) -> Result<MultiPoly<GaussianRational>, ParsePolyError> {
    let err = |reason: &str| ParsePolyError { input: s.to_string(), reason: reason.to_string() };
    parse_terms(s, arity, &|factor| {
        let inner = factor
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .unwrap_or(factor);
        super::coeff::parse_gaussian(inner).map_err(|_| err("bad coefficient"))
    })
}

/// Parse the canonical text form back into a polynomial over the rationals.
pub fn parse_poly(s: &str, arity: usize) -> Result<MultiPoly<Rational>, ParsePolyError> {
    let err = |reason: &str| ParsePolyError { input: s.to_string(), reason: reason.to_string() };
    parse_terms(s, arity, &|factor| parse_rational(factor).map_err(|_| err("bad coefficient")))
}

fn parse_terms<C: Coeff>(
    s: &str,
    arity: usize,
    parse_coeff: &dyn Fn(&str) -> Result<C, ParsePolyError>,
) -> Result<MultiPoly<C>, ParsePolyError> {
    let err = |reason: &str| ParsePolyError { input: s.to_string(), reason: reason.to_string() };
    let mut p = MultiPoly::zero(arity);
    // Tokenize into signed terms split on " + " / " - " with a possible
    // leading sign.
    let compact = s.trim();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    if compact == "0" {
        return Ok(p);
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut rest = compact;
    let mut neg = false;
    if let Some(r) = rest.strip_prefix('-') {
        neg = true;
        rest = r.trim_start();
    }
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        let (cut, next_neg) = match (plus, minus) {
            (Some(a), Some(b)) if a < b => (Some(a), false),
            (Some(_), Some(b)) => (Some(b), true),
            (Some(a), None) => (Some(a), false),
            (None, Some(b)) => (Some(b), true),
            (None, None) => (None, false),
        };
        match cut {
            Some(idx) => {
                terms.push((neg, rest[..idx].trim().to_string()));
                rest = rest[idx + 3..].trim_start();
                neg = next_neg;
            }
            None => {
                terms.push((neg, rest.trim().to_string()));
                break;
            }
        }
    }
    for (neg, term) in terms {
        let mut coeff = C::one();
        let mut mono = Monomial::one(arity);
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if let Some(varpart) = factor.strip_prefix('x') {
                let (idx_s, pow_s) = match varpart.split_once('^') {
                    Some((i, p)) => (i, Some(p)),
                    None => (varpart, None),
                };
                let idx: usize =
                    idx_s.parse().map_err(|_| err("bad variable index"))?;
                if idx == 0 || idx > arity {
                    return Err(err("variable index out of range"));
                }
                let pow: u32 = match pow_s {
                    Some(p) => p.parse().map_err(|_| err("bad exponent"))?,
                    None => 1,
                };
                mono.0[idx - 1] += pow;
            } else {
                coeff = coeff * parse_coeff(factor)?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(mono, coeff);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::{rat, rat_int};
    use proptest::prelude::*;

    fn x(arity: usize, i: usize) -> MultiPoly {
        MultiPoly::var(arity, i)
    }

    fn c(arity: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(arity, rat_int(v))
    }

    #[test]
    fn lex_order_matches_convention() {
        // 1 < x1 < x1^9 < x2 < x2^2*x1^6 < x2^3 < x3 < x3*x1 for q = 3
        let seq = [
            Monomial(vec![0, 0, 0]),
            Monomial(vec![1, 0, 0]),
            Monomial(vec![9, 0, 0]),
            Monomial(vec![0, 1, 0]),
            Monomial(vec![6, 2, 0]),
            Monomial(vec![0, 3, 0]),
            Monomial(vec![0, 0, 1]),
            Monomial(vec![1, 0, 1]),
        ];
        for w in seq.windows(2) {
            assert!(w[0] < w[1], "{:?} should precede {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn initial_term_examples() {
        // f = 4 - 2x1 + x2 + 3x3 has initial term 3x3
        let f = c(3, 4) - c(3, 2) * x(3, 0) + x(3, 1) + c(3, 3) * x(3, 2);
        let (m, co) = f.leading_term().unwrap();
        assert_eq!(m, &Monomial(vec![0, 0, 1]));
        assert_eq!(co, &rat_int(3));
        // g = x2*x1^9 + 3x2^2*x1 + 2x2^5 - 5x3*x1 has initial term -5x3*x1
        let g = MultiPoly::from_terms(
            3,
            [
                (Monomial(vec![9, 1, 0]), rat_int(1)),
                (Monomial(vec![1, 2, 0]), rat_int(3)),
                (Monomial(vec![0, 5, 0]), rat_int(2)),
                (Monomial(vec![1, 0, 1]), rat_int(-5)),
            ],
        );
        let (m, co) = g.leading_term().unwrap();
        assert_eq!(m, &Monomial(vec![1, 0, 1]));
        assert_eq!(co, &rat_int(-5));
    }

    #[test]
    fn text_round_trip() {
        let p = MultiPoly::from_terms(
            3,
            [
                (Monomial(vec![2, 0, 1]), rat(3, 2)),
                (Monomial(vec![0, 0, 0]), rat_int(-1)),
            ],
        );
        assert_eq!(p.to_text(), "3/2*x1^2*x3 - 1");
        assert_eq!(parse_poly("3/2*x1^2*x3 - 1", 3).unwrap(), p);
    }

    #[test]
    fn gaussian_text_round_trip() {
        use crate::algebra::coeff::gaussian;
        let p = MultiPoly::from_terms(
            2,
            [
                (Monomial(vec![1, 1]), gaussian(-1, 1, 2, 1)),
                (Monomial(vec![0, 1]), gaussian(0, 1, -1, 2)),
                (Monomial(vec![0, 0]), gaussian(3, 1, 0, 1)),
            ],
        );
        let text = p.to_text();
        assert_eq!(parse_poly_gaussian(&text, 2).unwrap(), p, "round trip of {text}");
    }

    #[test]
    fn split_real_imag_reconstructs() {
        use crate::algebra::coeff::gaussian;
        // (2+3i)x -> (2x, 3x)
        let p = MultiPoly::<GaussianRational>::var(2, 0).scale(&gaussian(2, 1, 3, 1));
        let (re, im) = p.split_real_imag();
        assert_eq!(re, MultiPoly::var(2, 0).scale(&rat_int(2)));
        assert_eq!(im, MultiPoly::var(2, 0).scale(&rat_int(3)));
        // real p -> (p, 0)
        let q = MultiPoly::<Rational>::var(2, 1).to_gaussian();
        let (re, im) = q.split_real_imag();
        assert!(im.is_zero());
        assert_eq!(re.to_gaussian(), q);
        // p + conj(p) = 2 re(p): the Re(f) = (f + conj f)/2 identity
        let z = p.clone() + p.conjugate();
        let (re2, im2) = z.split_real_imag();
        assert!(im2.is_zero());
        assert_eq!(re2, MultiPoly::var(2, 0).scale(&rat_int(4)));
    }

    #[test]
    fn integer_primitive_normalizes() {
        let p = MultiPoly::from_terms(
            2,
            [
                (Monomial(vec![1, 0]), rat(2, 3)),
                (Monomial(vec![0, 1]), rat(-4, 3)),
            ],
        );
        let prim = p.integer_primitive();
        // leading term is the x2 term; it must become positive
        assert_eq!(
            prim,
            MultiPoly::from_terms(
                2,
                [
                    (Monomial(vec![1, 0]), rat_int(-1)),
                    (Monomial(vec![0, 1]), rat_int(2)),
                ]
            )
        );
    }

    proptest! {
        #[test]
        fn ring_axioms(seed in 0u64..200) {
            // deterministic small polynomials from the seed
            let mk = |s: u64| {
                let mut p = MultiPoly::zero(2);
                let mut v = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                for _ in 0..3 {
                    v = v.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let e1 = ((v >> 5) % 3) as u32;
                    let e2 = ((v >> 17) % 3) as u32;
                    let c = ((v >> 33) % 7) as i64 - 3;
                    p.add_term(Monomial(vec![e1, e2]), rat_int(c));
                }
                p
            };
            let p = mk(seed);
            let q = mk(seed.wrapping_add(1));
            let r = mk(seed.wrapping_add(2));
            // distributivity
            prop_assert_eq!(
                (p.clone() + q.clone()) * r.clone(),
                p.clone() * r.clone() + q.clone() * r.clone()
            );
            // deg(pq) = deg p + deg q over an integral domain
            if !p.is_zero() && !q.is_zero() {
                let d = (p.clone() * q.clone()).total_degree().unwrap();
                prop_assert_eq!(d, p.total_degree().unwrap() + q.total_degree().unwrap());
            }
        }
    }
}
