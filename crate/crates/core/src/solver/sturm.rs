//! Sylvester and Sturm sequences with content normalization, and real-root
//! counting via sign variations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Rational, UniPoly};

use super::SolverError;

/// Scale to integer coefficients of content one, preserving the sign
/// (positive-multiple normalization only, so Sturm variations survive).
fn positive_primitive(f: &UniPoly<Rational>) -> UniPoly<Rational> {
    if f.is_zero() {
        return f.clone();
    }
    let mut den_lcm = BigInt::one();
    for c in f.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut num_gcd = BigInt::zero();
    for c in f.coeffs() {
        num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
    }
    let factor = Rational::new(den_lcm, num_gcd).abs();
    f.scale(&factor)
}

/// The Sylvester sequence: f1, f2, then negated Euclidean remainders down
/// to (a multiple of) the gcd. Each entry is normalized by a positive
/// rational.
pub fn sylvester(f1: &UniPoly<Rational>, f2: &UniPoly<Rational>) -> Vec<UniPoly<Rational>> {
    let mut seq = Vec::new();
    if f1.is_zero() {
        return seq;
    }
    seq.push(positive_primitive(f1));
    if f2.is_zero() {
        return seq;
    }
    seq.push(positive_primitive(f2));
    loop {
        let len = seq.len();
        let (_, r) = seq[len - 2].div_rem(&seq[len - 1]);
        if r.is_zero() {
            return seq;
        }
        seq.push(positive_primitive(&-r));
    }
}

/// Sturm sequence of f: the Sylvester sequence of (f, f').
pub fn sturm(f: &UniPoly<Rational>) -> Vec<UniPoly<Rational>> {
    sylvester(f, &f.derivative())
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let nonzero: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Sign variation of the Sturm sequence at a finite point.
pub fn variation(seq: &[UniPoly<Rational>], a: &Rational) -> usize {
    variations(seq.iter().map(|f| sign(&f.evaluate(a))))
}

/// Sign variation in the limit at +infinity (or -infinity).
pub fn variation_at_infinity(seq: &[UniPoly<Rational>], positive: bool) -> usize {
    variations(seq.iter().map(|f| {
        match f.degree() {
            None => 0,
            Some(d) => {
                let lc = sign(f.leading_coeff().unwrap());
                if positive || d % 2 == 0 {
                    lc
                } else {
                    -lc
                }
            }
        }
    }))
}

/// Where to count distinct real roots.
#[derive(Debug, Clone, PartialEq)]
pub enum RootRange {
    WholeLine,
    /// Open interval (a, b); the endpoints must not be roots.
    Between(Rational, Rational),
}

/// Number of distinct real roots of `f` on the range, by Sturm's theorem.
pub fn count_real_roots(f: &UniPoly<Rational>, range: &RootRange) -> Result<usize, SolverError> {
    if f.is_zero() {
        return Err(SolverError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(0);
    }
    let seq = sturm(f);
    match range {
        RootRange::WholeLine => {
            Ok(variation_at_infinity(&seq, false) - variation_at_infinity(&seq, true))
        }
        RootRange::Between(a, b) => {
            if a >= b {
                return Err(SolverError::BadInterval);
            }
            if f.evaluate(a).is_zero() || f.evaluate(b).is_zero() {
                return Err(SolverError::EndpointIsRoot);
            }
            Ok(variation(&seq, a) - variation(&seq, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn poly(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn sturm_chain_of_x2_minus_2() {
        // (x^2-2, 2x, 2) up to positive scaling
        let seq = sturm(&poly(&[-2, 0, 1]));
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[0], poly(&[-2, 0, 1]));
        assert_eq!(seq[1], poly(&[0, 1]));
        assert_eq!(seq[2], poly(&[1]));
        // one root in (0, 3)
        let count = count_real_roots(
            &poly(&[-2, 0, 1]),
            &RootRange::Between(rat_int(0), rat_int(3)),
        )
        .unwrap();
        assert_eq!(count, 1);
    }

    #[test]
    fn whole_line_counts() {
        assert_eq!(count_real_roots(&poly(&[0, -1, 0, 1]), &RootRange::WholeLine).unwrap(), 3);
        assert_eq!(count_real_roots(&poly(&[1, 0, 1]), &RootRange::WholeLine).unwrap(), 0);
        // distinct roots of a non-square-free polynomial: x^2(x-1)
        assert_eq!(count_real_roots(&poly(&[0, 0, -1, 1]), &RootRange::WholeLine).unwrap(), 2);
    }

    #[test]
    fn endpoint_root_is_an_error() {
        let f = poly(&[-1, 0, 1]);
        assert!(matches!(
            count_real_roots(&f, &RootRange::Between(rat_int(-1), rat_int(2))),
            Err(SolverError::EndpointIsRoot)
        ));
    }

    #[test]
    fn sylvester_ends_at_gcd_multiple() {
        // f = (x-1)(x-2), g = (x-1)(x-3): gcd x-1
        let f = poly(&[2, -3, 1]);
        let g = poly(&[3, -4, 1]);
        let seq = sylvester(&f, &g);
        let last = seq.last().unwrap();
        let gcd = f.gcd(&g);
        assert_eq!(last.monic(), gcd);
    }

    #[test]
    fn matches_isolation_oracle_on_random_polys() {
        // deterministic pseudo-random square-free polynomials of degree <= 8
        let mut state: u64 = 0x5DEECE66D;
        let mut next = |m: i64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64).rem_euclid(m)
        };
        let mut tested = 0;
        while tested < 200 {
            let deg = 1 + next(8) as usize;
            let mut cs: Vec<i64> = (0..=deg).map(|_| next(21) - 10).collect();
            if cs[deg] == 0 {
                cs[deg] = 1;
            }
            let f = poly(&cs).square_free_part();
            if f.degree().map_or(true, |d| d == 0) {
                continue;
            }
            tested += 1;
            let sturm_count = count_real_roots(&f, &RootRange::WholeLine).unwrap();
            assert_eq!(sturm_count, isolate_real_roots(&f).len(), "polynomial {f}");
        }
    }

    /// Independent oracle: isolate the real roots of a square-free
    /// polynomial by recursion on the derivative. Between consecutive
    /// critical points the polynomial is monotone, so a sign change across
    /// a critical-point-free segment pins exactly one root.
    ///
    /// Returns disjoint ordered open intervals, one per real root, with
    /// nonzero values at every endpoint.
    fn isolate_real_roots(f: &UniPoly<Rational>) -> Vec<(Rational, Rational)> {
        let d = f.degree().expect("nonzero polynomial");
        let bound = cauchy_bound(f);
        if d == 0 {
            return vec![];
        }
        if d == 1 {
            return vec![(-bound.clone(), bound)];
        }
        let dsf = f.derivative().square_free_part();
        let mut crit = isolate_real_roots(&dsf);
        // shrink each critical interval until f provably has no root in it
        for iv in crit.iter_mut() {
            refine_until_root_free(f, &dsf, iv);
        }
        // breakpoints bracket the monotone segments
        let mut breaks = vec![-bound.clone()];
        for (a, b) in &crit {
            breaks.push(a.clone());
            breaks.push(b.clone());
        }
        breaks.push(bound);
        let mut out = Vec::new();
        let mut i = 0;
        while i + 1 < breaks.len() {
            // segments [break_0, break_1], [break_2, break_3], ... are
            // critical-point free; odd-indexed gaps are the refined critical
            // intervals themselves, already root-free
            let (a, b) = (&breaks[i], &breaks[i + 1]);
            let fa = f.evaluate(a);
            let fb = f.evaluate(b);
            assert!(!fa.is_zero() && !fb.is_zero());
            if fa.is_positive() != fb.is_positive() {
                out.push((a.clone(), b.clone()));
            }
            i += 2;
        }
        out
    }

    /// All real roots lie strictly inside (-bound, bound).
    fn cauchy_bound(f: &UniPoly<Rational>) -> Rational {
        let lc = f.leading_coeff().unwrap();
        f.coeffs().iter().map(|c| (c / lc).abs()).fold(rat_int(0), |a, b| if a > b { a } else { b })
            + rat_int(1)
    }

    /// Shrink an isolating interval of a root c of dsf (where f(c) != 0,
    /// since f is square-free) until |f(midpoint)| exceeds the interval
    /// width times a bound on |f'|, which certifies f != 0 on the whole
    /// interval.
    fn refine_until_root_free(
        f: &UniPoly<Rational>,
        dsf: &UniPoly<Rational>,
        iv: &mut (Rational, Rational),
    ) {
        loop {
            let (a, b) = (iv.0.clone(), iv.1.clone());
            let mid = (&a + &b) / rat_int(2);
            let fmid = f.evaluate(&mid);
            let radius = {
                let r1 = a.abs();
                let r2 = b.abs();
                if r1 > r2 {
                    r1
                } else {
                    r2
                }
            };
            // |f'| <= sum |d_i| radius^i on the interval
            let df = f.derivative();
            let mut deriv_bound = rat_int(0);
            let mut p = rat_int(1);
            for c in df.coeffs() {
                deriv_bound += c.abs() * &p;
                p *= &radius;
            }
            if fmid.abs() > (&b - &a) * deriv_bound {
                return;
            }
            // keep the half carrying the sign change of dsf
            let da = dsf.evaluate(&a);
            let dm = dsf.evaluate(&mid);
            if dm.is_zero() {
                // the critical point is exactly mid; shrink symmetrically
                let mut w = {
                    let w1 = &mid - &a;
                    let w2 = &b - &mid;
                    (if w1 < w2 { w1 } else { w2 }) / rat_int(2)
                };
                loop {
                    let lo = &mid - &w;
                    let hi = &mid + &w;
                    let dl = dsf.evaluate(&lo);
                    let dh = dsf.evaluate(&hi);
                    if !dl.is_zero() && !dh.is_zero() && dl.is_positive() != dh.is_positive() {
                        *iv = (lo, hi);
                        break;
                    }
                    w /= rat_int(2);
                }
            } else if da.is_positive() != dm.is_positive() {
                *iv = (a, mid);
            } else {
                *iv = (mid, b);
            }
        }
    }
}
