//! Closed-form and combinatorial lower bounds on real solution counts, gap
//! sets, and the congruence-modulo-four criteria.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{
    sign_imbalance, CombinatoricsError, SchubertCondition, SchubertProblem,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("requires 1 <= k < n")]
    BadDimensions,
    #[error("real-root count violates the degree parity")]
    ParityViolation,
    #[error("osculation count out of range")]
    OsculationOutOfRange,
    #[error("problem is not of the expected family")]
    WrongFamily,
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// Which bound a report carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Sigma,
    SignImbalance,
    Factorization,
    Binomial,
    TrivialZero,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: u64,
    pub note: String,
}

fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc.to_u64().expect("binomial overflows u64")
}

/// Topological degree of the real Wronski map for Gr(k, n): zero when n is
/// even; otherwise the factorial quotient, with sigma(k,n) = sigma(n-k,n)
/// for k > n-k. Degenerate product ranges for small k collapse to empty
/// products.
pub fn sigma(k: usize, n: usize) -> Result<u64, BoundsError> {
    if k == 0 || k >= n {
        return Err(BoundsError::BadDimensions);
    }
    if n % 2 == 0 {
        return Ok(0);
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    // numerator: 1! 2! ... (k-1)!  *  (n-2k+1)! ... (n-k-1)!  *  (k(n-k)/2)!
    let mut num = BigUint::one();
    for i in 1..k {
        num *= factorial(i);
    }
    let mut j = n - 2 * k + 1;
    while j <= n - k - 1 {
        num *= factorial(j);
        j += 1;
    }
    num *= factorial(k * (n - k) / 2);
    // denominator: (n-2k+2)! (n-2k+4)! ... (n-2)!  *
    //              ((n-2k+1)/2)! ((n-2k+3)/2)! ... ((n-1)/2)!
    let mut den = BigUint::one();
    let mut j = n - 2 * k + 2;
    while j <= n - 2 {
        den *= factorial(j);
        j += 2;
    }
    let mut j = (n - 2 * k + 1) / 2;
    while j <= (n - 1) / 2 {
        den *= factorial(j);
        j += 1;
    }
    let (q, r) = (num.clone() / den.clone(), num % den);
    assert!(r.is_zero(), "sigma formula must divide exactly");
    Ok(q.to_u64().expect("sigma overflows u64"))
}

/// The two-condition topological lower bound Sigma(alpha, beta): the sign
/// imbalance of the skew shape alpha'/beta.
pub fn eg_ss_bound(
    alpha: &SchubertCondition,
    beta: &SchubertCondition,
) -> Result<BoundReport, BoundsError> {
    let value = sign_imbalance(alpha, beta)?;
    Ok(BoundReport {
        kind: BoundKind::SignImbalance,
        value,
        note: format!("sign imbalance of {}'/{}", alpha, beta),
    })
}

/// Number of monic real degree-(k-1) divisors of a real polynomial of
/// degree n-2 with `real_roots` simple real roots (the rest in conjugate
/// pairs): sum over b of C(R, k-1-2b) C((n-2-R)/2, b).
pub fn factorization_count(k: usize, n: usize, real_roots: usize) -> Result<u64, BoundsError> {
    if k == 0 || k >= n || n < 2 {
        return Err(BoundsError::BadDimensions);
    }
    let total = n - 2;
    if real_roots > total || (total - real_roots) % 2 != 0 {
        return Err(BoundsError::ParityViolation);
    }
    let pairs = (total - real_roots) / 2;
    let deg_b = k - 1;
    let mut count = 0u64;
    let mut b = 0;
    while 2 * b <= deg_b {
        let reals_needed = deg_b - 2 * b;
        count += binomial(real_roots as u64, reals_needed as u64)
            * binomial(pairs as u64, b as u64);
        b += 1;
    }
    Ok(count)
}

/// Possible numbers of real solutions for the family (omega, box^(n-1))
/// with osculation type (1, r): factorization counts as the derivative's
/// real-root count R ranges over r-1, r+1, ..., n-2.
pub fn gap_set(k: usize, n: usize, r: usize) -> Result<Vec<u64>, BoundsError> {
    if r == 0 || r > n - 1 || r % 2 != (n - 1) % 2 {
        return Err(BoundsError::OsculationOutOfRange);
    }
    let mut out = Vec::new();
    let mut big_r = r - 1;
    while big_r <= n - 2 {
        let v = factorization_count(k, n, big_r)?;
        if !out.contains(&v) {
            out.push(v);
        }
        big_r += 2;
    }
    out.sort_unstable();
    Ok(out)
}

/// The osculation-type-independent lower bound C(p+q, p) when k = 2p+1 is
/// odd and n = 2p+2q+2 is even; None otherwise (there may be no real
/// factorizations).
pub fn lagrangian_binomial(k: usize, n: usize) -> Option<u64> {
    if k % 2 == 1 && n % 2 == 0 && n > k + 1 {
        let p = (k - 1) / 2;
        let q = (n - k - 1) / 2;
        Some(binomial((p + q) as u64, p as u64))
    } else {
        None
    }
}

/// Outcome of the congruence-modulo-four criteria on a symmetric Schubert
/// problem.
#[derive(Debug, Clone, Serialize)]
pub struct Mod4Report {
    /// m - C(k+1,2) + ||alpha_i|| + ||alpha_j|| - 2, maximized over
    /// admissible index pairs when none is supplied.
    pub prop_inequality_value: i64,
    /// ||bold alpha|| - C(k+1,2).
    pub conjecture_inequality_value: i64,
    pub applies_prop: bool,
    pub applies_conjecture: bool,
    /// Complex count mod 4, when the complex count is supplied.
    pub predicted_residue: Option<u8>,
}

/// Evaluate the congruence criteria. All conditions must be symmetric
/// (n = 2k). When `ij` is given it is checked for admissibility; otherwise
/// the proposition value is maximized over admissible pairs.
pub fn mod4_check(
    problem: &SchubertProblem,
    ij: Option<(usize, usize)>,
    complex_count: Option<u64>,
) -> Result<Mod4Report, BoundsError> {
    let k = problem.k;
    let m = problem.len();
    let mut norms = Vec::with_capacity(m);
    for i in 0..m {
        let c = problem.condition(i);
        if !c.is_symmetric()? {
            return Err(BoundsError::Combinatorics(CombinatoricsError::NotSymmetric));
        }
        norms.push(c.sym_norm()? as i64);
    }
    let choose2 = (k * (k + 1) / 2) as i64;
    let total_norm: i64 = norms.iter().sum();
    let conjecture_value = total_norm - choose2;

    let has_trivial = (0..m).any(|i| problem.condition(i).is_trivial());
    // admissible (i,j): distinct, and some third index l with either
    // alpha_i = alpha_j = alpha_l or alpha_i != alpha_j
    let admissible = |i: usize, j: usize| -> bool {
        if i == j || m < 3 {
            return false;
        }
        (0..m).any(|l| {
            l != i
                && l != j
                && (problem.conditions[i] == problem.conditions[j]
                    && problem.conditions[j] == problem.conditions[l]
                    || problem.conditions[i] != problem.conditions[j])
        })
    };
    let prop_value_of = |i: usize, j: usize| m as i64 - choose2 + norms[i] + norms[j] - 2;
    let best = match ij {
        Some((i, j)) => admissible(i, j).then(|| prop_value_of(i, j)),
        None => {
            let mut best: Option<i64> = None;
            for i in 0..m {
                for j in 0..m {
                    if admissible(i, j) {
                        let v = prop_value_of(i, j);
                        best = Some(best.map_or(v, |b: i64| b.max(v)));
                    }
                }
            }
            best
        }
    };
    let prop_value = best.unwrap_or(i64::MIN / 2);
    let applies_prop = best.is_some() && prop_value >= 2 && !has_trivial;
    let applies_conjecture = conjecture_value >= 2;
    debug_assert!(!applies_prop || applies_conjecture);
    Ok(Mod4Report {
        prop_inequality_value: prop_value,
        conjecture_inequality_value: conjecture_value,
        applies_prop,
        applies_conjecture,
        predicted_residue: complex_count.map(|c| (c % 4) as u8),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{signed_syt_sum, SkewDiagram};

    fn cond(k: usize, n: usize, e: &[usize]) -> SchubertCondition {
        SchubertCondition::new(k, n, e.to_vec()).unwrap()
    }

    #[test]
    fn sigma_vanishes_for_even_n() {
        for n in (4..=10).step_by(2) {
            for k in 1..n {
                assert_eq!(sigma(k, n).unwrap(), 0, "sigma({k},{n})");
            }
        }
    }

    #[test]
    fn sigma_matches_rectangle_imbalance() {
        // the brute-force oracle: |signed SYT sum of the k x (n-k) rectangle|
        for (k, n) in [(1, 3), (1, 5), (2, 5), (3, 5), (2, 7), (3, 7), (1, 7), (4, 5)] {
            let rows = vec![n - k; k];
            let rect = SkewDiagram::straight(rows).unwrap();
            let oracle = signed_syt_sum(&rect).unsigned_abs();
            assert_eq!(sigma(k, n).unwrap(), oracle, "sigma({k},{n})");
        }
        assert_eq!(sigma(2, 5).unwrap(), 1);
    }

    #[test]
    fn sigma_reflection() {
        assert_eq!(sigma(5, 7).unwrap(), sigma(2, 7).unwrap());
        assert_eq!(sigma(4, 7).unwrap(), sigma(3, 7).unwrap());
    }

    #[test]
    fn eg_ss_examples() {
        // base shape: the column-row diagram with p = q = 2 sums to +2
        let shape = SkewDiagram::column_row(2, 2);
        assert_eq!(signed_syt_sum(&shape), 2);
        // alpha = beta = box in Gr(2,5) gives sigma(2,5) = 1
        let b = SchubertCondition::hypersurface(2, 5);
        assert_eq!(eg_ss_bound(&b, &b).unwrap().value, 1);
        // odd box count above the diagonal forces imbalance zero:
        // alpha = beta = box in Gr(2,4) (even n, sigma = 0)
        let b44 = SchubertCondition::hypersurface(2, 4);
        assert_eq!(eg_ss_bound(&b44, &b44).unwrap().value, 0);
    }

    #[test]
    fn odd_diagonal_excess_forces_zero_imbalance() {
        // for a symmetric pair whose skew shape has an odd number of boxes
        // above the main diagonal, reflection pairs tableaux with opposite
        // signs: the (332, box) pair in Gr(4,8)
        let c332 = cond(4, 8, &[2, 3, 5, 8]);
        let b = SchubertCondition::hypersurface(4, 8);
        assert_eq!(eg_ss_bound(&c332, &b).unwrap().value, 0);
        // and the all-box pair there (even n) vanishes as well
        assert_eq!(eg_ss_bound(&b, &b).unwrap().value, 0);
    }

    #[test]
    fn eg_ss_equals_sigma_for_boxes() {
        for (k, n) in [(2, 5), (3, 5), (2, 7), (1, 5), (3, 7)] {
            if k * (n - k) > 12 {
                continue;
            }
            let b = SchubertCondition::hypersurface(k, n);
            assert_eq!(
                eg_ss_bound(&b, &b).unwrap().value,
                sigma(k, n).unwrap(),
                "Gr({k},{n})"
            );
        }
    }

    #[test]
    fn factorization_tables() {
        // Gr(2,8): R real roots give R linear factors
        for r in [0usize, 2, 4, 6] {
            assert_eq!(factorization_count(2, 8, r).unwrap(), r as u64);
        }
        // Gr(4,8)
        assert_eq!(factorization_count(4, 8, 0).unwrap(), 0);
        assert_eq!(factorization_count(4, 8, 2).unwrap(), 4);
        assert_eq!(factorization_count(4, 8, 4).unwrap(), 8);
        assert_eq!(factorization_count(4, 8, 6).unwrap(), 20);
        // Gr(5,10)
        let got: Vec<u64> =
            [0, 2, 4, 6, 8].iter().map(|&r| factorization_count(5, 10, r).unwrap()).collect();
        assert_eq!(got, vec![6, 6, 14, 30, 70]);
        // parity violations error
        assert!(factorization_count(4, 8, 3).is_err());
    }

    #[test]
    fn gap_sets() {
        assert_eq!(gap_set(4, 8, 1).unwrap(), vec![0, 4, 8, 20]);
        assert_eq!(gap_set(2, 8, 7).unwrap(), vec![6]);
        for r in [1, 3, 5, 7] {
            assert!(gap_set(4, 8, r).unwrap().iter().all(|v| [0, 4, 8, 20].contains(v)));
        }
        for r in [1, 3, 5, 7, 9] {
            assert!(gap_set(5, 10, r).unwrap().iter().all(|&v| v >= 6));
        }
        assert!(gap_set(4, 8, 2).is_err());
    }

    #[test]
    fn lagrangian_binomials() {
        assert_eq!(lagrangian_binomial(5, 10), Some(6));
        assert_eq!(lagrangian_binomial(3, 6), Some(2));
        assert_eq!(lagrangian_binomial(4, 8), None);
        assert_eq!(lagrangian_binomial(2, 8), None);
        // the minimum over gap values equals the binomial bound
        assert_eq!(
            gap_set(5, 10, 1).unwrap().first().copied(),
            lagrangian_binomial(5, 10)
        );
    }

    #[test]
    fn column_row_recurrence() {
        // signed sums satisfy S(p,q) = S(p,q-2) + S(p-2,q) for even p,q <= 6,
        // vanish when p and q are both odd, and for both even equal the
        // central binomial C((p+q)/2, p/2)
        let s = |p: usize, q: usize| signed_syt_sum(&SkewDiagram::column_row(p, q));
        for p in (2..=6).step_by(2) {
            for q in (2..=6).step_by(2) {
                assert_eq!(s(p, q), s(p, q - 2) + s(p - 2, q), "p={p} q={q}");
            }
        }
        for p in (1..=5).step_by(2) {
            for q in (1..=5).step_by(2) {
                assert_eq!(s(p, q), 0, "p={p} q={q}");
            }
        }
        for p in (0..=6usize).step_by(2) {
            for q in (0..=6usize).step_by(2) {
                assert_eq!(
                    s(p, q),
                    binomial(((p + q) / 2) as u64, (p / 2) as u64) as i64,
                    "p={p} q={q}"
                );
            }
        }
    }

    #[test]
    fn omega_family_derivative_factors() {
        // the family polynomial f(t) = b_k + (-1)^n sum_ij of
        // (-t)^(n-k+j-i)/(n-k+j-i) a_i b_(k-j) has derivative
        // (-1)^(n+1) A(t) B(t) with A, B the coefficient polynomials;
        // checked as an exact identity at sampled rational coefficients
        use crate::algebra::{rat, Rational, UniPoly};
        for (k, n) in [(2usize, 5usize), (3, 6), (2, 8)] {
            let a: Vec<Rational> = (0..=n - k)
                .map(|i| if i == 1 { rat(1, 1) } else { rat(2 * i as i64 + 1, 3) })
                .collect(); // a[1] = 1 by convention, a[0] unused
            let b: Vec<Rational> = (0..=k)
                .map(|j| if j == 0 { rat(1, 1) } else { rat(i64::pow(-2, j as u32), 5) })
                .collect();
            let sign = |e: usize| if e % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let mut f = UniPoly::from_coeffs(vec![b[k].clone()]);
            for i in 1..=(n - k) {
                for j in 1..=k {
                    let m = n - k + j - i;
                    let coeff = sign(n) * sign(m) * &a[i] * &b[k - j] * rat(1, m as i64);
                    f = f + UniPoly::monomial(coeff, m);
                }
            }
            let a_poly = UniPoly::from_coeffs(
                (0..n - k).map(|e| sign(e) * &a[n - k - e]).collect(),
            );
            let b_poly = UniPoly::from_coeffs(
                (0..k).map(|e| sign(e) * &b[k - 1 - e]).collect(),
            );
            let product = (a_poly * b_poly).scale(&sign(n + 1));
            assert_eq!(f.derivative(), product, "Gr({k},{n})");
        }
    }

    #[test]
    fn mod4_worked_examples() {
        let hyp = SchubertCondition::hypersurface(4, 8);
        // (333, box^7) in Gr(4,8): value 8 - 10 + 6 + 1 - 2 = 3, applies
        let c333 = cond(4, 8, &[2, 3, 4, 8]);
        let p1 = SchubertProblem::new(
            std::iter::once(c333).chain(vec![hyp.clone(); 7]).collect(),
        )
        .unwrap();
        let r1 = mod4_check(&p1, None, Some(20)).unwrap();
        assert_eq!(r1.prop_inequality_value, 3);
        assert!(r1.applies_prop);
        assert!(r1.applies_conjecture);
        assert_eq!(r1.predicted_residue, Some(0));
        // (332, box^8) in Gr(4,8): value 9 - 10 + 5 + 1 - 2 = 3, applies
        let c332 = cond(4, 8, &[2, 3, 5, 8]);
        let p2 = SchubertProblem::new(
            std::iter::once(c332).chain(vec![hyp; 8]).collect(),
        )
        .unwrap();
        let r2 = mod4_check(&p2, None, Some(90)).unwrap();
        assert_eq!(r2.prop_inequality_value, 3);
        assert!(r2.applies_prop);
        assert_eq!(r2.predicted_residue, Some(2));
        // (21^2, box^3) in Gr(3,6): conjecture value 1, does not apply
        let c21 = cond(3, 6, &[2, 4, 6]);
        let hyp6 = SchubertCondition::hypersurface(3, 6);
        let p3 = SchubertProblem::new(vec![
            c21.clone(),
            c21,
            hyp6.clone(),
            hyp6.clone(),
            hyp6,
        ])
        .unwrap();
        let r3 = mod4_check(&p3, None, None).unwrap();
        assert_eq!(r3.conjecture_inequality_value, 1);
        assert!(!r3.applies_conjecture);
        assert!(!r3.applies_prop);
    }

    #[test]
    fn mod4_22_power_4() {
        // (22^4) in Gr(4,8): conjecture 2 >= 2 applies, proposition -2 does not
        let c22 = cond(4, 8, &[3, 4, 7, 8]);
        let p = SchubertProblem::new(vec![c22; 4]).unwrap();
        let r = mod4_check(&p, None, None).unwrap();
        assert_eq!(r.prop_inequality_value, -2);
        assert_eq!(r.conjecture_inequality_value, 2);
        assert!(!r.applies_prop);
        assert!(r.applies_conjecture);
    }

    #[test]
    fn mod4_rejects_nonsymmetric() {
        let p = SchubertProblem::new(vec![cond(3, 6, &[1, 5, 6]); 4]).unwrap();
        assert!(mod4_check(&p, None, None).is_err());
    }

    #[test]
    fn prop_implies_conjecture_on_random_symmetric_problems() {
        use crate::combinatorics::all_conditions;
        let mut state: u64 = 42;
        let mut next = |m: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as usize) % m
        };
        for k in 2..=4usize {
            let n = 2 * k;
            let symmetric: Vec<SchubertCondition> = all_conditions(k, n)
                .into_iter()
                .filter(|c| c.is_symmetric().unwrap() && !c.is_trivial())
                .collect();
            let mut tested = 0;
            while tested < 170 {
                let m = 3 + next(6);
                let conds: Vec<SchubertCondition> =
                    (0..m).map(|_| symmetric[next(symmetric.len())].clone()).collect();
                let p = SchubertProblem::new(conds).unwrap();
                let r = mod4_check(&p, None, None).unwrap();
                if r.applies_prop {
                    assert!(r.applies_conjecture);
                }
                tested += 1;
            }
        }
    }
}
