//! Coordinate patterns on Grassmannians and Schubert varieties, and
//! osculating flags of the rational normal curve.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    format_gaussian, parse_gaussian, Coeff, GaussianRational, Matrix, MultiPoly, Rational,
};
use crate::combinatorics::SchubertCondition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("pattern pivot window is empty: condition pair is inadmissible")]
    EmptyPattern,
    #[error("flag slice index {0} out of range")]
    SliceOutOfRange(usize),
    #[error("conditions live on different Grassmannians")]
    DimensionMismatch,
    #[error("point does not lie in the chart of the pattern")]
    NotInChart,
}

/// One entry of a coordinate pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entry {
    Zero,
    One,
    Var(usize),
}

/// A rows x cols grid of {0, 1, variable} entries giving Stiefel-style
/// local coordinates. Variable ids are contiguous in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordPattern {
    pub rows: usize,
    pub cols: usize,
    grid: Vec<Entry>,
}

impl CoordPattern {
    fn build(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Entry) -> Self {
        let mut grid = Vec::with_capacity(rows * cols);
        let mut next_var = 0;
        for i in 0..rows {
            for j in 0..cols {
                let e = match f(i, j) {
                    Entry::Var(_) => {
                        let v = Entry::Var(next_var);
                        next_var += 1;
                        v
                    }
                    other => other,
                };
                grid.push(e);
            }
        }
        CoordPattern { rows, cols, grid }
    }

    pub fn at(&self, i: usize, j: usize) -> Entry {
        self.grid[i * self.cols + j]
    }

    pub fn num_vars(&self) -> usize {
        self.grid
            .iter()
            .filter(|e| matches!(e, Entry::Var(_)))
            .count()
    }

    /// For row patterns (one pivot per row): the pivot column of each row.
    pub fn pivot_col_by_row(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .find(|&j| self.at(i, j) == Entry::One)
                    .expect("row without pivot")
            })
            .collect()
    }

    /// For column patterns (one pivot per column): the pivot row of each
    /// column.
    pub fn pivot_row_by_col(&self) -> Vec<usize> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .find(|&i| self.at(i, j) == Entry::One)
                    .expect("column without pivot")
            })
            .collect()
    }

    /// Positions of variables in id order.
    pub fn var_positions(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.num_vars()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let Entry::Var(v) = self.at(i, j) {
                    out[v] = (i, j);
                }
            }
        }
        out
    }

    /// Materialize as a polynomial matrix; variable `v` becomes variable
    /// `offset + v` of a ring with `arity` variables.
    pub fn to_poly_matrix<C: Coeff>(&self, arity: usize, offset: usize) -> Matrix<MultiPoly<C>> {
        Matrix::from_fn(self.rows, self.cols, |i, j| match self.at(i, j) {
            Entry::Zero => MultiPoly::zero(arity),
            Entry::One => MultiPoly::one(arity),
            Entry::Var(v) => MultiPoly::var(arity, offset + v),
        })
    }

    /// Materialize with concrete values substituted for the variables.
    pub fn instantiate<C: Coeff>(&self, values: &[C]) -> Matrix<C> {
        assert_eq!(values.len(), self.num_vars());
        Matrix::from_fn(self.rows, self.cols, |i, j| match self.at(i, j) {
            Entry::Zero => C::zero(),
            Entry::One => C::one(),
            Entry::Var(v) => values[v].clone(),
        })
    }

    /// Recover variable values for a concrete matrix known to satisfy the
    /// pattern (used when converting solutions between charts). Checks the
    /// zero and one cells exactly.
    pub fn read_values<C: Coeff>(&self, m: &Matrix<C>) -> Result<Vec<C>, GeometryError> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return Err(GeometryError::DimensionMismatch);
        }
        let mut values = vec![C::zero(); self.num_vars()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                match self.at(i, j) {
                    Entry::Zero => {
                        if !m.at(i, j).is_zero() {
                            return Err(GeometryError::NotInChart);
                        }
                    }
                    Entry::One => {
                        if !(m.at(i, j).clone() - C::one()).is_zero() {
                            return Err(GeometryError::NotInChart);
                        }
                    }
                    Entry::Var(v) => values[v] = m.at(i, j).clone(),
                }
            }
        }
        Ok(values)
    }
}

impl fmt::Display for CoordPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let s = match self.at(i, j) {
                    Entry::Zero => "0".to_string(),
                    Entry::One => "1".to_string(),
                    Entry::Var(v) => format!("x{}", v + 1),
                };
                write!(f, "{s:>5}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Stiefel coordinates on the Grassmannian chart U_alpha: pivots at the
/// alpha columns, all other entries free.
pub fn pattern_grassmannian(alpha: &SchubertCondition) -> CoordPattern {
    let (k, n) = (alpha.k, alpha.n);
    CoordPattern::build(k, n, |i, j| {
        match alpha.entries.iter().position(|&a| a == j + 1) {
            Some(p) if p == i => Entry::One,
            Some(_) => Entry::Zero,
            None => Entry::Var(0),
        }
    })
}

/// Stiefel coordinates on the Schubert cell: additionally, every entry to
/// the right of a pivot vanishes.
pub fn pattern_schubert(alpha: &SchubertCondition) -> CoordPattern {
    let (k, n) = (alpha.k, alpha.n);
    CoordPattern::build(k, n, |i, j| {
        match alpha.entries.iter().position(|&a| a == j + 1) {
            Some(p) if p == i => Entry::One,
            Some(_) => Entry::Zero,
            None if j + 1 > alpha.entries[i] => Entry::Zero,
            None => Entry::Var(0),
        }
    })
}

/// Coordinates for the intersection of a Schubert variety for the standard
/// flag (condition `alpha`) with one for the standard opposite flag
/// (condition `beta`): row i is supported on columns
/// [n+1-beta_{k-i}, alpha_i] with a pivot at alpha_i.
pub fn pattern_pair(
    alpha: &SchubertCondition,
    beta: &SchubertCondition,
) -> Result<CoordPattern, GeometryError> {
    if alpha.k != beta.k || alpha.n != beta.n {
        return Err(GeometryError::DimensionMismatch);
    }
    let (k, n) = (alpha.k, alpha.n);
    for i in 0..k {
        if alpha.entries[i] + beta.entries[k - 1 - i] < n + 1 {
            return Err(GeometryError::EmptyPattern);
        }
    }
    Ok(CoordPattern::build(k, n, |i, j| {
        let col = j + 1;
        if col == alpha.entries[i] {
            Entry::One
        } else if col > alpha.entries[i] || col < n + 1 - beta.entries[k - 1 - i] {
            Entry::Zero
        } else {
            Entry::Var(0)
        }
    }))
}

/// Dual Stiefel coordinates: an n x (n-k) column pattern for the Schubert
/// variety of `alpha_perp` in the dual Grassmannian, with pivots at rows
/// n+1-alpha_perp_j and zeros above pivots and across pivot rows.
pub fn pattern_dual(alpha_perp: &SchubertCondition) -> CoordPattern {
    let n = alpha_perp.n;
    let cols = alpha_perp.k;
    CoordPattern::build(n, cols, |i, j| {
        let row = i + 1;
        // pivot row of column j
        if row == n + 1 - alpha_perp.entries[j] {
            return Entry::One;
        }
        // zero across every other pivot row
        if alpha_perp.entries.iter().any(|&a| row == n + 1 - a) {
            return Entry::Zero;
        }
        if row < n + 1 - alpha_perp.entries[j] {
            Entry::Zero
        } else {
            Entry::Var(0)
        }
    })
}

/// Dual pair coordinates for an intersection of two Schubert varieties in
/// the dual Grassmannian: column j is supported on rows
/// [n+1-alpha_j, beta_{(n-k)-j+1}] with a pivot at n+1-alpha_j.
pub fn pattern_dual_pair(
    alpha_perp: &SchubertCondition,
    beta_perp: &SchubertCondition,
) -> Result<CoordPattern, GeometryError> {
    if alpha_perp.k != beta_perp.k || alpha_perp.n != beta_perp.n {
        return Err(GeometryError::DimensionMismatch);
    }
    let n = alpha_perp.n;
    let cols = alpha_perp.k;
    for j in 0..cols {
        if alpha_perp.entries[j] + beta_perp.entries[cols - 1 - j] < n + 1 {
            return Err(GeometryError::EmptyPattern);
        }
    }
    Ok(CoordPattern::build(n, cols, |i, j| {
        let row = i + 1;
        if row == n + 1 - alpha_perp.entries[j] {
            Entry::One
        } else if row < n + 1 - alpha_perp.entries[j] || row > beta_perp.entries[cols - 1 - j] {
            Entry::Zero
        } else {
            Entry::Var(0)
        }
    }))
}

/// A point of the projective line where a flag osculates the curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OsculationPoint {
    Finite(GaussianRational),
    Infinity,
}

impl OsculationPoint {
    pub fn rational(q: Rational) -> Self {
        OsculationPoint::Finite(GaussianRational::from_real(q))
    }

    pub fn conjugate(&self) -> Self {
        match self {
            OsculationPoint::Finite(z) => OsculationPoint::Finite(z.conjugate()),
            OsculationPoint::Infinity => OsculationPoint::Infinity,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            OsculationPoint::Finite(z) => z.is_real(),
            OsculationPoint::Infinity => true,
        }
    }

    /// Parse "inf", "3/2", "1+2i", ...
    pub fn parse(s: &str) -> Result<Self, crate::algebra::ParseCoeffError> {
        let t = s.trim();
        if t == "inf" || t == "oo" || t == "infinity" {
            return Ok(OsculationPoint::Infinity);
        }
        Ok(OsculationPoint::Finite(parse_gaussian(t)?))
    }
}

impl fmt::Display for OsculationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OsculationPoint::Finite(z) => write!(f, "{}", format_gaussian(z)),
            OsculationPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// An n x n matrix whose first i rows span the i-th subspace of a flag.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagBasis {
    pub matrix: Matrix<GaussianRational>,
}

impl FlagBasis {
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// First `i` rows.
    pub fn slice(&self, i: usize) -> Result<Matrix<GaussianRational>, GeometryError> {
        if i == 0 || i > self.n() {
            return Err(GeometryError::SliceOutOfRange(i));
        }
        Ok(Matrix::from_fn(i, self.n(), |r, c| self.matrix.at(r, c).clone()))
    }

    pub fn conjugate(&self) -> FlagBasis {
        FlagBasis { matrix: self.matrix.map(|z| z.conjugate()) }
    }
}

/// Basis of the flag osculating the Veronese curve (1, t, ..., t^(n-1)) at
/// the given point: row j is the (j-1)-st derivative of the curve; at
/// infinity, the standard opposite flag (antidiagonal identity).
pub fn osculating_basis(t: &OsculationPoint, n: usize) -> FlagBasis {
    match t {
        OsculationPoint::Infinity => FlagBasis {
            matrix: Matrix::from_fn(n, n, |i, j| {
                if i + j == n - 1 {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                }
            }),
        },
        OsculationPoint::Finite(t) => {
            // entry (i, j) = d^i/dt^i t^j = j!/(j-i)! t^(j-i)
            let mut powers = Vec::with_capacity(n);
            let mut p = GaussianRational::one();
            for _ in 0..n {
                powers.push(p.clone());
                p = p * t.clone();
            }
            FlagBasis {
                matrix: Matrix::from_fn(n, n, |i, j| {
                    if j < i {
                        return GaussianRational::zero();
                    }
                    let mut coeff: u64 = 1;
                    for d in 0..i {
                        coeff *= (j - d) as u64;
                    }
                    let c = GaussianRational::from_real(crate::algebra::rat_int(coeff as i64));
                    c * powers[j - i].clone()
                }),
            }
        }
    }
}

/// First `i` rows of the osculating basis at `t`.
pub fn flag_slice(
    basis: &FlagBasis,
    i: usize,
) -> Result<Matrix<GaussianRational>, GeometryError> {
    basis.slice(i)
}

/// A real fractional-linear reparametrization of the projective line,
/// t -> (a t + b) / (c t + d), with rational entries and nonzero
/// determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct Moebius {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Moebius {
    pub fn identity() -> Self {
        Moebius {
            a: Rational::one(),
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::one(),
        }
    }

    /// The map sending `p` to 0 and `q` to infinity; `p`, `q` must be
    /// distinct real points.
    pub fn sending_to_zero_infinity(p: &OsculationPoint, q: &OsculationPoint) -> Self {
        assert!(p.is_real() && q.is_real() && p != q);
        match (p, q) {
            (OsculationPoint::Finite(p), OsculationPoint::Finite(q)) => Moebius {
                a: Rational::one(),
                b: -p.re.clone(),
                c: Rational::one(),
                d: -q.re.clone(),
            },
            (OsculationPoint::Finite(p), OsculationPoint::Infinity) => Moebius {
                a: Rational::one(),
                b: -p.re.clone(),
                c: Rational::zero(),
                d: Rational::one(),
            },
            (OsculationPoint::Infinity, OsculationPoint::Finite(q)) => Moebius {
                a: Rational::zero(),
                b: Rational::one(),
                c: Rational::one(),
                d: -q.re.clone(),
            },
            (OsculationPoint::Infinity, OsculationPoint::Infinity) => unreachable!(),
        }
    }

    pub fn apply(&self, t: &OsculationPoint) -> OsculationPoint {
        let (num, den) = match t {
            OsculationPoint::Finite(z) => (
                GaussianRational::from_real(self.a.clone()) * z.clone()
                    + GaussianRational::from_real(self.b.clone()),
                GaussianRational::from_real(self.c.clone()) * z.clone()
                    + GaussianRational::from_real(self.d.clone()),
            ),
            OsculationPoint::Infinity => (
                GaussianRational::from_real(self.a.clone()),
                GaussianRational::from_real(self.c.clone()),
            ),
        };
        if den.is_zero() {
            OsculationPoint::Infinity
        } else {
            OsculationPoint::Finite(num / den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gaussian, rat, rat_int};
    use crate::combinatorics::{all_conditions, SchubertCondition};

    fn cond(k: usize, n: usize, e: &[usize]) -> SchubertCondition {
        SchubertCondition::new(k, n, e.to_vec()).unwrap()
    }

    fn pattern_row(p: &CoordPattern, i: usize) -> String {
        (0..p.cols)
            .map(|j| match p.at(i, j) {
                Entry::Zero => '0',
                Entry::One => '1',
                Entry::Var(_) => '*',
            })
            .collect()
    }

    #[test]
    fn grassmannian_patterns() {
        // alpha = [k]: block [Id_k | vars]
        let p = pattern_grassmannian(&cond(2, 5, &[1, 2]));
        assert_eq!(pattern_row(&p, 0), "10***");
        assert_eq!(pattern_row(&p, 1), "01***");
        // alpha = (2,5,7) in Gr(3,7), matching the displayed matrix
        let p = pattern_grassmannian(&cond(3, 7, &[2, 5, 7]));
        assert_eq!(pattern_row(&p, 0), "*1**0*0");
        assert_eq!(pattern_row(&p, 1), "*0**1*0");
        assert_eq!(pattern_row(&p, 2), "*0**0*1");
        // variable count is always k(n-k)
        for a in all_conditions(3, 6) {
            assert_eq!(pattern_grassmannian(&a).num_vars(), 9);
        }
    }

    #[test]
    fn schubert_patterns() {
        let p = pattern_schubert(&cond(3, 7, &[2, 5, 7]));
        assert_eq!(pattern_row(&p, 0), "*100000");
        assert_eq!(pattern_row(&p, 1), "*0**100");
        assert_eq!(pattern_row(&p, 2), "*0**0*1");
        // the point condition (1,...,k) has no variables
        assert_eq!(pattern_schubert(&cond(3, 7, &[1, 2, 3])).num_vars(), 0);
        // var count + codim = k(n-k)
        for a in all_conditions(2, 6) {
            assert_eq!(pattern_schubert(&a).num_vars() + a.codim(), 8);
        }
    }

    #[test]
    fn pair_patterns() {
        // the displayed matrix for alpha=(2,5,7,9), beta=(4,5,7,8) in Gr(4,9)
        let p = pattern_pair(&cond(4, 9, &[2, 5, 7, 9]), &cond(4, 9, &[4, 5, 7, 8])).unwrap();
        assert_eq!(pattern_row(&p, 0), "010000000");
        assert_eq!(pattern_row(&p, 1), "00**10000");
        assert_eq!(pattern_row(&p, 2), "0000**100");
        assert_eq!(pattern_row(&p, 3), "00000***1");
        // the four-lines chart in Gr(2,4)
        let b = cond(2, 4, &[2, 4]);
        let p = pattern_pair(&b, &b).unwrap();
        assert_eq!(pattern_row(&p, 0), "*100");
        assert_eq!(pattern_row(&p, 1), "00*1");
        // var count identity on all admissible pairs with k,n <= 6
        for (k, n) in [(2, 4), (2, 5), (3, 6), (2, 6)] {
            for a in all_conditions(k, n) {
                for b in all_conditions(k, n) {
                    if let Ok(p) = pattern_pair(&a, &b) {
                        assert_eq!(
                            p.num_vars(),
                            k * (n - k) - a.codim() - b.codim(),
                            "pair {a} {b} in Gr({k},{n})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dual_patterns() {
        // alpha = (2,5) in Gr(2,6): dual pattern for (1,3,4,6)
        let p = pattern_dual(&cond(4, 6, &[1, 3, 4, 6]));
        assert_eq!(pattern_row(&p, 0), "0001");
        assert_eq!(pattern_row(&p, 1), "000*");
        assert_eq!(pattern_row(&p, 2), "0010");
        assert_eq!(pattern_row(&p, 3), "0100");
        assert_eq!(pattern_row(&p, 4), "0***");
        assert_eq!(pattern_row(&p, 5), "1000");
        // var count = dim of the dual Schubert variety
        for a in all_conditions(2, 6) {
            let d = a.dual();
            let dim = 2 * 4 - d.codim();
            assert_eq!(pattern_dual(&d).num_vars(), dim);
        }
    }

    #[test]
    fn dual_pair_patterns() {
        // the displayed 7x4 matrix for alpha=(2,4,5,7), beta=(3,4,6,7)
        let p =
            pattern_dual_pair(&cond(4, 7, &[2, 4, 5, 7]), &cond(4, 7, &[3, 4, 6, 7])).unwrap();
        assert_eq!(pattern_row(&p, 0), "0001");
        assert_eq!(pattern_row(&p, 1), "000*");
        assert_eq!(pattern_row(&p, 2), "001*");
        assert_eq!(pattern_row(&p, 3), "01*0");
        assert_eq!(pattern_row(&p, 4), "0*00");
        assert_eq!(pattern_row(&p, 5), "1*00");
        assert_eq!(pattern_row(&p, 6), "*000");
        assert_eq!(p.num_vars(), 6);
    }

    #[test]
    fn osculating_bases() {
        // t = 0: diagonal factorial scaling of the standard flag
        let b = osculating_basis(&OsculationPoint::rational(rat_int(0)), 4);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(b.matrix.at(i, j).is_zero());
                }
            }
        }
        // t = inf: standard opposite flag
        let b = osculating_basis(&OsculationPoint::Infinity, 4);
        assert!(b.matrix.at(0, 3).is_one());
        assert!(b.matrix.at(3, 0).is_one());
        // t = 1, n = 4: second row is the derivative (0,1,2,3)
        let b = osculating_basis(&OsculationPoint::rational(rat_int(1)), 4);
        let row: Vec<_> = (0..4).map(|j| b.matrix.at(1, j).re.clone()).collect();
        assert_eq!(row, vec![rat_int(0), rat_int(1), rat_int(2), rat_int(3)]);
    }

    #[test]
    fn flag_slices() {
        let t = OsculationPoint::Finite(gaussian(1, 3, 0, 1));
        let b = osculating_basis(&t, 5);
        assert_eq!(b.slice(5).unwrap(), b.matrix);
        let one = b.slice(1).unwrap();
        assert_eq!(one.rows(), 1);
        // gamma(t) = (1, t, t^2, ...)
        assert_eq!(one.at(0, 2), &gaussian(1, 9, 0, 1));
        assert!(b.slice(0).is_err());
        assert!(b.slice(6).is_err());
        // full rank at random finite points
        for num in [-3i64, 2, 5] {
            let b = osculating_basis(&OsculationPoint::rational(rat(num, 7)), 5);
            for i in 1..=5 {
                assert_eq!(b.slice(i).unwrap().rank(), i);
            }
        }
    }

    #[test]
    fn conjugation_equivariance() {
        let t = OsculationPoint::Finite(gaussian(1, 2, 3, 4));
        let b = osculating_basis(&t, 5);
        let bc = osculating_basis(&t.conjugate(), 5);
        assert_eq!(b.conjugate(), bc);
    }

    #[test]
    fn schubert_membership_at_zero() {
        // a random point of the Schubert cell stacked with the flag slice
        // satisfies the rank conditions of membership
        for a in all_conditions(2, 5) {
            let pat = pattern_schubert(&a);
            let vals: Vec<GaussianRational> =
                (0..pat.num_vars()).map(|v| gaussian(v as i64 + 2, 3, 0, 1)).collect();
            let h = pat.instantiate(&vals);
            let basis = osculating_basis(&OsculationPoint::rational(rat_int(0)), 5);
            for (i, &ai) in a.entries.iter().enumerate() {
                let stack = h.stack(&basis.slice(ai).unwrap());
                assert!(stack.rank() <= 2 + ai - (i + 1), "rank condition for {a}");
            }
        }
    }

    #[test]
    fn moebius_moves() {
        let p = OsculationPoint::rational(rat_int(3));
        let q = OsculationPoint::Infinity;
        let m = Moebius::sending_to_zero_infinity(&p, &q);
        assert_eq!(m.apply(&p), OsculationPoint::rational(rat_int(0)));
        assert_eq!(m.apply(&q), OsculationPoint::Infinity);
        let m = Moebius::sending_to_zero_infinity(&q, &p);
        assert_eq!(m.apply(&q), OsculationPoint::rational(rat_int(0)));
        assert_eq!(m.apply(&p), OsculationPoint::Infinity);
        let a = OsculationPoint::rational(rat_int(1));
        let b = OsculationPoint::rational(rat_int(2));
        let m = Moebius::sending_to_zero_infinity(&a, &b);
        assert_eq!(m.apply(&a), OsculationPoint::rational(rat_int(0)));
        assert_eq!(m.apply(&b), OsculationPoint::Infinity);
        // conjugation equivariance of real moebius maps
        let z = OsculationPoint::Finite(gaussian(1, 1, 1, 2));
        assert_eq!(m.apply(&z.conjugate()), m.apply(&z).conjugate());
    }

    #[test]
    fn point_literals() {
        for s in ["0", "inf", "3/2", "1+2i", "-1/3-1/2i"] {
            let p = OsculationPoint::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn pattern_read_values_round_trip() {
        let pat = pattern_pair(&cond(2, 4, &[2, 4]), &cond(2, 4, &[2, 4])).unwrap();
        let vals = vec![gaussian(3, 2, 0, 1), gaussian(-1, 5, 0, 1)];
        let m = pat.instantiate(&vals);
        assert_eq!(pat.read_values(&m).unwrap(), vals);
    }
}
