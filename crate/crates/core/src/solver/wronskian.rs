//! Wronskians of polynomial tuples and the Castelnuovo determinant
//! correspondence linking them to stacked flag minors.

use num_traits::Zero;

use crate::algebra::{Coeff, Matrix, MultiPoly, Rational, UniPoly};
use crate::geometry::{osculating_basis, OsculationPoint};

use super::SolverError;

/// Determinant of a square matrix of univariate polynomials by Laplace
/// expansion (sizes here are tiny).
fn det_unipoly<C: Coeff>(rows: &[Vec<UniPoly<C>>]) -> UniPoly<C> {
    let n = rows.len();
    if n == 0 {
        return UniPoly::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<UniPoly<C>>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter_map(|(c, p)| (c != j).then(|| p.clone()))
                    .collect()
            })
            .collect();
        let term = rows[0][j].clone() * det_unipoly(&sub);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// The Wronskian det(f_j^{(i)}) of a list of univariate polynomials.
pub fn wronskian<C: Coeff>(polys: &[UniPoly<C>]) -> UniPoly<C> {
    let k = polys.len();
    let mut rows: Vec<Vec<UniPoly<C>>> = Vec::with_capacity(k);
    let mut current: Vec<UniPoly<C>> = polys.to_vec();
    for _ in 0..k {
        rows.push(current.clone());
        current = current.iter().map(|f| f.derivative()).collect();
    }
    det_unipoly(&rows)
}

/// Order of vanishing of f at t, by repeated synthetic division.
pub fn vanish_order<C: Coeff>(f: &UniPoly<C>, t: &C) -> Option<usize> {
    f.vanish_order(t)
}

/// Rows of a rational matrix read as coefficient vectors of polynomials of
/// degree below the column count.
pub fn rows_as_polys(h: &Matrix<Rational>) -> Vec<UniPoly<Rational>> {
    (0..h.rows()).map(|i| UniPoly::from_coeffs(h.row(i).to_vec())).collect()
}

/// The Castelnuovo check: det of the stack of the k-th osculating slice at
/// each sample over an exact null-space basis of `h` agrees with the
/// Wronskian of `h`'s row polynomials up to one global nonzero scalar.
pub fn castelnuovo_check(
    h: &Matrix<Rational>,
    samples: &[Rational],
) -> Result<bool, SolverError> {
    let k = h.rows();

    if h.rank() != k {
        return Err(SolverError::RankDeficient);
    }
    let null = h.null_space();
    let l = Matrix::from_rows(null);
    Ok(castelnuovo_check_with(h, &l, samples))
}

/// Same as [`castelnuovo_check`] with a caller-provided matrix in place of
/// the null-space basis (negative controls use a wrong one).
pub fn castelnuovo_check_with(
    h: &Matrix<Rational>,
    l: &Matrix<Rational>,
    samples: &[Rational],
) -> bool {
    let k = h.rows();
    let n = h.cols();
    let wr = wronskian(&rows_as_polys(h));
    let mut ratio: Option<(Rational, Rational)> = None; // (det, wr) reference pair
    for t in samples {
        let basis = osculating_basis(&OsculationPoint::rational(t.clone()), n);
        let fk = basis.slice(k).expect("k <= n").map(|z| z.re.clone());
        let stack = fk.stack(l);
        let det = stack.det_bareiss().expect("square stack");
        let w = wr.evaluate(t);
        if det.is_zero() != w.is_zero() {
            return false;
        }
        if !w.is_zero() {
            match &ratio {
                None => ratio = Some((det, w)),
                Some((d0, w0)) => {
                    if &det * w0 != d0 * &w {
                        return false;
                    }
                }
            }
        }
    }
    // a global nonzero scalar must have been witnessed
    ratio.is_some()
}

/// Membership witness polynomial for the vanishing-order bound: the
/// determinant of the (n-k)-th osculating slice at a symbolic parameter
/// stacked over `h`, which is the Wronskian of the annihilator.
pub fn annihilator_wronskian(h: &Matrix<Rational>) -> MultiPoly<Rational> {
    let k = h.rows();
    let n = h.cols();
    // symbolic osculating slice in one variable
    let slice = Matrix::from_fn(n - k, n, |i, j| {
        if j < i {
            return MultiPoly::zero(1);
        }
        let mut coeff: i64 = 1;
        for d in 0..i {
            coeff = coeff * (j - d) as i64;
        }
        MultiPoly::from_terms(
            1,
            [(crate::algebra::Monomial(vec![(j - i) as u32]), crate::algebra::rat_int(coeff))],
        )
    });
    let hp = h.map(|c| MultiPoly::constant(1, c.clone()));
    slice.stack(&hp).det_cofactor().expect("square stack")
}
