//! Exact matrices with scalar or polynomial entries.

use std::collections::HashMap;


use super::coeff::Coeff;
use super::multipoly::MultiPoly;
use super::AlgebraError;

/// Dense row-major matrix over any exact entry type.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in stack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Matrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.at(row_idx[i], col_idx[j]).clone()
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&f).collect() }
    }
}

impl<C: Coeff> Matrix<C> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| C::zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = C::zero();
            for k in 0..self.cols {
                acc = acc + self.at(i, k).clone() * other.at(k, j).clone();
            }
            acc
        })
    }

    /// Row-echelon rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(row * m.cols + j, p * m.cols + j);
                }
            }
            let inv = C::one() / m.at(row, col).clone();
            for r in (row + 1)..m.rows {
                let factor = m.at(r, col).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.at(r, j).clone() - factor.clone() * m.at(row, j).clone();
                    m.set(r, j, v);
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse, or `Err(Singular)`.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(AlgebraError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let pinv = C::one() / a.at(col, col).clone();
            for j in 0..n {
                let v = a.at(col, j).clone() * pinv.clone();
                a.set(col, j, v);
                let w = inv.at(col, j).clone() * pinv.clone();
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j).clone() - factor.clone() * a.at(col, j).clone();
                    a.set(r, j, v);
                    let w = inv.at(r, j).clone() - factor.clone() * inv.at(col, j).clone();
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// Basis of the right null space `{v : self v = 0}`, as matrix columns
    /// gathered into rows of the returned matrix (each returned row is one
    /// null vector of length `cols`).
    pub fn null_space(&self) -> Vec<Vec<C>> {
        let mut m = self.clone();
        let n = m.cols;
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..n {
                    m.data.swap(row * n + j, p * n + j);
                }
            }
            let pinv = C::one() / m.at(row, col).clone();
            for j in 0..n {
                let v = m.at(row, j).clone() * pinv.clone();
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in 0..n {
                    let v = m.at(r, j).clone() - factor.clone() * m.at(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        for &fc in &free_cols {
            let mut v = vec![C::zero(); n];
            v[fc] = C::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m.at(r, fc).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Fraction-free Bareiss determinant for scalar entries.
    pub fn det_bareiss(&self) -> Result<C, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(C::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = C::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = ((k + 1)..n).find(|&r| !m.at(r, k).is_zero());
                match swap {
                    Some(r) => {
                        for j in 0..n {
                            m.data.swap(k * n + j, r * n + j);
                        }
                        sign = !sign;
                    }
                    None => return Ok(C::zero()),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let v = (m.at(k, k).clone() * m.at(i, j).clone()
                        - m.at(i, k).clone() * m.at(k, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
                m.set(i, k, C::zero());
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign { -d } else { d })
    }
}

impl<C: Coeff> Matrix<MultiPoly<C>> {
    /// Determinant by cofactor expansion along the first row with minors
    /// memoized on the column subset.
    pub fn det_cofactor(&self) -> Result<MultiPoly<C>, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        assert!(n <= 64, "cofactor memoization limited to 64 columns");
        let arity = if n == 0 { 0 } else { self.at(0, 0).arity() };
        if n == 0 {
            return Ok(MultiPoly::one(arity));
        }
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        let mut memo: HashMap<u64, MultiPoly<C>> = HashMap::new();
        Ok(self.det_memo(full, arity, &mut memo))
    }

    fn det_memo(&self, colmask: u64, arity: usize, memo: &mut HashMap<u64, MultiPoly<C>>) -> MultiPoly<C> {
        if colmask == 0 {
            return MultiPoly::one(arity);
        }
        if let Some(p) = memo.get(&colmask) {
            return p.clone();
        }
        let size = colmask.count_ones() as usize;
        let row = self.rows - size;
        let mut acc = MultiPoly::zero(arity);
        let mut sign_neg = false;
        for j in 0..self.cols {
            if colmask & (1 << j) == 0 {
                continue;
            }
            let entry = self.at(row, j);
            if !entry.is_zero() {
                let minor = self.det_memo(colmask & !(1 << j), arity, memo);
                let term = entry.clone() * minor;
                acc = if sign_neg { acc - term } else { acc + term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(colmask, acc.clone());
        acc
    }
}

/// Determinant of a square polynomial matrix (cofactor expansion with
/// memoized minors).
pub fn det_cofactor<C: Coeff>(m: &Matrix<MultiPoly<C>>) -> Result<MultiPoly<C>, AlgebraError> {
    m.det_cofactor()
}

/// Determinant of a square scalar matrix (fraction-free Bareiss).
pub fn det_bareiss<C: Coeff>(m: &Matrix<C>) -> Result<C, AlgebraError> {
    m.det_bareiss()
}

/// Determinant of a parametric matrix; alias of the cofactor route.
pub fn det<C: Coeff>(m: &Matrix<MultiPoly<C>>) -> Result<MultiPoly<C>, AlgebraError> {
    m.det_cofactor()
}

/// Determinant of the submatrix on `rows` x `cols`.
pub fn minor<C: Coeff>(
    m: &Matrix<MultiPoly<C>>,
    rows: &[usize],
    cols: &[usize],
) -> Result<MultiPoly<C>, AlgebraError> {
    if rows.len() != cols.len() {
        return Err(AlgebraError::MismatchedSelection { rows: rows.len(), cols: cols.len() });
    }
    if rows.iter().any(|&r| r >= m.rows()) || cols.iter().any(|&c| c >= m.cols()) {
        return Err(AlgebraError::IndexOutOfRange);
    }
    m.submatrix(rows, cols).det_cofactor()
}
