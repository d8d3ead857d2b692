//! Exact arithmetic substrate: arbitrary-precision rationals, Gaussian
//! rationals, dense univariate and sparse multivariate polynomials, and
//! exact matrices with fraction-free determinants.

mod coeff;
mod matrix;
mod multipoly;
mod unipoly;

pub use coeff::{
    format_gaussian, format_rational, gaussian, parse_gaussian, parse_rational, rat, rat_int,
    Coeff, GaussianRational, ParseCoeffError, Rational,
};
pub use matrix::{det, det_bareiss, det_cofactor, minor, Matrix};
pub use multipoly::{parse_poly, parse_poly_gaussian, Monomial, MultiPoly, ParsePolyError};
pub use unipoly::UniPoly;

use thiserror::Error;

/// Errors raised by exact linear algebra.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor selection sizes differ ({rows} rows vs {cols} cols)")]
    MismatchedSelection { rows: usize, cols: usize },
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("matrix is singular")]
    Singular,
}
