//! Exact scalars, sparse matrices and truncated series.

mod dense;
mod rational;
mod series;
mod sparse;

pub use dense::{DenseMatrix, Scalarish};
pub use rational::{binomial, factorial, ParseRationalError, Rational};
pub use series::{series_inverse, series_mul, series_reexpand, Coeff, TruncatedSeries};
pub use sparse::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("series coefficients do not compose")]
    CoefficientMismatch,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
}
