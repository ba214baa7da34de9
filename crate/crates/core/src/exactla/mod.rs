//! Exact sparse linear algebra over the rationals.
//!
//! Every rank, kernel and image in the crate is computed here. There is no
//! floating point anywhere: entries are arbitrary-precision fractions and
//! subspaces are stored in a canonical reduced echelon form, so two subspaces
//! are equal exactly when their stored bases are equal.

mod matrix;
mod reduction;
mod sparse;
mod subspace;

pub use matrix::QMatrix;
pub use reduction::{reduce_columns, reduce_columns_skipping, ColumnReduction, TaggedReducer};
pub use sparse::SparseVec;
pub use subspace::Subspace;

use num_bigint::BigInt;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/1`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
