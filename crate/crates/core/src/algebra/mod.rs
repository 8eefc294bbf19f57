//! Exact arithmetic in Q, Q[t] and Q(t), and dense linear algebra over Q(t).

mod matrix;
mod poly;
mod ratfunc;

pub use matrix::{FieldMatrix, Rref};
pub use poly::Polynomial;
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational numbers, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("expected {} entries for a {}x{} matrix, found {found}", .expected.0 * .expected.1, .expected.0, .expected.1)]
    Shape { expected: (usize, usize), found: usize },
    #[error("exponent out of range")]
    ExponentOverflow,
}
