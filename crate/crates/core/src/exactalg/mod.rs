//! Exact arithmetic over ℚ: scalars, dense matrices and Jordan forms.

mod jordan;
mod matrix;
mod poly;
mod rational;

pub use jordan::{jordan_blocks, JordanEntry, JordanType};
pub use matrix::{jordan_block, kernel_basis, nilpotent, rank, Matrix};
pub use poly::Poly;
pub use rational::{q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("characteristic polynomial has a factor without rational roots: {factor}")]
    SpectrumNotRational { factor: Poly },
}
