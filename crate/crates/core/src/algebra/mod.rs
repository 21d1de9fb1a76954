//! Exact coefficient, polynomial, rational-function and linear algebra
//! kernels. Everything here is exact: arbitrary-precision rationals in
//! characteristic 0, residues mod p in characteristic p, no rounding
//! anywhere.

mod linalg;
mod parse;
mod poly;
mod ratfunc;
mod scalar;

pub use linalg::{ratfunc_rank, IncrementalRank, IncrementalRatRank, ScalarMat};
pub use parse::{parse_element, ElementParseError};
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;
pub use scalar::{CoeffField, Scalar};

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum AlgebraError {
    #[error("characteristic must be 0 or a prime, got {0}")]
    BadCharacteristic(u64),
    #[error("mixed characteristics {0} and {1}")]
    MixedCharacteristic(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {0} out of range (have {1} variables)")]
    BadVariable(usize, usize),
    #[error("mixed variable universes ({0} vs {1} variables)")]
    MixedArity(usize, usize),
}
