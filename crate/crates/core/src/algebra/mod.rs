//! Exact polynomial algebra, root isolation and kernels.

mod kernel;
mod matrix;
mod poly;
mod real;
mod roots;

use thiserror::Error;

pub use kernel::{kernel_vector, kernel_vector_exact};
pub use matrix::{to_f64_matrix, IntMatrix, PolyMatrix};
pub use poly::Polynomial;
pub use real::{format_f64, format_rational, parse_rational, Real};
pub use roots::{
    min_root_modulus, smallest_positive_root, ModulusCheck, QuadraticSurd, RootResult, RootValue,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division leaves a remainder")]
    InexactDivision,
    #[error("no root of {0} in (0, 1]")]
    NoRootInUnitInterval(String),
    #[error("matrix has full rank at the given tolerance")]
    FullRank,
    #[error("kernel has dimension {0}, expected 1")]
    KernelTooLarge(usize),
    #[error("matrix is not the identity at z = 0")]
    NotIdentityAtZero,
    #[error("coefficients are not integers")]
    NonIntegral,
    #[error("cannot parse `{0}` as a number")]
    BadNumber(String),
}
