//! Trace monoids and their combinatorics.

mod lasso;
mod mobius;
mod monoid;
mod normal_form;
mod project;

use thiserror::Error;

pub use lasso::{divisor_counts, Lasso};
pub use mobius::{mobius_inverse, mobius_transform, CliqueDigraph};
pub use monoid::{Clique, Letter, TraceMonoid, MAX_LETTERS};
pub use normal_form::Trace;
pub use project::{project_lasso, project_trace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("letter `{0}` is declared independent of itself")]
    ReflexivePair(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter `{0}` declared twice")]
    DuplicateLetter(String),
    #[error("alphabet of {0} letters exceeds the supported maximum of 16")]
    AlphabetTooLarge(usize),
    #[error("`{0}` is not a clique")]
    NotAClique(String),
    #[error("layer {0} is empty")]
    EmptyLayer(usize),
    #[error("layer {0} and its successor do not form a normal pair")]
    NotNormal(usize),
    #[error("not a divisor")]
    NotADivisor,
    #[error("monoids have different alphabets")]
    AlphabetMismatch,
    #[error("independence relations are not nested")]
    IndependenceNotNested,
    #[error("no period found for the image of the lasso")]
    PeriodNotFound,
}
