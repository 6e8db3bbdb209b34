//! Valuations, the uniform measure and the Markov chain of states-and-cliques.

mod chain;
mod uniform;
mod valuation;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::system::SystemError;

pub use chain::{MarkovChain, Sample};
pub use uniform::{uniform_measure, UniformMeasure};
pub use valuation::{Valuation, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("weight table does not match the system's states and letters")]
    Shape,
    #[error("negative weight at state `{state}` for letter `{letter}`")]
    NegativeWeight { state: String, letter: String },
    #[error("letter `{letter}` is disabled at state `{state}` but has nonzero weight")]
    DisabledWeight { state: String, letter: String },
    #[error("valuation is not coherent at state `{state}` for commuting letters `{a}` and `{b}`")]
    Incoherent { state: String, a: String, b: String },
    #[error(
        "valuation is not probabilistic: h at state `{state}` and clique `{clique}` is {value}"
    )]
    NotProbabilistic {
        state: String,
        clique: String,
        value: String,
    },
    #[error("system is not irreducible")]
    NotIrreducible,
    #[error("kernel vector of μ(r) is not positive at state `{0}`")]
    KernelSign(String),
    #[error("no infinite execution starts from state #{0}")]
    NoInitialMass(usize),
    #[error("at least one step is required")]
    ZeroSteps,
}
