//! Analytic toolchain for probabilistic concurrent systems under trace-monoid
//! semantics.
//!
//! The crate is layered bottom-up:
//!
//! * [`trace`]: trace monoids, cliques, Cartier-Foata normal forms, the
//!   divisibility lattice, Möbius polynomial and growth counts.
//! * [`algebra`]: exact rational polynomials, polynomial matrices,
//!   determinants, root isolation and kernels.
//! * [`system`]: concurrent systems acting on a finite state set, the digraph
//!   of states-and-cliques, Möbius matrices and characteristic roots, Petri-net
//!   ingestion.
//! * [`probability`]: valuations, Möbius transforms per state, the uniform
//!   measure, the Markov chain of states-and-cliques and sampling.
//! * [`dcs`]: deterministic concurrent systems and their classification.
//!
//! [`io`] holds the JSON document schemas, [`dot`] renders Graphviz output and
//! [`fixtures`] ships the reference monoids and systems.

pub mod algebra;
pub mod dcs;
pub mod dot;
pub mod fixtures;
pub mod io;
pub mod policy;
pub mod probability;
pub mod system;
pub mod trace;

pub use algebra::{PolyMatrix, Polynomial, Real, RootResult};
pub use policy::NumericPolicy;
pub use system::{ConcurrentSystem, StateId};
pub use trace::{Clique, Lasso, Letter, Trace, TraceMonoid};
