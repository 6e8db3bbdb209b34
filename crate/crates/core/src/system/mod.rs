//! Concurrent systems: a trace monoid acting on a finite set of states.

mod analysis;
mod digraph;
mod petri;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::trace::{Clique, Letter, Trace, TraceError, TraceMonoid};

pub use analysis::{Classification, SpectralEntry, SpectralReport};
pub use digraph::{ScDigraph, ScNode};
pub use petri::{PetriNet, PetriTransition, DEFAULT_MAX_STATES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("duplicate action entry for state `{state}` and letter `{letter}`")]
    DuplicateEntry { state: String, letter: String },
    #[error("action is not coherent at state `{state}`: `{a}` and `{b}` commute but {state}·{a}{b} ≠ {state}·{b}{a}")]
    Incoherent { state: String, a: String, b: String },
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("net is not 1-safe: firing `{transition}` at marking {marking:?} puts a second token in a place")]
    UnsafeNet {
        marking: Vec<String>,
        transition: String,
    },
    #[error("state space exceeds {0} markings")]
    TooManyStates(usize),
}

/// A trace monoid acting on the right of a finite state set, with `None`
/// standing for the sink state `⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcurrentSystem {
    monoid: TraceMonoid,
    states: Vec<String>,
    state_index: HashMap<String, StateId>,
    /// `action[α][a]`.
    action: Vec<Vec<Option<StateId>>>,
}

impl ConcurrentSystem {
    /// Builds a system from `(from, letter, to)` entries. Missing pairs map to
    /// `⊥`.
    pub fn new<S: AsRef<str>>(
        monoid: TraceMonoid,
        states: &[S],
        entries: &[(S, S, S)],
    ) -> Result<Self, SystemError> {
        let mut state_index = HashMap::new();
        let mut names = Vec::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            let s = s.as_ref().to_string();
            if state_index.insert(s.clone(), StateId(i)).is_some() {
                return Err(SystemError::DuplicateState(s));
            }
            names.push(s);
        }
        let lookup = |s: &str| {
            state_index
                .get(s)
                .copied()
                .ok_or_else(|| SystemError::UnknownState(s.to_string()))
        };
        let mut action = vec![vec![None; monoid.len()]; names.len()];
        for (from, letter, to) in entries {
            let f = lookup(from.as_ref())?;
            let a = monoid.letter(letter.as_ref())?;
            let t = lookup(to.as_ref())?;
            let slot = &mut action[f.0][a.0];
            if slot.is_some() {
                return Err(SystemError::DuplicateEntry {
                    state: from.as_ref().to_string(),
                    letter: letter.as_ref().to_string(),
                });
            }
            *slot = Some(t);
        }
        Self::from_table(monoid, names, action)
    }

    /// Validates a raw action table.
    pub fn from_table(
        monoid: TraceMonoid,
        states: Vec<String>,
        action: Vec<Vec<Option<StateId>>>,
    ) -> Result<Self, SystemError> {
        let state_index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), StateId(i)))
            .collect();
        let sys = ConcurrentSystem {
            monoid,
            states,
            state_index,
            action,
        };
        sys.check_coherence()?;
        Ok(sys)
    }

    /// The monoid acting on a single state `*`, everywhere defined.
    pub fn from_monoid(monoid: TraceMonoid) -> Self {
        let action = vec![vec![Some(StateId(0)); monoid.len()]];
        ConcurrentSystem {
            monoid,
            states: vec!["*".to_string()],
            state_index: HashMap::from([("*".to_string(), StateId(0))]),
            action,
        }
    }

    fn check_coherence(&self) -> Result<(), SystemError> {
        for alpha in self.state_ids() {
            for (a, b) in self.monoid.independence_pairs() {
                let ab = self.step(alpha, a).and_then(|s| self.step(s, b));
                let ba = self.step(alpha, b).and_then(|s| self.step(s, a));
                if ab != ba {
                    return Err(SystemError::Incoherent {
                        state: self.state_name(alpha).to_string(),
                        a: self.monoid.name(a).to_string(),
                        b: self.monoid.name(b).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn monoid(&self) -> &TraceMonoid {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0]
    }

    pub fn state(&self, name: &str) -> Result<StateId, SystemError> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| SystemError::UnknownState(name.to_string()))
    }

    /// `α · a`.
    pub fn step(&self, alpha: StateId, a: Letter) -> Option<StateId> {
        self.action[alpha.0][a.0]
    }

    pub fn act_word(&self, alpha: StateId, word: &[Letter]) -> Option<StateId> {
        word.iter().try_fold(alpha, |s, &a| self.step(s, a))
    }

    /// `α · x`, folding over any representative word.
    pub fn act(&self, alpha: StateId, x: &Trace) -> Option<StateId> {
        self.act_word(alpha, &x.word())
    }

    pub fn act_clique(&self, alpha: StateId, c: Clique) -> Option<StateId> {
        c.letters().try_fold(alpha, |s, a| self.step(s, a))
    }

    /// `Σ_α`.
    pub fn enabled_letters(&self, alpha: StateId) -> Clique {
        Clique::from_letters(
            self.monoid
                .letters()
                .filter(|&a| self.step(alpha, a).is_some()),
        )
    }

    /// `𝒞_α`, including `ε`, in the monoid's clique order.
    pub fn cliques_at(&self, alpha: StateId) -> Vec<Clique> {
        let sigma = self.enabled_letters(alpha);
        self.monoid
            .cliques()
            .iter()
            .copied()
            .filter(|c| c.is_subset(sigma) && self.act_clique(alpha, *c).is_some())
            .collect()
    }

    /// `ℭ_α`.
    pub fn nonempty_cliques_at(&self, alpha: StateId) -> Vec<Clique> {
        self.cliques_at(alpha)
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect()
    }

    /// `𝒞_{α,β}`.
    pub fn cliques_between(&self, alpha: StateId, beta: StateId) -> Vec<Clique> {
        self.cliques_at(alpha)
            .into_iter()
            .filter(|c| self.act_clique(alpha, *c) == Some(beta))
            .collect()
    }

    /// The system induced on `Σ \ removed`; states are kept as they are.
    pub fn restrict(&self, removed: Clique) -> ConcurrentSystem {
        let monoid = self.monoid.restrict(removed);
        let kept: Vec<Letter> = self
            .monoid
            .letters()
            .filter(|a| !removed.contains(*a))
            .collect();
        let action = self
            .action
            .iter()
            .map(|row| kept.iter().map(|a| row[a.0]).collect())
            .collect();
        ConcurrentSystem {
            monoid,
            states: self.states.clone(),
            state_index: self.state_index.clone(),
            action,
        }
    }

    /// All `(from, letter, to)` entries in state then letter order.
    pub fn entries(&self) -> Vec<(StateId, Letter, StateId)> {
        let mut out = Vec::new();
        for alpha in self.state_ids() {
            for a in self.monoid.letters() {
                if let Some(beta) = self.step(alpha, a) {
                    out.push((alpha, a, beta));
                }
            }
        }
        out
    }

    /// `"α0:a·d"`-style label of a node.
    pub fn node_name(&self, alpha: StateId, c: Clique) -> String {
        format!("{}:{}", self.state_name(alpha), self.monoid.clique_name(c))
    }
}

impl fmt::Display for ConcurrentSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.monoid)?;
        for (alpha, a, beta) in self.entries() {
            writeln!(
                f,
                "{} ·{} = {}",
                self.state_name(alpha),
                self.monoid.name(a),
                self.state_name(beta)
            )?;
        }
        Ok(())
    }
}
