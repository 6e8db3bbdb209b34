use num_traits::{One, Zero};

use super::ProbabilityError;
use crate::algebra::Real;
use crate::policy::NumericPolicy;
use crate::system::{ConcurrentSystem, StateId};
use crate::trace::{mobius_transform, Clique, Letter, Trace};

/// Per-state letter weights `f_α(a)`, extended multiplicatively along
/// executions.
#[derive(Debug, Clone)]
pub struct Valuation<'s> {
    system: &'s ConcurrentSystem,
    /// `weights[α][a]`.
    weights: Vec<Vec<Real>>,
}

/// A state where the Möbius transform breaks the probabilistic condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub state: StateId,
    /// `ε` when the failure is `h_α(ε) ≠ 0`.
    pub clique: Clique,
    pub value: Real,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub probabilistic: bool,
    pub witnesses: Vec<Witness>,
}

impl<'s> Valuation<'s> {
    /// Validates weights: nonnegative, zero on disabled letters, and coherent
    /// on commuting pairs, `f_α(a) f_{α·a}(b) = f_α(b) f_{α·b}(a)`.
    pub fn new(
        system: &'s ConcurrentSystem,
        weights: Vec<Vec<Real>>,
        policy: &NumericPolicy,
    ) -> Result<Self, ProbabilityError> {
        let m = system.monoid();
        let shape_ok = weights.len() == system.len() && weights.iter().all(|r| r.len() == m.len());
        if !shape_ok {
            return Err(ProbabilityError::Shape);
        }
        for alpha in system.state_ids() {
            for a in m.letters() {
                let w = &weights[alpha.0][a.0];
                if w.is_negative_exact() {
                    return Err(ProbabilityError::NegativeWeight {
                        state: system.state_name(alpha).into(),
                        letter: m.name(a).into(),
                    });
                }
                if system.step(alpha, a).is_none() && !w.is_zero() {
                    return Err(ProbabilityError::DisabledWeight {
                        state: system.state_name(alpha).into(),
                        letter: m.name(a).into(),
                    });
                }
            }
        }
        let v = Valuation { system, weights };
        for alpha in system.state_ids() {
            for (a, b) in m.independence_pairs() {
                let (Some(sa), Some(sb)) = (system.step(alpha, a), system.step(alpha, b)) else {
                    continue;
                };
                if system.step(sa, b).is_none() {
                    continue;
                }
                let ab = &v.weights[alpha.0][a.0] * &v.weights[sa.0][b.0];
                let ba = &v.weights[alpha.0][b.0] * &v.weights[sb.0][a.0];
                if !ab.approx_eq(&ba, policy.coherence_tol) {
                    return Err(ProbabilityError::Incoherent {
                        state: system.state_name(alpha).into(),
                        a: m.name(a).into(),
                        b: m.name(b).into(),
                    });
                }
            }
        }
        Ok(v)
    }

    /// Weights given by `(state, letter, value)` triples; the rest are zero.
    pub fn from_entries<S: AsRef<str>>(
        system: &'s ConcurrentSystem,
        entries: &[(S, S, Real)],
        policy: &NumericPolicy,
    ) -> Result<Self, ProbabilityError> {
        let m = system.monoid();
        let mut weights = vec![vec![Real::zero(); m.len()]; system.len()];
        for (s, l, w) in entries {
            let alpha = system.state(s.as_ref())?;
            let a = m
                .letter(l.as_ref())
                .map_err(crate::system::SystemError::from)?;
            weights[alpha.0][a.0] = w.clone();
        }
        Self::new(system, weights, policy)
    }

    /// Single-state shortcut: `f(a)` for every letter.
    pub fn from_letter_weights(
        system: &'s ConcurrentSystem,
        per_letter: &[Real],
        policy: &NumericPolicy,
    ) -> Result<Self, ProbabilityError> {
        let weights = system
            .state_ids()
            .map(|alpha| {
                system
                    .monoid()
                    .letters()
                    .map(|a| {
                        if system.step(alpha, a).is_some() {
                            per_letter[a.0].clone()
                        } else {
                            Real::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(system, weights, policy)
    }

    pub fn system(&self) -> &'s ConcurrentSystem {
        self.system
    }

    pub fn weight(&self, alpha: StateId, a: Letter) -> &Real {
        &self.weights[alpha.0][a.0]
    }

    pub fn weights(&self) -> &[Vec<Real>] {
        &self.weights
    }

    pub fn is_exact(&self) -> bool {
        self.weights.iter().flatten().all(Real::is_exact)
    }

    fn eval_word(&self, alpha: StateId, word: impl IntoIterator<Item = Letter>) -> Real {
        let mut s = alpha;
        let mut acc = Real::one();
        for a in word {
            let Some(t) = self.system.step(s, a) else {
                return Real::zero();
            };
            acc = &acc * &self.weights[s.0][a.0];
            s = t;
        }
        acc
    }

    /// `f_α(x)`; zero when `α · x = ⊥`.
    pub fn evaluate(&self, alpha: StateId, x: &Trace) -> Real {
        self.eval_word(alpha, x.word())
    }

    pub fn evaluate_clique(&self, alpha: StateId, c: Clique) -> Real {
        self.eval_word(alpha, c.letters())
    }

    /// `h_α` over every clique of the monoid, in the monoid's clique order.
    pub fn mobius_at(&self, alpha: StateId) -> Vec<Real> {
        let f: Vec<Real> = self
            .system
            .monoid()
            .cliques()
            .iter()
            .map(|c| self.evaluate_clique(alpha, *c))
            .collect();
        mobius_transform(self.system.monoid(), &f)
    }

    /// `h_α(c)`.
    pub fn mobius_value(&self, alpha: StateId, c: Clique) -> Real {
        let pos = self
            .system
            .monoid()
            .clique_position(c)
            .expect("clique of the monoid");
        self.mobius_at(alpha).swap_remove(pos)
    }

    /// `h_α(ε) = 0` and `h_α(c) ≥ 0` on `ℭ_α`, for every state.
    pub fn verdict(&self, policy: &NumericPolicy) -> Verdict {
        let m = self.system.monoid();
        let mut witnesses = Vec::new();
        for alpha in self.system.state_ids() {
            let h = self.mobius_at(alpha);
            if !h[0].is_zero_within(policy.tol) {
                witnesses.push(Witness {
                    state: alpha,
                    clique: Clique::EMPTY,
                    value: h[0].clone(),
                });
            }
            for c in self.system.nonempty_cliques_at(alpha) {
                let v = &h[m.clique_position(c).expect("clique")];
                if !v.is_nonnegative_within(policy.tol) {
                    witnesses.push(Witness {
                        state: alpha,
                        clique: c,
                        value: v.clone(),
                    });
                }
            }
        }
        Verdict {
            probabilistic: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn is_probabilistic(&self, policy: &NumericPolicy) -> bool {
        self.verdict(policy).probabilistic
    }

    pub(crate) fn require_probabilistic(
        &self,
        policy: &NumericPolicy,
    ) -> Result<(), ProbabilityError> {
        let v = self.verdict(policy);
        match v.witnesses.into_iter().next() {
            None => Ok(()),
            Some(w) => Err(ProbabilityError::NotProbabilistic {
                state: self.system.state_name(w.state).into(),
                clique: self.system.monoid().clique_name(w.clique),
                value: w.value.to_string(),
            }),
        }
    }

    /// `ν_α(C_1 = c) = h_α(c)` for `c ∈ ℭ_α`.
    pub fn first_clique_distribution(
        &self,
        alpha: StateId,
        policy: &NumericPolicy,
    ) -> Result<Vec<(Clique, Real)>, ProbabilityError> {
        self.require_probabilistic(policy)?;
        let m = self.system.monoid();
        let h = self.mobius_at(alpha);
        Ok(self
            .system
            .nonempty_cliques_at(alpha)
            .into_iter()
            .map(|c| (c, h[m.clique_position(c).expect("clique")].clone()))
            .collect())
    }

    /// `ν_α(↑x) = f_α(x)`.
    pub fn cylinder_probability(
        &self,
        alpha: StateId,
        x: &Trace,
        policy: &NumericPolicy,
    ) -> Result<Real, ProbabilityError> {
        self.require_probabilistic(policy)?;
        Ok(self.evaluate(alpha, x))
    }

    /// Nodes `(α, c)` of the digraph of states-and-cliques with `h_α(c) = 0`,
    /// as indices into [`ConcurrentSystem::sc_digraph`].
    pub fn null_nodes(&self, policy: &NumericPolicy) -> Vec<usize> {
        let g = self.system.sc_digraph();
        let m = self.system.monoid();
        let tables: Vec<Vec<Real>> = self.system.state_ids().map(|a| self.mobius_at(a)).collect();
        (0..g.len())
            .filter(|&i| {
                let n = g.nodes[i];
                tables[n.state.0][m.clique_position(n.clique).expect("clique")]
                    .is_zero_within(policy.tol)
            })
            .collect()
    }
}
