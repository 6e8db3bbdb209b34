use num_traits::Zero;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ProbabilityError, Valuation};
use crate::algebra::Real;
use crate::policy::NumericPolicy;
use crate::system::{ConcurrentSystem, ScDigraph, ScNode, StateId};
use crate::trace::{Trace, TraceError};

/// The Markov chain of states-and-cliques induced by a probabilistic
/// valuation.
#[derive(Debug, Clone)]
pub struct MarkovChain {
    graph: ScDigraph,
    /// `initial[α]`: `(node, h_α(c))` over the nodes `(α, c)`.
    initial: Vec<Vec<(usize, Real)>>,
    /// Normalized rows; empty for terminal nodes.
    rows: Vec<Vec<(usize, Real)>>,
    terminal: Vec<bool>,
}

/// Output of [`MarkovChain::sample`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub nodes: Vec<ScNode>,
    /// The walk hit a terminal node before the requested length.
    pub stopped_early: bool,
}

impl Sample {
    /// The execution whose normal form is the sampled clique sequence.
    pub fn trace(&self, system: &ConcurrentSystem) -> Result<Trace, TraceError> {
        system
            .monoid()
            .trace_from_layers(self.nodes.iter().map(|n| n.clique).collect())
    }
}

impl MarkovChain {
    pub fn new(v: &Valuation<'_>, policy: &NumericPolicy) -> Result<Self, ProbabilityError> {
        v.require_probabilistic(policy)?;
        let system = v.system();
        let m = system.monoid();
        let graph = system.sc_digraph();
        let tables: Vec<Vec<Real>> = system.state_ids().map(|a| v.mobius_at(a)).collect();
        let h =
            |n: &ScNode| tables[n.state.0][m.clique_position(n.clique).expect("clique")].clone();
        let initial = system
            .state_ids()
            .map(|alpha| {
                graph
                    .initial_nodes(alpha)
                    .into_iter()
                    .map(|i| (i, h(&graph.nodes[i])))
                    .collect()
            })
            .collect();
        let mut rows = Vec::with_capacity(graph.len());
        let mut terminal = Vec::with_capacity(graph.len());
        for succ in &graph.successors {
            let raw: Vec<(usize, Real)> = succ.iter().map(|&j| (j, h(&graph.nodes[j]))).collect();
            let total = raw.iter().fold(Real::zero(), |acc, (_, w)| &acc + w);
            if total.is_zero_within(policy.tol) || !total.is_nonnegative_within(0.0) {
                rows.push(Vec::new());
                terminal.push(true);
            } else {
                rows.push(raw.into_iter().map(|(j, w)| (j, &w / &total)).collect());
                terminal.push(false);
            }
        }
        Ok(MarkovChain {
            graph,
            initial,
            rows,
            terminal,
        })
    }

    pub fn graph(&self) -> &ScDigraph {
        &self.graph
    }

    pub fn initial(&self, alpha: StateId) -> &[(usize, Real)] {
        &self.initial[alpha.0]
    }

    pub fn row(&self, node: usize) -> &[(usize, Real)] {
        &self.rows[node]
    }

    pub fn is_terminal(&self, node: usize) -> bool {
        self.terminal[node]
    }

    /// Probability that the chain started at `alpha` follows `path`.
    pub fn path_probability(&self, alpha: StateId, path: &[usize]) -> Real {
        let Some((&first, rest)) = path.split_first() else {
            return Real::from_int(1);
        };
        let lookup = |law: &[(usize, Real)], j: usize| {
            law.iter()
                .find(|(k, _)| *k == j)
                .map_or_else(Real::zero, |(_, w)| w.clone())
        };
        let mut p = lookup(&self.initial[alpha.0], first);
        let mut prev = first;
        for &j in rest {
            p = &p * &lookup(&self.rows[prev], j);
            prev = j;
        }
        p
    }

    /// A walk of `steps` nodes from `alpha`, reproducible from `seed`.
    pub fn sample(
        &self,
        alpha: StateId,
        steps: usize,
        seed: u64,
    ) -> Result<Sample, ProbabilityError> {
        if steps == 0 {
            return Err(ProbabilityError::ZeroSteps);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |law: &[(usize, Real)], rng: &mut ChaCha8Rng| -> Option<usize> {
            let w: Vec<f64> = law.iter().map(|(_, x)| x.to_f64().max(0.0)).collect();
            let dist = WeightedIndex::new(&w).ok()?;
            Some(law[dist.sample(rng)].0)
        };
        let first = draw(&self.initial[alpha.0], &mut rng)
            .ok_or(ProbabilityError::NoInitialMass(alpha.0))?;
        let mut path = vec![first];
        let mut stopped_early = false;
        while path.len() < steps {
            let cur = *path.last().expect("nonempty");
            match draw(&self.rows[cur], &mut rng) {
                Some(j) => path.push(j),
                None => {
                    stopped_early = true;
                    break;
                }
            }
        }
        Ok(Sample {
            nodes: path.into_iter().map(|i| self.graph.nodes[i]).collect(),
            stopped_early,
        })
    }
}
