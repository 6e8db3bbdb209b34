//! Deterministic concurrent systems: determinism test, dominant valuation,
//! maximal executions and boundary cardinality.

use std::collections::{HashMap, VecDeque};

use num_traits::One;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::algebra::Real;
use crate::policy::NumericPolicy;
use crate::probability::{ProbabilityError, Valuation};
use crate::system::{ConcurrentSystem, ScDigraph, ScNode, StateId, SystemError};
use crate::trace::{divisor_counts, Lasso, Letter, TraceError, TraceMonoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcsError {
    #[error("system is not deterministic: {0}")]
    NotDeterministic(String),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Probability(#[from] ProbabilityError),
}

/// Why a system fails the determinism test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeterminismWitness {
    /// Two enabled letters at `state` that do not commute.
    Dependent {
        state: StateId,
        a: Letter,
        b: Letter,
    },
    /// `Σ_α` is a clique but `α · Σ_α = ⊥`.
    FullCliqueUndefined { state: StateId },
}

impl DeterminismWitness {
    pub fn describe(&self, s: &ConcurrentSystem) -> String {
        let m = s.monoid();
        match *self {
            DeterminismWitness::Dependent { state, a, b } => format!(
                "letters `{}` and `{}` are enabled at `{}` and dependent",
                m.name(a),
                m.name(b),
                s.state_name(state)
            ),
            DeterminismWitness::FullCliqueUndefined { state } => format!(
                "`{}` · {} is undefined",
                s.state_name(state),
                m.clique_name(s.enabled_letters(state))
            ),
        }
    }
}

/// `None` when deterministic, otherwise the first failure found.
pub fn determinism_witness(s: &ConcurrentSystem) -> Option<DeterminismWitness> {
    let m = s.monoid();
    for alpha in s.state_ids() {
        let sigma: Vec<Letter> = s.enabled_letters(alpha).letters().collect();
        for (i, &a) in sigma.iter().enumerate() {
            for &b in &sigma[i + 1..] {
                if m.dependent(a, b) {
                    return Some(DeterminismWitness::Dependent { state: alpha, a, b });
                }
            }
        }
        if s.act_clique(alpha, s.enabled_letters(alpha)).is_none() {
            return Some(DeterminismWitness::FullCliqueUndefined { state: alpha });
        }
    }
    None
}

pub fn is_deterministic(s: &ConcurrentSystem) -> bool {
    determinism_witness(s).is_none()
}

/// Weight 1 on every enabled letter.
pub fn dominant_valuation<'s>(s: &'s ConcurrentSystem) -> Valuation<'s> {
    let weights = s
        .state_ids()
        .map(|alpha| {
            s.monoid()
                .letters()
                .map(|a| {
                    if s.step(alpha, a).is_some() {
                        Real::from_int(1)
                    } else {
                        Real::from_int(0)
                    }
                })
                .collect()
        })
        .collect();
    Valuation::new(s, weights, &NumericPolicy::default()).expect("dominant weights are coherent")
}

/// The maximal execution `T_α` as a lasso of `(state, clique)` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxExecution {
    pub prefix: Vec<ScNode>,
    pub cycle: Vec<ScNode>,
}

impl MaxExecution {
    pub fn lasso(&self, monoid: &TraceMonoid) -> Result<Lasso, TraceError> {
        Lasso::new(
            monoid,
            self.prefix.iter().map(|n| n.clique).collect(),
            self.cycle.iter().map(|n| n.clique).collect(),
        )
    }

    /// The first `n` nodes of the unrolled execution.
    pub fn nodes(&self, n: usize) -> Vec<ScNode> {
        let mut out: Vec<ScNode> = self.prefix.iter().take(n).copied().collect();
        if !self.cycle.is_empty() {
            out.extend(self.cycle.iter().cycle().take(n - out.len()).copied());
        }
        out
    }
}

/// Iterates `c_{i+1} = Σ_{α·c_1⋯c_i}` until a state repeats or no letter is
/// enabled.
pub fn max_execution(s: &ConcurrentSystem, alpha: StateId) -> Result<MaxExecution, DcsError> {
    if let Some(w) = determinism_witness(s) {
        return Err(DcsError::NotDeterministic(w.describe(s)));
    }
    let mut seen: HashMap<StateId, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut state = alpha;
    loop {
        if let Some(&start) = seen.get(&state) {
            let cycle = nodes.split_off(start);
            let out = MaxExecution {
                prefix: nodes,
                cycle,
            };
            out.lasso(s.monoid())?;
            return Ok(out);
        }
        let c = s.enabled_letters(state);
        if c.is_empty() {
            return Ok(MaxExecution {
                prefix: nodes,
                cycle: Vec::new(),
            });
        }
        seen.insert(state, nodes.len());
        nodes.push(ScNode { state, clique: c });
        state = s.act_clique(state, c).expect("deterministic system");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryClass {
    Empty,
    Countable,
    Uncountable,
}

impl BoundaryClass {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryClass::Empty => "empty",
            BoundaryClass::Countable => "countable",
            BoundaryClass::Uncountable => "uncountable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryCardinality {
    pub class: BoundaryClass,
    /// Only set for countable boundaries.
    pub singleton: bool,
}

impl BoundaryCardinality {
    pub fn at_most_countable(&self) -> bool {
        self.class != BoundaryClass::Uncountable
    }
}

/// Nodes reachable from `start` that can reach a cycle, and the cyclic
/// components among them.
fn infinite_core(g: &ScDigraph, start: &[usize]) -> (Vec<bool>, Vec<Vec<usize>>) {
    let n = g.len();
    let mut reach = vec![false; n];
    let mut queue: VecDeque<usize> = start.iter().copied().collect();
    for &i in start {
        reach[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        for &j in &g.successors[i] {
            if !reach[j] {
                reach[j] = true;
                queue.push_back(j);
            }
        }
    }
    let mut pg: DiGraph<usize, ()> = DiGraph::new();
    let ids: Vec<NodeIndex> = (0..n).map(|i| pg.add_node(i)).collect();
    for i in (0..n).filter(|&i| reach[i]) {
        for &j in &g.successors[i] {
            pg.add_edge(ids[i], ids[j], ());
        }
    }
    let cyclic: Vec<Vec<usize>> = tarjan_scc(&pg)
        .into_iter()
        .map(|scc| scc.into_iter().map(|x| pg[x]).collect::<Vec<usize>>())
        .filter(|scc| reach[scc[0]] && (scc.len() > 1 || g.has_edge(scc[0], scc[0])))
        .collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in (0..n).filter(|&i| reach[i]) {
        for &j in &g.successors[i] {
            preds[j].push(i);
        }
    }
    let mut core = vec![false; n];
    let mut queue: VecDeque<usize> = cyclic.iter().flatten().copied().collect();
    for &i in &queue {
        core[i] = true;
    }
    while let Some(j) = queue.pop_front() {
        for &i in &preds[j] {
            if !core[i] {
                core[i] = true;
                queue.push_back(i);
            }
        }
    }
    (core, cyclic)
}

/// Cardinality class of `∂ℳ_α`, read off the infinite paths of the digraph
/// of states-and-cliques starting at the nodes `(α, ·)`.
pub fn boundary_cardinality(s: &ConcurrentSystem, alpha: StateId) -> BoundaryCardinality {
    boundary_in(&s.sc_digraph(), alpha)
}

fn boundary_in(g: &ScDigraph, alpha: StateId) -> BoundaryCardinality {
    let start = g.initial_nodes(alpha);
    let (core, cyclic) = infinite_core(g, &start);
    if !core.iter().any(|&b| b) {
        return BoundaryCardinality {
            class: BoundaryClass::Empty,
            singleton: false,
        };
    }
    let branching = cyclic.iter().any(|scc| {
        let edges: usize = scc
            .iter()
            .map(|&i| g.successors[i].iter().filter(|j| scc.contains(j)).count())
            .sum();
        edges > scc.len()
    });
    if branching {
        return BoundaryCardinality {
            class: BoundaryClass::Uncountable,
            singleton: false,
        };
    }
    let single_start = start.iter().filter(|&&i| core[i]).count() == 1;
    let no_fork = (0..g.len())
        .filter(|&i| core[i])
        .all(|i| g.successors[i].iter().filter(|&&j| core[j]).count() == 1);
    BoundaryCardinality {
        class: BoundaryClass::Countable,
        singleton: single_start && no_fork,
    }
}

/// Conditions that are all equivalent for irreducible systems.
#[derive(Debug, Clone, PartialEq)]
pub struct DcsReport {
    pub irreducible: bool,
    pub deterministic: bool,
    pub determinism_witness: Option<String>,
    pub dominant_probabilistic: bool,
    /// Implied by the others when irreducible, never searched for.
    pub dominant_unique: Option<bool>,
    pub root_is_one: bool,
    pub one_countable: bool,
    pub every_countable: bool,
    pub one_singleton: bool,
    pub every_singleton: bool,
    pub boundary: Vec<(StateId, BoundaryCardinality)>,
    /// Whether every evaluated condition agrees; only asserted for
    /// irreducible systems.
    pub consistent: Option<bool>,
}

impl DcsReport {
    /// Every searched condition, in field order.
    pub fn conditions(&self) -> [bool; 7] {
        [
            self.deterministic,
            self.dominant_probabilistic,
            self.root_is_one,
            self.one_countable,
            self.every_countable,
            self.one_singleton,
            self.every_singleton,
        ]
    }
}

pub fn dcs_report(s: &ConcurrentSystem, policy: &NumericPolicy) -> Result<DcsReport, DcsError> {
    let irreducible = s.classify().irreducible;
    let witness = determinism_witness(s);
    let deterministic = witness.is_none();
    let dominant_probabilistic = dominant_valuation(s).is_probabilistic(policy);
    let root = s.characteristic_root(policy)?;
    let root_is_one = match root.exact() {
        Some(q) => q.is_one(),
        None => !root.is_infinity() && (root.to_f64() - 1.0).abs() <= policy.tol,
    };
    let g = s.sc_digraph();
    let boundary: Vec<(StateId, BoundaryCardinality)> =
        s.state_ids().map(|a| (a, boundary_in(&g, a))).collect();
    let one_countable = boundary.iter().any(|(_, b)| b.at_most_countable());
    let every_countable = boundary.iter().all(|(_, b)| b.at_most_countable());
    let one_singleton = boundary.iter().any(|(_, b)| b.singleton);
    let every_singleton = boundary.iter().all(|(_, b)| b.singleton);
    let mut report = DcsReport {
        irreducible,
        deterministic,
        determinism_witness: witness.map(|w| w.describe(s)),
        dominant_probabilistic,
        dominant_unique: None,
        root_is_one,
        one_countable,
        every_countable,
        one_singleton,
        every_singleton,
        boundary,
        consistent: None,
    };
    if irreducible {
        let c = report.conditions();
        report.consistent = Some(c.iter().all(|&x| x == c[0]));
        report.dominant_unique = Some(deterministic);
    }
    Ok(report)
}

/// A cycle of the digraph running through null nodes only, if any.
pub fn null_cycle(
    v: &Valuation<'_>,
    policy: &NumericPolicy,
) -> Result<Option<Vec<ScNode>>, DcsError> {
    let s = v.system();
    let g = s.sc_digraph();
    let mut null = vec![false; g.len()];
    for i in v.null_nodes(policy) {
        null[i] = true;
    }
    let mut pg: DiGraph<usize, ()> = DiGraph::new();
    let ids: Vec<NodeIndex> = (0..g.len()).map(|i| pg.add_node(i)).collect();
    for i in (0..g.len()).filter(|&i| null[i]) {
        for &j in g.successors[i].iter().filter(|&&j| null[j]) {
            pg.add_edge(ids[i], ids[j], ());
        }
    }
    for scc in tarjan_scc(&pg) {
        let members: Vec<usize> = scc.iter().map(|&x| pg[x]).collect();
        let u = members[0];
        if !null[u] || (members.len() == 1 && !g.has_edge(u, u)) {
            continue;
        }
        if g.has_edge(u, u) {
            return Ok(Some(vec![g.nodes[u]]));
        }
        // Shortest way back to `u` inside the component.
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([u]);
        'bfs: while let Some(i) = queue.pop_front() {
            for &j in &g.successors[i] {
                if !members.contains(&j) || parent.contains_key(&j) {
                    continue;
                }
                parent.insert(j, i);
                if j == u {
                    break 'bfs;
                }
                queue.push_back(j);
            }
        }
        let mut cycle = vec![u];
        let mut cur = parent[&u];
        while cur != u {
            cycle.push(cur);
            cur = parent[&cur];
        }
        cycle.reverse();
        cycle.rotate_right(1);
        return Ok(Some(cycle.into_iter().map(|i| g.nodes[i]).collect()));
    }
    Ok(None)
}

/// `p_k ≤ C(k + N − 1, N − 1)` for the divisor counts of a lasso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorBound {
    pub counts: Vec<u64>,
    pub bounds: Vec<u128>,
}

impl DivisorBound {
    pub fn holds(&self) -> bool {
        self.counts
            .iter()
            .zip(&self.bounds)
            .all(|(&p, &b)| u128::from(p) <= b)
    }
}

pub fn divisor_bound(m: &TraceMonoid, w: &Lasso, n: usize) -> DivisorBound {
    let letters = m.len() as u128;
    let bounds = (0..=n as u128)
        .map(|k| match letters {
            0 => u128::from(k == 0),
            _ => num_integer::binomial(k + letters - 1, letters - 1),
        })
        .collect();
    DivisorBound {
        counts: divisor_counts(m, w, n),
        bounds,
    }
}
