use std::collections::HashMap;

use super::{ConcurrentSystem, StateId};
use crate::trace::Clique;

/// A node `(α, c)` of the digraph of states-and-cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScNode {
    pub state: StateId,
    pub clique: Clique,
}

/// Nodes `(α, c)` with `c ∈ ℭ_α`; edges `(α, c) → (α·c, d)` when `c → d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScDigraph {
    pub nodes: Vec<ScNode>,
    /// Successor indices into `nodes`, ascending.
    pub successors: Vec<Vec<usize>>,
    index: HashMap<ScNode, usize>,
}

impl ScDigraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn position(&self, state: StateId, clique: Clique) -> Option<usize> {
        self.index.get(&ScNode { state, clique }).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Indices of the nodes `(α, ·)`.
    pub fn initial_nodes(&self, alpha: StateId) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].state == alpha)
            .collect()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.successors[from].contains(&to)
    }
}

impl ConcurrentSystem {
    pub fn sc_digraph(&self) -> ScDigraph {
        let mut nodes = Vec::new();
        for alpha in self.state_ids() {
            for c in self.nonempty_cliques_at(alpha) {
                nodes.push(ScNode {
                    state: alpha,
                    clique: c,
                });
            }
        }
        let index: HashMap<ScNode, usize> =
            nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let m = self.monoid();
        let successors = nodes
            .iter()
            .map(|n| {
                let beta = self.act_clique(n.state, n.clique).expect("enabled clique");
                self.nonempty_cliques_at(beta)
                    .into_iter()
                    .filter(|d| m.is_normal_pair(n.clique, *d))
                    .map(|d| {
                        index[&ScNode {
                            state: beta,
                            clique: d,
                        }]
                    })
                    .collect()
            })
            .collect();
        ScDigraph {
            nodes,
            successors,
            index,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn petri_digraph() {
        let s2 = fixtures::s2();
        let g = s2.sc_digraph();
        assert_eq!(g.len(), 7);
        let m = s2.monoid();
        let a0 = s2.state("α0").unwrap();
        let ad = g.position(a0, m.clique(&["a", "d"]).unwrap()).unwrap();
        assert!(g.has_edge(ad, ad));
        let d = g.position(a0, m.clique(&["d"]).unwrap()).unwrap();
        assert!(g.has_edge(d, d));
    }

    #[test]
    fn nine_state_digraph() {
        let s3 = fixtures::s3();
        assert_eq!(s3.sc_digraph().len(), 15);
    }
}
