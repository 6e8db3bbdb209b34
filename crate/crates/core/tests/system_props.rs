mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{divisors, executions_by_length, executions_up_to};
use pcs_core::system::ScDigraph;
use pcs_core::{fixtures, Clique, ConcurrentSystem, Letter, NumericPolicy, StateId, Trace};

fn systems() -> Vec<(&'static str, ConcurrentSystem)> {
    fixtures::all_systems()
}

/// Traces spelled by the node paths of `height` nodes from `alpha`.
fn path_traces(s: &ConcurrentSystem, g: &ScDigraph, alpha: StateId, height: usize) -> Vec<Trace> {
    let m = s.monoid();
    let mut paths: Vec<Vec<usize>> = g
        .initial_nodes(alpha)
        .into_iter()
        .map(|i| vec![i])
        .collect();
    for _ in 1..height {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                g.successors[last].iter().map(move |&j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    paths
        .into_iter()
        .map(|p| {
            let layers: Vec<Clique> = p.iter().map(|&i| g.nodes[i].clique).collect();
            m.trace_from_layers(layers).unwrap()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_composes_along_concatenation(
        k in 0usize..7,
        start in 0usize..9,
        a in prop::collection::vec(0usize..6, 0..8),
        b in prop::collection::vec(0usize..6, 0..8),
    ) {
        let (_, s) = &systems()[k];
        let m = s.monoid();
        let alpha = StateId(start % s.len());
        let u: Vec<Letter> = a.iter().map(|&i| Letter(i % m.len())).collect();
        let v: Vec<Letter> = b.iter().map(|&i| Letter(i % m.len())).collect();
        let x = m.normalize(&u).unwrap();
        let y = m.normalize(&v).unwrap();
        let whole = s.act(alpha, &m.concat(&x, &y));
        let stepwise = s.act(alpha, &x).and_then(|beta| s.act(beta, &y));
        prop_assert_eq!(whole, stepwise);
        prop_assert_eq!(s.act(alpha, &x), s.act_word(alpha, &u));
    }
}

#[test]
fn executions_are_closed_under_divisors() {
    for (name, s) in systems() {
        for alpha in s.state_ids() {
            let execs: BTreeSet<Trace> = executions_up_to(&s, alpha, 5).into_iter().collect();
            for x in &execs {
                for d in divisors(s.monoid(), x) {
                    assert!(
                        execs.contains(&d),
                        "{name}: divisor of an execution is an execution"
                    );
                }
            }
        }
    }
}

#[test]
fn growth_matrices_count_executions() {
    for (name, s) in systems() {
        let g = s.growth_matrix_counts(8);
        for alpha in s.state_ids() {
            let levels = executions_by_length(&s, alpha, 8);
            for (k, level) in levels.iter().enumerate() {
                for beta in s.state_ids() {
                    let n = level.values().filter(|t| **t == beta).count();
                    assert_eq!(
                        g[k][alpha.index()][beta.index()],
                        BigInt::from(n),
                        "{name} length {k}"
                    );
                }
            }
        }
    }
}

#[test]
fn digraph_paths_are_the_executions_by_height() {
    for (name, s) in systems() {
        let g = s.sc_digraph();
        let widest = s.monoid().cliques().iter().map(|c| c.len()).max().unwrap();
        for alpha in s.state_ids() {
            let execs = executions_up_to(&s, alpha, 3 * widest);
            for height in 1..=3 {
                let spelled = path_traces(&s, &g, alpha, height);
                let distinct: BTreeSet<Trace> = spelled.iter().cloned().collect();
                assert_eq!(
                    distinct.len(),
                    spelled.len(),
                    "{name}: paths spell distinct traces"
                );
                let expected: BTreeSet<Trace> = execs
                    .iter()
                    .filter(|x| x.height() == height)
                    .cloned()
                    .collect();
                assert_eq!(distinct, expected, "{name} height {height}");
            }
        }
    }
}

#[test]
fn digraph_edges_follow_the_action() {
    for (_, s) in systems() {
        let g = s.sc_digraph();
        let m = s.monoid();
        for (i, n) in g.nodes.iter().enumerate() {
            assert!(s.act_clique(n.state, n.clique).is_some());
            let beta = s.act_clique(n.state, n.clique).unwrap();
            for (j, t) in g.nodes.iter().enumerate() {
                let expected = t.state == beta && m.is_normal_pair(n.clique, t.clique);
                assert_eq!(g.has_edge(i, j), expected);
            }
        }
    }
}

#[test]
fn single_letter_restrictions_raise_the_root() {
    let policy = NumericPolicy::default();
    let named = systems();
    for (name, s) in named
        .iter()
        .filter(|(n, _)| ["S1", "S2", "M1", "M2"].contains(n))
    {
        let rep = s.spectral_check(&policy).unwrap();
        assert!(rep.all_strict(), "{name}");
        for e in &rep.entries {
            assert!(
                e.root.is_infinity() || e.root.to_f64() >= rep.root.to_f64() + 1e-6,
                "{name}"
            );
        }
    }
    let s3 = fixtures::s3();
    let rep = s3.spectral_check(&policy).unwrap();
    assert!(rep.entries.iter().all(|e| e.root.is_infinity()));
}

#[test]
fn classification_of_the_fixtures() {
    let irreducible: Vec<&str> = systems()
        .iter()
        .filter(|(_, s)| s.classify().irreducible)
        .map(|(n, _)| *n)
        .collect();
    assert_eq!(irreducible, ["M1", "M2", "S1", "S2", "S3"]);
    assert!(!fixtures::m3().is_irreducible());
    let s4 = fixtures::s4().classify();
    assert!(!s4.trivial);
    assert!(!s4.homogeneous);
}
