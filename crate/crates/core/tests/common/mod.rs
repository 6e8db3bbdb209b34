//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use pcs_core::probability::{MarkovChain, Valuation};
use pcs_core::system::ScNode;
use pcs_core::{Clique, ConcurrentSystem, Letter, Real, StateId, Trace, TraceMonoid};

/// Every word of length exactly `n`.
pub fn words(letters: usize, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |a| {
                    let mut v = w.clone();
                    v.push(Letter(a));
                    v
                })
            })
            .collect();
    }
    out
}

/// Distinct traces by length, `0..=n`, grown letter by letter.
pub fn traces_by_length(m: &TraceMonoid, n: usize) -> Vec<BTreeSet<Trace>> {
    let mut levels = vec![BTreeSet::from([Trace::empty()])];
    for k in 0..n {
        let mut next = BTreeSet::new();
        for x in &levels[k] {
            for a in m.letters() {
                let mut w = x.word();
                w.push(a);
                next.insert(m.normalize(&w).unwrap());
            }
        }
        levels.push(next);
    }
    levels
}

pub fn traces_up_to(m: &TraceMonoid, n: usize) -> Vec<Trace> {
    traces_by_length(m, n).into_iter().flatten().collect()
}

/// Executions from `alpha` by length, `0..=n`, each with its target state.
pub fn executions_by_length(
    s: &ConcurrentSystem,
    alpha: StateId,
    n: usize,
) -> Vec<BTreeMap<Trace, StateId>> {
    let m = s.monoid();
    let mut levels = vec![BTreeMap::from([(Trace::empty(), alpha)])];
    for k in 0..n {
        let mut next = BTreeMap::new();
        for (x, beta) in &levels[k] {
            for a in m.letters() {
                if let Some(gamma) = s.step(*beta, a) {
                    let mut w = x.word();
                    w.push(a);
                    next.insert(m.normalize(&w).unwrap(), gamma);
                }
            }
        }
        levels.push(next);
    }
    levels
}

pub fn executions_up_to(s: &ConcurrentSystem, alpha: StateId, n: usize) -> Vec<Trace> {
    executions_by_length(s, alpha, n)
        .into_iter()
        .flat_map(|l| l.into_keys())
        .collect()
}

/// All divisors of `w`, found by extending known divisors one letter at a
/// time and keeping those that still divide `w`.
pub fn divisors(m: &TraceMonoid, w: &Trace) -> BTreeSet<Trace> {
    let mut out = BTreeSet::from([Trace::empty()]);
    let mut frontier = vec![Trace::empty()];
    while let Some(d) = frontier.pop() {
        for a in m.letters() {
            let mut word = d.word();
            word.push(a);
            let e = m.normalize(&word).unwrap();
            if m.divides(&e, w) && out.insert(e.clone()) {
                frontier.push(e);
            }
        }
    }
    out
}

/// Word-level divisor test: some representative of `y` starts with a
/// representative of `x`.
pub fn divides_by_words(m: &TraceMonoid, x: &Trace, y: &Trace) -> bool {
    if x.len() > y.len() {
        return false;
    }
    words(m.len(), y.len() - x.len()).into_iter().any(|u| {
        let mut w = x.word();
        w.extend(u);
        m.normalize(&w).unwrap() == *y
    })
}

/// Paths of `height` nodes of the chain from `alpha`, with probabilities.
pub fn chain_paths(chain: &MarkovChain, alpha: StateId, height: usize) -> Vec<(Vec<usize>, Real)> {
    let mut paths: Vec<(Vec<usize>, Real)> = chain
        .initial(alpha)
        .iter()
        .map(|(i, p)| (vec![*i], p.clone()))
        .collect();
    for _ in 1..height {
        paths = paths
            .into_iter()
            .flat_map(|(path, p)| {
                let last = *path.last().unwrap();
                chain
                    .row(last)
                    .iter()
                    .map(|(j, q)| {
                        let mut next = path.clone();
                        next.push(*j);
                        (next, &p * q)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    paths
}

pub fn node_names(s: &ConcurrentSystem, nodes: &[ScNode]) -> Vec<String> {
    nodes
        .iter()
        .map(|n| s.node_name(n.state, n.clique))
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn brute_meet(m: &TraceMonoid, x: &Trace, y: &Trace) -> Trace {
    let common: Vec<Trace> = divisors(m, x)
        .intersection(&divisors(m, y))
        .cloned()
        .collect();
    let top = common.iter().map(Trace::len).max().unwrap();
    let maxima: Vec<&Trace> = common.iter().filter(|d| d.len() == top).collect();
    assert_eq!(
        maxima.len(),
        1,
        "common divisors of maximal length are unique"
    );
    for d in &common {
        assert!(m.divides(d, maxima[0]));
    }
    maxima[0].clone()
}

/// Least common upper bound among `x·u` with `|u| ≤ |y|`.
pub fn brute_join(m: &TraceMonoid, x: &Trace, y: &Trace) -> Option<Trace> {
    let mut bounds = BTreeSet::new();
    for n in 0..=y.len() {
        for u in words(m.len(), n) {
            let mut w = x.word();
            w.extend(u);
            let z = m.normalize(&w).unwrap();
            if m.divides(y, &z) {
                bounds.insert(z);
            }
        }
    }
    let least = bounds.iter().map(Trace::len).min()?;
    let minima: Vec<&Trace> = bounds.iter().filter(|z| z.len() == least).collect();
    assert_eq!(minima.len(), 1, "shortest common upper bound is unique");
    for z in &bounds {
        assert!(m.divides(minima[0], z));
    }
    Some(minima[0].clone())
}

/// `ν_α(C_1 … C_n = x)` by inclusion-exclusion over the letters that could
/// still join the first `n` layers of `x`.
pub fn layers_probability(v: &Valuation<'_>, alpha: StateId, x: &Trace) -> Real {
    let m = v.system().monoid();
    let addable: Vec<Trace> = m
        .letters()
        .map(|a| m.concat(x, &m.clique_trace(Clique::singleton(a))))
        .filter(|xa| xa.height() == x.height())
        .collect();
    let mut total = Real::zero();
    for mask in 0u32..(1 << addable.len()) {
        let mut bound = Some(x.clone());
        for (i, xa) in addable.iter().enumerate() {
            if mask & (1 << i) != 0 {
                bound = bound.and_then(|b| m.join(&b, xa));
            }
        }
        if let Some(z) = bound {
            let p = v.evaluate(alpha, &z);
            total = if mask.count_ones() % 2 == 0 {
                &total + &p
            } else {
                &total - &p
            };
        }
    }
    total
}
