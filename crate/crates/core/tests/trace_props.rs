mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{brute_join, brute_meet, divides_by_words, divisors, traces_by_length, traces_up_to};
use pcs_core::fixtures;
use pcs_core::trace::{divisor_counts, mobius_inverse, mobius_transform, project_trace};
use pcs_core::{Lasso, Letter, Trace, TraceMonoid};

fn monoids() -> Vec<TraceMonoid> {
    let mut out = vec![fixtures::m1(), fixtures::m2(), fixtures::m3()];
    out.extend(
        fixtures::all_systems()
            .into_iter()
            .map(|(_, s)| s.monoid().clone()),
    );
    out
}

fn pick(index: usize) -> TraceMonoid {
    let mut all = vec![fixtures::m1(), fixtures::m2(), fixtures::m3()];
    all.swap_remove(index % 3)
}

fn to_word(m: &TraceMonoid, raw: &[usize]) -> Vec<Letter> {
    raw.iter().map(|&i| Letter(i % m.len())).collect()
}

/// Every word congruent to `w`, by breadth-first adjacent swaps.
fn class_of(m: &TraceMonoid, w: &[Letter]) -> HashSet<Vec<Letter>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for i in 1..u.len() {
            if m.independent(u[i - 1], u[i]) {
                let mut v = u.clone();
                v.swap(i - 1, i);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn swapping_independent_neighbours_keeps_the_normal_form(
        k in 0usize..3,
        raw in prop::collection::vec(0usize..5, 0..12),
        swaps in prop::collection::vec(0usize..12, 0..20),
    ) {
        let m = pick(k);
        let mut w = to_word(&m, &raw);
        let x = m.normalize(&w).unwrap();
        for i in swaps {
            if i + 1 < w.len() && m.independent(w[i], w[i + 1]) {
                w.swap(i, i + 1);
            }
        }
        prop_assert_eq!(m.normalize(&w).unwrap(), x.clone());
        prop_assert_eq!(m.normalize(&x.word()).unwrap(), x.clone());
        prop_assert_eq!(x.len(), raw.len());
        for pair in x.layers().windows(2) {
            prop_assert!(m.is_normal_pair(pair[0], pair[1]));
        }
    }

    #[test]
    fn concatenation_is_associative_and_additive(
        k in 0usize..3,
        a in prop::collection::vec(0usize..5, 0..6),
        b in prop::collection::vec(0usize..5, 0..6),
        c in prop::collection::vec(0usize..5, 0..6),
    ) {
        let m = pick(k);
        let (x, y, z) = (
            m.normalize(&to_word(&m, &a)).unwrap(),
            m.normalize(&to_word(&m, &b)).unwrap(),
            m.normalize(&to_word(&m, &c)).unwrap(),
        );
        let left = m.concat(&m.concat(&x, &y), &z);
        let right = m.concat(&x, &m.concat(&y, &z));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.len(), x.len() + y.len() + z.len());
        let mut w = to_word(&m, &a);
        w.extend(to_word(&m, &b));
        prop_assert_eq!(m.concat(&x, &y), m.normalize(&w).unwrap());
        prop_assert_eq!(m.left_cancel(&x, &m.concat(&x, &y)).unwrap(), y);
    }

    #[test]
    fn first_layer_is_the_set_of_possible_first_letters(
        k in 0usize..3,
        raw in prop::collection::vec(0usize..5, 0..8),
    ) {
        let m = pick(k);
        let w = to_word(&m, &raw);
        let y = m.normalize(&w).unwrap();
        let firsts: BTreeSet<Letter> = class_of(&m, &w).iter().filter_map(|u| u.first().copied()).collect();
        let layer: BTreeSet<Letter> = y.first_layer().letters().collect();
        prop_assert_eq!(&firsts, &layer);
        for a in m.letters() {
            prop_assert_eq!(m.cancel_letter(a, &y).is_some(), layer.contains(&a));
        }
    }

    #[test]
    fn divisibility_matches_word_prefixes(
        k in 0usize..3,
        a in prop::collection::vec(0usize..5, 0..4),
        b in prop::collection::vec(0usize..5, 0..5),
    ) {
        let m = pick(k);
        let x = m.normalize(&to_word(&m, &a)).unwrap();
        let y = m.normalize(&to_word(&m, &b)).unwrap();
        let xy = m.concat(&x, &y);
        prop_assert!(m.divides(&x, &xy));
        prop_assert_eq!(m.divides(&x, &y), divides_by_words(&m, &x, &y));
        prop_assert_eq!(m.divides(&y, &xy), divides_by_words(&m, &y, &xy));
    }

    #[test]
    fn meet_and_join_match_brute_force(
        k in 0usize..2,
        a in prop::collection::vec(0usize..5, 0..=5),
        b in prop::collection::vec(0usize..5, 0..=5),
    ) {
        let m = pick(k);
        let x = m.normalize(&to_word(&m, &a)).unwrap();
        let y = m.normalize(&to_word(&m, &b)).unwrap();
        prop_assert_eq!(m.meet(&x, &y), brute_meet(&m, &x, &y));
        prop_assert_eq!(m.join(&x, &y), brute_join(&m, &x, &y));
    }

    #[test]
    fn mobius_transform_round_trips(
        k in 0usize..3,
        values in prop::collection::vec(-50i64..50, 32),
    ) {
        let m = pick(k);
        let n = m.cliques().len();
        let f: Vec<BigRational> = values[..n].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        let h = mobius_transform(&m, &f);
        prop_assert_eq!(mobius_inverse(&m, &h), f.clone());
        let total: BigRational = h.iter().cloned().sum();
        prop_assert_eq!(&total, &f[0]);
        prop_assert_eq!(mobius_transform(&m, &mobius_inverse(&m, &f)), f);
    }
}

#[test]
fn meet_and_join_are_exhaustively_correct_on_the_smallest_monoid() {
    let m = fixtures::m3();
    let all = traces_up_to(&m, 4);
    for x in &all {
        for y in &all {
            assert_eq!(m.meet(x, y), brute_meet(&m, x, y), "{x:?} {y:?}");
            assert_eq!(m.join(x, y), brute_join(&m, x, y), "{x:?} {y:?}");
        }
    }
}

#[test]
fn growth_counts_equal_enumeration() {
    for m in monoids() {
        let levels = traces_by_length(&m, 8);
        let counts = m.growth_counts(8);
        for (n, level) in levels.iter().enumerate() {
            assert_eq!(counts[n], BigInt::from(level.len()), "length {n}");
        }
    }
}

#[test]
fn projection_onto_the_free_commutative_monoid_is_injective_on_divisors() {
    for m in monoids() {
        let commutative = TraceMonoid::free_commutative(m.names()).unwrap();
        for w in traces_up_to(&m, 6) {
            let divs = divisors(&m, &w);
            let images: BTreeSet<Trace> = divs
                .iter()
                .map(|x| project_trace(&m, &commutative, x).unwrap())
                .collect();
            assert_eq!(images.len(), divs.len(), "w = {}", m.trace_name(&w));
        }
    }
}

#[test]
fn projection_onto_an_intermediate_monoid_is_injective_on_divisors() {
    let m = fixtures::m2();
    let coarser =
        TraceMonoid::new(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d"), ("a", "b")]).unwrap();
    for w in traces_up_to(&m, 6) {
        let divs = divisors(&m, &w);
        let images: BTreeSet<Trace> = divs
            .iter()
            .map(|x| project_trace(&m, &coarser, x).unwrap())
            .collect();
        assert_eq!(images.len(), divs.len());
    }
}

#[test]
fn divisor_counts_of_a_lasso_match_enumeration() {
    let m = fixtures::m2();
    let ac = m.clique(&["a", "c"]).unwrap();
    let b = m.clique(&["b"]).unwrap();
    let lasso = Lasso::new(&m, vec![ac], vec![b, ac]).unwrap();
    let counts = divisor_counts(&m, &lasso, 6);
    let long = lasso.truncate(8);
    let divs = divisors(&m, &long);
    for (n, &p) in counts.iter().enumerate() {
        let brute = divs.iter().filter(|d| d.len() == n).count() as u64;
        assert_eq!(p, brute, "length {n}");
    }
}

#[test]
fn irreducibility_matches_coxeter_connectivity() {
    assert!(fixtures::m1().is_irreducible());
    assert!(fixtures::m2().is_irreducible());
    assert!(!fixtures::m3().is_irreducible());
    assert!(!TraceMonoid::free_commutative(&["a", "b"])
        .unwrap()
        .is_irreducible());
    assert!(TraceMonoid::free(&["a", "b"]).unwrap().is_irreducible());
    let m2 = fixtures::m2();
    assert!(m2.restrict(m2.clique(&["a"]).unwrap()).is_irreducible());
    assert!(!m2
        .restrict(m2.clique(&["b"]).unwrap().union(m2.clique(&["d"]).unwrap()))
        .is_irreducible());
}
