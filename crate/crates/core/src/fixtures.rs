//! Reference monoids and systems.
//!
//! * `m1`: five letters `a0..a4`, `ai` and `aj` commute when `|i - j| ≥ 2`.
//! * `m2`: `⟨a, b, c, d | ac = ca, bd = db⟩`.
//! * `m3`: `⟨a, b, c | ac = ca, bc = cb⟩`.
//! * `s1`: the four-slot game on `m2`.
//! * `s2`: the two-marking system of a small 1-safe Petri net.
//! * `s3`: a nine-state irreducible deterministic system.
//! * `s4`: a four-state deterministic system that is not irreducible.

use crate::system::{ConcurrentSystem, PetriNet, PetriTransition};
use crate::trace::TraceMonoid;

pub fn m1() -> TraceMonoid {
    let letters: Vec<String> = (0..5).map(|i| format!("a{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..5 {
        for j in i + 2..5 {
            pairs.push((letters[i].clone(), letters[j].clone()));
        }
    }
    TraceMonoid::new(&letters, &pairs).expect("valid monoid")
}

pub fn m2() -> TraceMonoid {
    TraceMonoid::new(&["a", "b", "c", "d"], &[("a", "c"), ("b", "d")]).expect("valid monoid")
}

pub fn m3() -> TraceMonoid {
    TraceMonoid::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).expect("valid monoid")
}

/// Slot `i` is character `i` of the state name. Piece `k` covers slots `k`
/// and `k + 1 mod 4` and flips both when they hold the same value.
pub fn s1() -> ConcurrentSystem {
    let states = ["0000", "1100", "0011", "0110", "1001", "1111"];
    let letters = ["a", "b", "c", "d"];
    let mut entries = Vec::new();
    for s in states {
        let bits: Vec<u8> = s.bytes().collect();
        for (k, l) in letters.iter().enumerate() {
            let (i, j) = (k, (k + 1) % 4);
            if bits[i] == bits[j] {
                let mut next = bits.clone();
                let flip = if bits[i] == b'0' { b'1' } else { b'0' };
                next[i] = flip;
                next[j] = flip;
                let to = String::from_utf8(next).expect("ascii");
                let to = states.iter().find(|t| **t == to).expect("reachable state");
                entries.push((s, *l, *to));
            }
        }
    }
    ConcurrentSystem::new(m2(), &states, &entries).expect("coherent action")
}

pub fn fig6_net() -> PetriNet {
    let t = |name: &str, pre: &[&str], post: &[&str]| PetriTransition {
        name: name.into(),
        pre: pre.iter().map(|s| s.to_string()).collect(),
        post: post.iter().map(|s| s.to_string()).collect(),
    };
    PetriNet {
        places: vec!["A".into(), "B".into(), "C".into()],
        transitions: vec![
            t("a", &["A"], &["A"]),
            t("b", &["A"], &["B"]),
            t("c", &["B", "C"], &["A", "C"]),
            t("d", &["C"], &["C"]),
        ],
        initial: vec!["A".into(), "C".into()],
    }
}

pub fn s2() -> ConcurrentSystem {
    let m =
        TraceMonoid::new(&["a", "b", "c", "d"], &[("a", "d"), ("b", "d")]).expect("valid monoid");
    ConcurrentSystem::new(
        m,
        &["α0", "α1"],
        &[
            ("α0", "a", "α0"),
            ("α0", "b", "α1"),
            ("α0", "d", "α0"),
            ("α1", "c", "α0"),
            ("α1", "d", "α1"),
        ],
    )
    .expect("coherent action")
}

pub fn s3() -> ConcurrentSystem {
    let m = TraceMonoid::new(
        &["a0", "a1", "a2", "a3"],
        &[("a0", "a2"), ("a0", "a3"), ("a1", "a3")],
    )
    .expect("valid monoid");
    let states: Vec<String> = (0..9).map(|i| i.to_string()).collect();
    let table = [
        ("0", "a0", "1"),
        ("0", "a2", "2"),
        ("1", "a2", "3"),
        ("2", "a0", "3"),
        ("2", "a3", "5"),
        ("3", "a1", "4"),
        ("3", "a3", "6"),
        ("4", "a3", "7"),
        ("5", "a0", "6"),
        ("6", "a1", "7"),
        ("7", "a2", "8"),
        ("8", "a1", "0"),
    ];
    let entries: Vec<(String, String, String)> = table
        .iter()
        .map(|(f, a, t)| (f.to_string(), a.to_string(), t.to_string()))
        .collect();
    ConcurrentSystem::new(m, &states, &entries).expect("coherent action")
}

pub fn s4() -> ConcurrentSystem {
    let m = TraceMonoid::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).expect("valid monoid");
    ConcurrentSystem::new(
        m,
        &["α0", "α1", "β0", "β1"],
        &[
            ("α0", "a", "α1"),
            ("α0", "c", "β0"),
            ("α1", "b", "α0"),
            ("α1", "c", "β1"),
            ("β0", "a", "β1"),
            ("β1", "b", "β0"),
        ],
    )
    .expect("coherent action")
}

/// Every fixture system by name, monoids wrapped as single-state systems.
pub fn all_systems() -> Vec<(&'static str, ConcurrentSystem)> {
    vec![
        ("M1", ConcurrentSystem::from_monoid(m1())),
        ("M2", ConcurrentSystem::from_monoid(m2())),
        ("M3", ConcurrentSystem::from_monoid(m3())),
        ("S1", s1()),
        ("S2", s2()),
        ("S3", s3()),
        ("S4", s4()),
    ]
}
