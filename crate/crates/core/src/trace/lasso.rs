use std::collections::HashMap;

use super::monoid::{Clique, TraceMonoid};
use super::normal_form::Trace;
use super::TraceError;

/// Eventually periodic generalized trace: `prefix · cycle · cycle · …`.
///
/// An empty cycle encodes the finite trace `prefix`. Layers are stored in
/// normal form; [`Lasso::new`] checks every adjacent pair including the wrap
/// from the end of the cycle back to its start.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Lasso {
    prefix: Vec<Clique>,
    cycle: Vec<Clique>,
}

impl Lasso {
    pub fn new(
        monoid: &TraceMonoid,
        mut prefix: Vec<Clique>,
        cycle: Vec<Clique>,
    ) -> Result<Self, TraceError> {
        if cycle.is_empty() {
            while prefix.last().is_some_and(|c| c.is_empty()) {
                prefix.pop();
            }
        }
        for (i, c) in prefix.iter().chain(&cycle).enumerate() {
            if c.is_empty() {
                return Err(TraceError::EmptyLayer(i));
            }
            if !monoid.is_clique(*c) {
                return Err(TraceError::NotAClique(monoid.clique_name(*c)));
            }
        }
        let lasso = Lasso { prefix, cycle };
        // One full turn of the cycle past the prefix covers every adjacent pair.
        let span = lasso.prefix.len() + lasso.cycle.len() + 1;
        let layers = lasso.layers(span);
        for i in 1..layers.len() {
            if !monoid.is_normal_pair(layers[i - 1], layers[i]) {
                return Err(TraceError::NotNormal(i - 1));
            }
        }
        Ok(lasso)
    }

    /// The `ε` lasso: no prefix, no cycle.
    pub fn epsilon() -> Self {
        Lasso::default()
    }

    /// A finite trace seen as a generalized trace.
    pub fn finite(x: &Trace) -> Self {
        Lasso {
            prefix: x.layers().to_vec(),
            cycle: Vec::new(),
        }
    }

    pub fn prefix(&self) -> &[Clique] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Clique] {
        &self.cycle
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Layer `i` (0-based) of the generalized normal form; `ε` past the end of
    /// a finite lasso.
    pub fn layer(&self, i: usize) -> Clique {
        if i < self.prefix.len() {
            self.prefix[i]
        } else if self.cycle.is_empty() {
            Clique::EMPTY
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first `n` non-empty layers.
    pub fn layers(&self, n: usize) -> Vec<Clique> {
        (0..n)
            .map(|i| self.layer(i))
            .take_while(|c| !c.is_empty())
            .collect()
    }

    /// Finite trace made of the first `n` layers.
    pub fn truncate(&self, n: usize) -> Trace {
        Trace::from_layers_unchecked(self.layers(n))
    }
}

/// `p_k = #{x : x ≤ w, |x| = k}` for `k = 0..=n`.
///
/// A divisor of length `k` only touches the first `k` layers of `w`, so the
/// enumeration runs on that finite truncation, growing divisors one minimal
/// letter at a time.
pub fn divisor_counts(monoid: &TraceMonoid, w: &Lasso, n: usize) -> Vec<u64> {
    let top = w.truncate(n);
    let mut counts = Vec::with_capacity(n + 1);
    // divisor -> remaining quotient
    let mut level: HashMap<Trace, Trace> = HashMap::from([(Trace::empty(), top)]);
    for _ in 0..=n {
        counts.push(level.len() as u64);
        let mut next = HashMap::new();
        for (x, rest) in &level {
            for a in rest.first_layer().letters() {
                let grown = monoid.concat(x, &monoid.clique_trace(Clique::singleton(a)));
                next.entry(grown)
                    .or_insert_with(|| monoid.cancel_letter(a, rest).expect("first-layer letter"));
            }
        }
        level = next;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validates_wrap_pair() {
        let m2 = fixtures::m2();
        let a = m2.clique(&["a"]).unwrap();
        let b = m2.clique(&["b"]).unwrap();
        let c = m2.clique(&["c"]).unwrap();
        assert!(Lasso::new(&m2, vec![], vec![a, b]).is_ok());
        // wrap pair c → a fails: a and c commute

        assert_eq!(
            Lasso::new(&m2, vec![], vec![a, b, c]),
            Err(TraceError::NotNormal(2))
        );
        assert_eq!(
            Lasso::new(&m2, vec![a], vec![c]),
            Err(TraceError::NotNormal(0))
        );
        assert!(Lasso::new(&m2, vec![], vec![Clique::EMPTY]).is_err());
    }

    #[test]
    fn free_commutative_divisors() {
        let m = crate::trace::TraceMonoid::free_commutative(&["a", "b"]).unwrap();
        let w = Lasso::new(&m, vec![], vec![m.alphabet()]).unwrap();
        let counts = divisor_counts(&m, &w, 6);
        assert_eq!(counts, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn epsilon_lasso_divisors() {
        let m = fixtures::m1();
        assert_eq!(
            divisor_counts(&m, &Lasso::epsilon(), 4),
            vec![1, 0, 0, 0, 0]
        );
    }

    #[test]
    fn finite_lasso_layers() {
        let m = fixtures::m1();
        let x = m
            .normalize_names(&["a0", "a3", "a0", "a2", "a1", "a3", "a4"])
            .unwrap();
        let w = Lasso::finite(&x);
        assert!(w.is_finite());
        assert_eq!(w.layers(10), x.layers());
        assert_eq!(w.layer(7), Clique::EMPTY);
        // every divisor of a finite trace is counted once; total = 1 + ... sums
        let counts = divisor_counts(&m, &w, 7);
        assert_eq!(counts[7], 1);
        assert_eq!(counts[0], 1);
    }
}
