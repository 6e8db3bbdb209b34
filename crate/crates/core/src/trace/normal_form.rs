use std::fmt;

use super::monoid::{Clique, Letter, TraceMonoid};
use super::TraceError;

/// A finite trace in Cartier-Foata normal form: a normal sequence of
/// non-empty cliques. The empty sequence is `ε`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Trace {
    layers: Vec<Clique>,
}

impl Trace {
    pub fn empty() -> Self {
        Trace { layers: Vec::new() }
    }

    /// Wraps layers without checking normality. Use
    /// [`TraceMonoid::trace_from_layers`] for untrusted input.
    pub(crate) fn from_layers_unchecked(layers: Vec<Clique>) -> Self {
        Trace { layers }
    }

    pub fn layers(&self) -> &[Clique] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<Clique> {
        self.layers
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Number of letters, `|x|`.
    pub fn len(&self) -> usize {
        self.layers.iter().map(|c| c.len()).sum()
    }

    /// Number of layers.
    pub fn height(&self) -> usize {
        self.layers.len()
    }

    pub fn first_layer(&self) -> Clique {
        self.layers.first().copied().unwrap_or(Clique::EMPTY)
    }

    /// Letters occurring at least once.
    pub fn alphabet(&self) -> Clique {
        self.layers
            .iter()
            .fold(Clique::EMPTY, |acc, c| acc.union(*c))
    }

    /// A representative word: layers bottom to top, each in declaration order.
    pub fn word(&self) -> Vec<Letter> {
        self.layers.iter().flat_map(|c| c.letters()).collect()
    }

    /// Occurrence count per letter index.
    pub fn occurrences(&self, alphabet_len: usize) -> Vec<usize> {
        let mut n = vec![0; alphabet_len];
        for a in self.word() {
            n[a.index()] += 1;
        }
        n
    }
}

/// Incremental heap builder: each new piece falls onto the highest layer
/// holding a letter it depends on.
struct Heap<'m> {
    monoid: &'m TraceMonoid,
    layers: Vec<Clique>,
    /// 1-based layer of the topmost piece per letter, 0 when absent.
    tops: Vec<usize>,
}

impl<'m> Heap<'m> {
    fn new(monoid: &'m TraceMonoid) -> Self {
        Heap {
            monoid,
            layers: Vec::new(),
            tops: vec![0; monoid.len()],
        }
    }

    fn from_trace(monoid: &'m TraceMonoid, x: &Trace) -> Self {
        let mut heap = Heap::new(monoid);
        for (i, c) in x.layers.iter().enumerate() {
            for a in c.letters() {
                heap.tops[a.index()] = i + 1;
            }
        }
        heap.layers = x.layers.clone();
        heap
    }

    fn push(&mut self, a: Letter) {
        let level = self
            .monoid
            .dependence_of(a)
            .letters()
            .map(|b| self.tops[b.index()])
            .max()
            .unwrap_or(0);
        if self.layers.len() <= level {
            self.layers.push(Clique::EMPTY);
        }
        self.layers[level] = self.layers[level].with(a);
        self.tops[a.index()] = level + 1;
    }

    fn finish(self) -> Trace {
        Trace {
            layers: self.layers,
        }
    }
}

impl TraceMonoid {
    /// Cartier-Foata normal form of a word.
    pub fn normalize(&self, word: &[Letter]) -> Result<Trace, TraceError> {
        let mut heap = Heap::new(self);
        for &a in word {
            if a.index() >= self.len() {
                return Err(TraceError::UnknownLetter(format!("#{}", a.index())));
            }
            heap.push(a);
        }
        Ok(heap.finish())
    }

    /// Normal form of a word given by letter names.
    pub fn normalize_names<S: AsRef<str>>(&self, word: &[S]) -> Result<Trace, TraceError> {
        self.normalize(&self.word(word)?)
    }

    /// Validates a layer sequence as a normal form.
    pub fn trace_from_layers(&self, layers: Vec<Clique>) -> Result<Trace, TraceError> {
        for (i, c) in layers.iter().enumerate() {
            if c.is_empty() {
                return Err(TraceError::EmptyLayer(i));
            }
            if !self.is_clique(*c) {
                return Err(TraceError::NotAClique(self.clique_name(*c)));
            }
            if i > 0 && !self.is_normal_pair(layers[i - 1], *c) {
                return Err(TraceError::NotNormal(i - 1));
            }
        }
        Ok(Trace { layers })
    }

    /// A single-layer trace; `ε` for the empty clique.
    pub fn clique_trace(&self, c: Clique) -> Trace {
        if c.is_empty() {
            Trace::empty()
        } else {
            Trace { layers: vec![c] }
        }
    }

    /// `x · y`, obtained by letting the pieces of `y` fall onto `x`.
    pub fn concat(&self, x: &Trace, y: &Trace) -> Trace {
        let mut heap = Heap::from_trace(self, x);
        for a in y.word() {
            heap.push(a);
        }
        heap.finish()
    }

    /// Removes one minimal occurrence of `a` from `y`; `None` when `a ≰ y`.
    ///
    /// A letter left-divides `y` exactly when it lies in the first layer.
    pub fn cancel_letter(&self, a: Letter, y: &Trace) -> Option<Trace> {
        if !y.first_layer().contains(a) {
            return None;
        }
        let mut heap = Heap::new(self);
        let mut skipped = false;
        for b in y.word() {
            if !skipped && b == a {
                skipped = true;
                continue;
            }
            heap.push(b);
        }
        Some(heap.finish())
    }

    /// `x \ y`: the unique `z` with `x · z = y`.
    pub fn left_cancel(&self, x: &Trace, y: &Trace) -> Result<Trace, TraceError> {
        let mut rest = y.clone();
        for a in x.word() {
            rest = self
                .cancel_letter(a, &rest)
                .ok_or(TraceError::NotADivisor)?;
        }
        Ok(rest)
    }

    /// `x ≤ y` for the left divisibility order.
    pub fn divides(&self, x: &Trace, y: &Trace) -> bool {
        self.left_cancel(x, y).is_ok()
    }

    /// Greatest lower bound `x ∧ y`.
    pub fn meet(&self, x: &Trace, y: &Trace) -> Trace {
        let mut g = Heap::new(self);
        let (mut x, mut y) = (x.clone(), y.clone());
        while let Some(a) = x.first_layer().intersection(y.first_layer()).first() {
            g.push(a);
            x = self.cancel_letter(a, &x).expect("a in first layer");
            y = self.cancel_letter(a, &y).expect("a in first layer");
        }
        g.finish()
    }

    /// Least upper bound `x ∨ y`, when a common upper bound exists.
    ///
    /// With `g = x ∧ y`, the residuals `g\x` and `g\y` must use pairwise
    /// independent letters; the join is then `g · (g\x) · (g\y)`.
    pub fn join(&self, x: &Trace, y: &Trace) -> Option<Trace> {
        let g = self.meet(x, y);
        let rx = self.left_cancel(&g, x).expect("meet divides x");
        let ry = self.left_cancel(&g, y).expect("meet divides y");
        let (ax, ay) = (rx.alphabet(), ry.alphabet());
        let parallel = ax
            .letters()
            .all(|a| ay.letters().all(|b| self.independent(a, b)));
        parallel.then(|| self.concat(&self.concat(&g, &rx), &ry))
    }

    pub fn trace_name(&self, x: &Trace) -> String {
        if x.is_empty() {
            return "ε".to_string();
        }
        x.layers()
            .iter()
            .map(|c| format!("({})", self.clique_name(*c)))
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "ε");
        }
        for c in &self.layers {
            write!(f, "[")?;
            for (i, a) in c.letters().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", a.index())?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn layers(m: &TraceMonoid, spec: &[&[&str]]) -> Trace {
        m.trace_from_layers(spec.iter().map(|c| m.clique(c).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn heap_of_pieces_example() {
        let m = fixtures::m1();
        let x = m
            .normalize_names(&["a0", "a3", "a0", "a2", "a1", "a3", "a4"])
            .unwrap();
        assert_eq!(
            x,
            layers(&m, &[&["a0", "a3"], &["a0", "a2"], &["a1", "a3"], &["a4"]])
        );
        assert_eq!(x.height(), 4);
        assert_eq!(x.len(), 7);
        let y = m
            .normalize_names(&["a3", "a2", "a3", "a0", "a4", "a0", "a1"])
            .unwrap();
        assert_eq!(x, y);
        assert_eq!(m.normalize(&[]).unwrap(), Trace::empty());
    }

    #[test]
    fn concat_examples() {
        let m = fixtures::m1();
        let x = m.normalize_names(&["a0", "a3"]).unwrap();
        let y = m.normalize_names(&["a0", "a2", "a1", "a3", "a4"]).unwrap();
        let full = m
            .normalize_names(&["a0", "a3", "a0", "a2", "a1", "a3", "a4"])
            .unwrap();
        assert_eq!(m.concat(&x, &y), full);
        assert_eq!(m.concat(&x, &Trace::empty()), x);

        let m2 = fixtures::m2();
        let a = m2.normalize_names(&["a"]).unwrap();
        let c = m2.normalize_names(&["c"]).unwrap();
        assert_eq!(m2.concat(&a, &c), layers(&m2, &[&["a", "c"]]));
    }

    #[test]
    fn left_cancel_examples() {
        let m = fixtures::m1();
        let x = m.normalize_names(&["a0", "a3"]).unwrap();
        let full = m
            .normalize_names(&["a0", "a3", "a0", "a2", "a1", "a3", "a4"])
            .unwrap();
        assert_eq!(
            m.left_cancel(&x, &full).unwrap(),
            m.normalize_names(&["a0", "a2", "a1", "a3", "a4"]).unwrap()
        );
        assert_eq!(m.left_cancel(&full, &full).unwrap(), Trace::empty());

        let f = TraceMonoid::free(&["a", "b"]).unwrap();
        let a = f.normalize_names(&["a"]).unwrap();
        let b = f.normalize_names(&["b"]).unwrap();
        assert_eq!(f.left_cancel(&b, &a), Err(TraceError::NotADivisor));
    }

    #[test]
    fn meet_and_join_examples() {
        let f = TraceMonoid::free(&["a", "b"]).unwrap();
        let ab = f.normalize_names(&["a", "b"]).unwrap();
        let ba = f.normalize_names(&["b", "a"]).unwrap();
        assert_eq!(f.meet(&ab, &ba), Trace::empty());
        assert_eq!(f.meet(&ab, &ab), ab);
        let a = f.normalize_names(&["a"]).unwrap();
        let b = f.normalize_names(&["b"]).unwrap();
        assert_eq!(f.join(&a, &b), None);
        assert_eq!(f.join(&ab, &ab), Some(ab.clone()));

        let m2 = fixtures::m2();
        let ac = layers(&m2, &[&["a", "c"]]);
        let a = layers(&m2, &[&["a"]]);
        let c = layers(&m2, &[&["c"]]);
        assert_eq!(m2.meet(&ac, &a), a);
        assert_eq!(m2.join(&a, &c), Some(ac));
    }

    #[test]
    fn rejects_non_normal_layers() {
        let m2 = fixtures::m2();
        let a = m2.clique(&["a"]).unwrap();
        let c = m2.clique(&["c"]).unwrap();
        assert_eq!(
            m2.trace_from_layers(vec![a, c]),
            Err(TraceError::NotNormal(0))
        );
        assert_eq!(
            m2.trace_from_layers(vec![Clique::EMPTY]),
            Err(TraceError::EmptyLayer(0))
        );
    }
}
