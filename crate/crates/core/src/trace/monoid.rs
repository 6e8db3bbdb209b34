use std::collections::HashMap;
use std::fmt;

use super::TraceError;

/// Largest supported alphabet. Clique sets are enumerated eagerly, so the
/// bound keeps every `2^|Σ|`-sized structure small.
pub const MAX_LETTERS: usize = 16;

/// A letter, identified by its declaration index in the monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// A set of letters stored as a bitmask over declaration indices.
///
/// A `Clique` is only meaningful relative to a monoid; [`TraceMonoid::is_clique`]
/// tells whether its members are pairwise independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Clique(u32);

impl Clique {
    pub const EMPTY: Clique = Clique(0);

    #[inline]
    pub fn from_bits(bits: u32) -> Self {
        Clique(bits)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn singleton(a: Letter) -> Self {
        Clique(1 << a.0)
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        letters.into_iter().fold(Clique::EMPTY, |c, a| c.with(a))
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, a: Letter) -> bool {
        self.0 & (1 << a.0) != 0
    }

    #[inline]
    pub fn with(self, a: Letter) -> Self {
        Clique(self.0 | (1 << a.0))
    }

    #[inline]
    pub fn without(self, a: Letter) -> Self {
        Clique(self.0 & !(1 << a.0))
    }

    #[inline]
    pub fn union(self, other: Clique) -> Self {
        Clique(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Clique) -> Self {
        Clique(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Clique) -> Self {
        Clique(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Clique) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Clique) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in increasing declaration order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(Letter(i))
            }
        })
    }

    /// Smallest member, by declaration index.
    pub fn first(self) -> Option<Letter> {
        (self.0 != 0).then(|| Letter(self.0.trailing_zeros() as usize))
    }

    /// Canonical sort key: size first, then the sorted index list.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.letters().map(Letter::index).collect())
    }
}

impl PartialOrd for Clique {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clique {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

/// The trace monoid `M(Σ, I)` together with its derived clique structure.
///
/// Immutable after construction; every operation takes `&self`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMonoid {
    names: Vec<String>,
    index: HashMap<String, Letter>,
    /// `dependence[a]` holds every `b` with `(a, b) ∈ D`, including `a`.
    dependence: Vec<Clique>,
    cliques: Vec<Clique>,
    clique_pos: HashMap<Clique, usize>,
}

impl TraceMonoid {
    /// Builds the monoid from letter names and independent pairs.
    ///
    /// The independence relation is closed under symmetry. Reflexive pairs,
    /// unknown letters and duplicated names are rejected.
    pub fn new<S: AsRef<str>>(letters: &[S], independence: &[(S, S)]) -> Result<Self, TraceError> {
        if letters.len() > MAX_LETTERS {
            return Err(TraceError::AlphabetTooLarge(letters.len()));
        }
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(letters.len());
        for (i, l) in letters.iter().enumerate() {
            let name = l.as_ref().to_string();
            if index.insert(name.clone(), Letter(i)).is_some() {
                return Err(TraceError::DuplicateLetter(name));
            }
            names.push(name);
        }
        let full = if names.is_empty() {
            0
        } else {
            (u32::MAX) >> (32 - names.len())
        };
        let mut dependence = vec![Clique(full); names.len()];
        for (a, b) in independence {
            let (a, b) = (a.as_ref(), b.as_ref());
            let la = *index
                .get(a)
                .ok_or_else(|| TraceError::UnknownLetter(a.to_string()))?;
            let lb = *index
                .get(b)
                .ok_or_else(|| TraceError::UnknownLetter(b.to_string()))?;
            if la == lb {
                return Err(TraceError::ReflexivePair(a.to_string()));
            }
            dependence[la.0] = dependence[la.0].without(lb);
            dependence[lb.0] = dependence[lb.0].without(la);
        }
        Ok(Self::from_dependence(names, index, dependence))
    }

    fn from_dependence(
        names: Vec<String>,
        index: HashMap<String, Letter>,
        dependence: Vec<Clique>,
    ) -> Self {
        let n = names.len();
        let mut cliques = Vec::new();
        // Recursive extension: only ever add letters above the current maximum
        // that are independent of every member so far.
        fn extend(dep: &[Clique], n: usize, start: usize, cur: Clique, out: &mut Vec<Clique>) {
            out.push(cur);
            for i in start..n {
                let a = Letter(i);
                if cur.letters().all(|b| !dep[b.0].contains(a)) {
                    extend(dep, n, i + 1, cur.with(a), out);
                }
            }
        }
        extend(&dependence, n, 0, Clique::EMPTY, &mut cliques);
        cliques.sort();
        let clique_pos = cliques.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        TraceMonoid {
            names,
            index,
            dependence,
            cliques,
            clique_pos,
        }
    }

    /// Free monoid on the given letters.
    pub fn free<S: AsRef<str>>(letters: &[S]) -> Result<Self, TraceError> {
        Self::new::<S>(letters, &[])
    }

    /// Free commutative monoid on the given letters.
    pub fn free_commutative<S: AsRef<str>>(letters: &[S]) -> Result<Self, TraceError> {
        let names: Vec<&str> = letters.iter().map(|s| s.as_ref()).collect();
        let mut pairs = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                pairs.push((names[i], names[j]));
            }
        }
        Self::new(&names, &pairs)
    }

    /// Sub-monoid generated by the letters outside `removed`. Letters are
    /// renumbered in declaration order.
    pub fn restrict(&self, removed: Clique) -> TraceMonoid {
        let kept: Vec<Letter> = self.letters().filter(|a| !removed.contains(*a)).collect();
        let names: Vec<&str> = kept.iter().map(|a| self.name(*a)).collect();
        let mut pairs = Vec::new();
        for (i, &a) in kept.iter().enumerate() {
            for &b in &kept[i + 1..] {
                if self.independent(a, b) {
                    pairs.push((self.name(a), self.name(b)));
                }
            }
        }
        TraceMonoid::new(&names, &pairs).expect("restriction of a valid monoid")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter)
    }

    /// Every letter of the alphabet as a single mask.
    pub fn alphabet(&self) -> Clique {
        Clique::from_letters(self.letters())
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Result<Letter, TraceError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| TraceError::UnknownLetter(name.to_string()))
    }

    /// Parses a word given as letter names.
    pub fn word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Letter>, TraceError> {
        names.iter().map(|n| self.letter(n.as_ref())).collect()
    }

    /// Parses a set of letter names into a clique, checking independence.
    pub fn clique<S: AsRef<str>>(&self, names: &[S]) -> Result<Clique, TraceError> {
        let c = Clique::from_letters(self.word(names)?);
        if c.len() != names.len() {
            return Err(TraceError::NotAClique(self.clique_name(c)));
        }
        if !self.is_clique(c) {
            return Err(TraceError::NotAClique(self.clique_name(c)));
        }
        Ok(c)
    }

    #[inline]
    pub fn independent(&self, a: Letter, b: Letter) -> bool {
        !self.dependence[a.0].contains(b)
    }

    #[inline]
    pub fn dependent(&self, a: Letter, b: Letter) -> bool {
        self.dependence[a.0].contains(b)
    }

    /// Letters dependent on `a`, `a` included.
    #[inline]
    pub fn dependence_of(&self, a: Letter) -> Clique {
        self.dependence[a.0]
    }

    /// Unordered independent pairs `(a, b)` with `a < b`.
    pub fn independence_pairs(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for a in self.letters() {
            for b in self.letters().filter(|b| b.0 > a.0) {
                if self.independent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, c: Clique) -> bool {
        self.clique_pos.contains_key(&c)
    }

    /// All cliques, `ε` first, in canonical order.
    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    /// Non-empty cliques in canonical order.
    pub fn nonempty_cliques(&self) -> &[Clique] {
        &self.cliques[1..]
    }

    /// Position of `c` in [`Self::cliques`].
    pub fn clique_position(&self, c: Clique) -> Option<usize> {
        self.clique_pos.get(&c).copied()
    }

    /// `x → y`: every letter of `y` depends on some letter of `x`.
    pub fn is_normal_pair(&self, x: Clique, y: Clique) -> bool {
        y.letters()
            .all(|b| !self.dependence[b.0].intersection(x).is_empty())
    }

    /// Connectivity of the Coxeter graph `(Σ, D)`. The empty alphabet counts
    /// as reducible.
    pub fn is_irreducible(&self) -> bool {
        if self.names.is_empty() {
            return false;
        }
        let mut seen = Clique::singleton(Letter(0));
        let mut frontier = vec![Letter(0)];
        while let Some(a) = frontier.pop() {
            for b in self.dependence[a.0].difference(seen).letters() {
                seen = seen.with(b);
                frontier.push(b);
            }
        }
        seen == self.alphabet()
    }

    /// True when every pair of distinct letters commutes.
    pub fn is_commutative(&self) -> bool {
        self.letters()
            .all(|a| self.dependence[a.0] == Clique::singleton(a))
    }

    /// Human-readable clique: `ε`, `a`, or `a·c`.
    pub fn clique_name(&self, c: Clique) -> String {
        if c.is_empty() {
            return "ε".to_string();
        }
        c.letters()
            .map(|a| self.name(a))
            .collect::<Vec<_>>()
            .join("·")
    }

    /// Sorted letter names of a clique.
    pub fn clique_names(&self, c: Clique) -> Vec<String> {
        c.letters().map(|a| self.name(a).to_string()).collect()
    }
}

impl fmt::Display for TraceMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}", self.names.join(","))?;
        let pairs = self.independence_pairs();
        if !pairs.is_empty() {
            write!(f, " |")?;
            for (i, (a, b)) in pairs.iter().enumerate() {
                let sep = if i == 0 { " " } else { ", " };
                write!(
                    f,
                    "{sep}{}{}={}{}",
                    self.name(*a),
                    self.name(*b),
                    self.name(*b),
                    self.name(*a)
                )?;
            }
        }
        write!(f, "⟩")
    }
}
