use std::collections::VecDeque;

use super::{ConcurrentSystem, StateId, SystemError};
use crate::algebra::{smallest_positive_root, IntMatrix, PolyMatrix, Polynomial, RootResult};
use crate::policy::NumericPolicy;
use crate::trace::{Clique, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub trivial: bool,
    pub homogeneous: bool,
    pub alive: bool,
    pub monoid_irreducible: bool,
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEntry {
    pub letter: Letter,
    pub root: RootResult,
    /// `r^a > r` by at least the policy margin.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub root: RootResult,
    pub entries: Vec<SpectralEntry>,
}

impl SpectralReport {
    pub fn all_strict(&self) -> bool {
        self.entries.iter().all(|e| e.strict)
    }
}

impl ConcurrentSystem {
    /// States reachable from `alpha` by single-letter steps, `alpha` included.
    pub fn reachable(&self, alpha: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([alpha]);
        seen[alpha.0] = true;
        while let Some(s) = queue.pop_front() {
            for a in self.monoid().letters() {
                if let Some(t) = self.step(s, a) {
                    if !seen[t.0] {
                        seen[t.0] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    pub fn classify(&self) -> Classification {
        let trivial = self.state_ids().all(|s| self.enabled_letters(s).is_empty());
        let reach: Vec<Vec<bool>> = self.state_ids().map(|s| self.reachable(s)).collect();
        let homogeneous = reach.iter().all(|r| r.iter().all(|&b| b));
        let alive = self.state_ids().all(|alpha| {
            let seen: Clique = self
                .state_ids()
                .filter(|b| reach[alpha.0][b.0])
                .fold(Clique::EMPTY, |acc, b| acc.union(self.enabled_letters(b)));
            seen == self.monoid().alphabet()
        });
        let monoid_irreducible = self.monoid().is_irreducible();
        Classification {
            trivial,
            homogeneous,
            alive,
            monoid_irreducible,
            irreducible: !trivial && homogeneous && alive && monoid_irreducible,
        }
    }

    /// `μ_{α,β}(z) = Σ_{c ∈ 𝒞_{α,β}} (-1)^{|c|} z^{|c|}`.
    pub fn mobius_matrix(&self) -> PolyMatrix {
        let n = self.len();
        let mut m = PolyMatrix::zeros(n);
        for alpha in self.state_ids() {
            let mut row: Vec<Vec<i64>> = vec![vec![0; self.monoid().len() + 1]; n];
            for c in self.cliques_at(alpha) {
                let beta = self.act_clique(alpha, c).expect("enabled clique");
                let k = c.len();
                row[beta.0][k] += if k % 2 == 0 { 1 } else { -1 };
            }
            for (beta, coeffs) in row.iter().enumerate() {
                m.set(alpha.0, beta, Polynomial::from_ints(coeffs));
            }
        }
        m
    }

    /// `θ(z) = det μ(z)`.
    pub fn theta(&self) -> Polynomial {
        self.mobius_matrix().det()
    }

    pub fn characteristic_root(&self, policy: &NumericPolicy) -> Result<RootResult, SystemError> {
        Ok(smallest_positive_root(&self.theta(), policy)?)
    }

    /// `G_0 .. G_n`; entry `(α, β)` of `G_k` counts executions of length `k`
    /// from `α` to `β`.
    pub fn growth_matrix_counts(&self, n: usize) -> Vec<IntMatrix> {
        self.mobius_matrix()
            .series_inverse_coeffs(n)
            .expect("Möbius matrices are integral and the identity at 0")
    }

    /// `r^a` for every single-letter restriction.
    pub fn spectral_check(&self, policy: &NumericPolicy) -> Result<SpectralReport, SystemError> {
        let root = self.characteristic_root(policy)?;
        let r = root.to_f64();
        let mut entries = Vec::new();
        for a in self.monoid().letters() {
            let sub = self.restrict(Clique::singleton(a));
            let ra = sub.characteristic_root(policy)?;
            let strict = if ra.is_infinity() {
                !root.is_infinity()
            } else {
                ra.to_f64() > r + policy.spectral_margin
            };
            entries.push(SpectralEntry {
                letter: a,
                root: ra,
                strict,
            });
        }
        Ok(SpectralReport { root, entries })
    }
}
