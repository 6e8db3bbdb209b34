use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::monoid::{Clique, TraceMonoid};
use crate::algebra::Polynomial;

/// `h(c) = Σ_{c' ⊇ c} (-1)^{|c'|-|c|} f(c')` over the clique poset.
///
/// `f` is indexed like [`TraceMonoid::cliques`].
pub fn mobius_transform<T>(monoid: &TraceMonoid, f: &[T]) -> Vec<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T>,
{
    let cliques = monoid.cliques();
    assert_eq!(f.len(), cliques.len(), "one value per clique");
    cliques
        .iter()
        .map(|&c| {
            cliques
                .iter()
                .zip(f)
                .filter(|(d, _)| c.is_subset(**d))
                .fold(T::zero(), |acc, (d, v)| {
                    if (d.len() - c.len()) % 2 == 0 {
                        acc + v.clone()
                    } else {
                        acc - v.clone()
                    }
                })
        })
        .collect()
}

/// Inverse transform: `f(c) = Σ_{c' ⊇ c} h(c')`.
pub fn mobius_inverse<T>(monoid: &TraceMonoid, h: &[T]) -> Vec<T>
where
    T: Clone + Zero + Add<Output = T>,
{
    let cliques = monoid.cliques();
    assert_eq!(h.len(), cliques.len(), "one value per clique");
    cliques
        .iter()
        .map(|&c| {
            cliques
                .iter()
                .zip(h)
                .filter(|(d, _)| c.is_subset(**d))
                .fold(T::zero(), |acc, (_, v)| acc + v.clone())
        })
        .collect()
}

/// The digraph `(ℭ, →)` of non-empty cliques and normal pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueDigraph {
    pub nodes: Vec<Clique>,
    /// Successor indices into `nodes`, ascending.
    pub successors: Vec<Vec<usize>>,
}

impl CliqueDigraph {
    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, from: Clique, to: Clique) -> bool {
        let pos = |c| self.nodes.iter().position(|n| *n == c);
        match (pos(from), pos(to)) {
            (Some(i), Some(j)) => self.successors[i].contains(&j),
            _ => false,
        }
    }
}

impl TraceMonoid {
    /// `μ(z) = Σ_{c ∈ 𝒞} (-1)^{|c|} z^{|c|}`.
    pub fn mobius_polynomial(&self) -> Polynomial {
        let mut coeffs = vec![0i64; self.len() + 1];
        for c in self.cliques() {
            let k = c.len();
            coeffs[k] += if k % 2 == 0 { 1 } else { -1 };
        }
        Polynomial::from_ints(&coeffs)
    }

    /// `λ_0..λ_n`, the number of traces of each length, from `G(z)μ(z) = 1`.
    pub fn growth_counts(&self, n: usize) -> Vec<BigInt> {
        let mu: Vec<BigInt> = self
            .mobius_polynomial()
            .coeffs()
            .iter()
            .map(|c| c.to_integer())
            .collect();
        let mut lambda: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k == 0 {
                lambda.push(BigInt::from(1));
                continue;
            }
            let mut acc = BigInt::zero();
            for j in 1..=k.min(mu.len().saturating_sub(1)) {
                acc -= &mu[j] * &lambda[k - j];
            }
            lambda.push(acc);
        }
        lambda
    }

    pub fn clique_digraph(&self) -> CliqueDigraph {
        let nodes = self.nonempty_cliques().to_vec();
        let successors = nodes
            .iter()
            .map(|&c| {
                (0..nodes.len())
                    .filter(|&j| self.is_normal_pair(c, nodes[j]))
                    .collect()
            })
            .collect();
        CliqueDigraph { nodes, successors }
    }

    /// Möbius transform of the uniform valuation `f(c) = t^{|c|}` at a
    /// rational `t`, indexed like [`Self::cliques`].
    pub fn uniform_mobius(&self, t: &BigRational) -> Vec<BigRational> {
        let f: Vec<BigRational> = self
            .cliques()
            .iter()
            .map(|c| num_traits::pow(t.clone(), c.len()))
            .collect();
        mobius_transform(self, &f)
    }

    /// Floating-point variant of [`Self::uniform_mobius`].
    pub fn uniform_mobius_f64(&self, t: f64) -> Vec<f64> {
        let f: Vec<f64> = self
            .cliques()
            .iter()
            .map(|c| t.powi(c.len().to_i32().unwrap_or(i32::MAX)))
            .collect();
        mobius_transform(self, &f)
    }
}
