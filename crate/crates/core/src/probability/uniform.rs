use num_rational::BigRational;
use num_traits::Zero;

use super::{ProbabilityError, Valuation};
use crate::algebra::{kernel_vector, kernel_vector_exact, Real, RootResult};
use crate::policy::NumericPolicy;
use crate::system::{ConcurrentSystem, StateId};
use crate::trace::Trace;

/// Characteristic root, kernel vector of `μ(r)` and the induced valuation
/// `f_α(x) = r^{|x|} Γ(α, α·x)`.
#[derive(Debug, Clone)]
pub struct UniformMeasure<'s> {
    root: RootResult,
    kernel: Vec<Real>,
    valuation: Valuation<'s>,
}

impl<'s> UniformMeasure<'s> {
    pub fn root(&self) -> &RootResult {
        &self.root
    }

    /// `r` as a [`Real`]: exact when the root is rational.
    pub fn r(&self) -> Real {
        match self.root.exact() {
            Some(q) => Real::Exact(q.clone()),
            None => Real::Approx(self.root.to_f64()),
        }
    }

    pub fn kernel(&self) -> &[Real] {
        &self.kernel
    }

    /// Parry cocycle `Γ(α, β) = v_β / v_α`.
    pub fn gamma(&self, alpha: StateId, beta: StateId) -> Real {
        &self.kernel[beta.0] / &self.kernel[alpha.0]
    }

    pub fn gamma_table(&self) -> Vec<Vec<Real>> {
        let n = self.kernel.len();
        (0..n)
            .map(|a| (0..n).map(|b| self.gamma(StateId(a), StateId(b))).collect())
            .collect()
    }

    pub fn valuation(&self) -> &Valuation<'s> {
        &self.valuation
    }

    pub fn into_valuation(self) -> Valuation<'s> {
        self.valuation
    }

    /// `r^{|x|} Γ(α, α·x)`, zero when `α·x = ⊥`.
    pub fn closed_form(&self, alpha: StateId, x: &Trace) -> Real {
        match self.valuation.system().act(alpha, x) {
            None => Real::zero(),
            Some(beta) => &self.r().pow(x.len()) * &self.gamma(alpha, beta),
        }
    }
}

/// The uniform measure of an irreducible system.
pub fn uniform_measure<'s>(
    system: &'s ConcurrentSystem,
    policy: &NumericPolicy,
) -> Result<UniformMeasure<'s>, ProbabilityError> {
    if !system.classify().irreducible {
        return Err(ProbabilityError::NotIrreducible);
    }
    let root = system.characteristic_root(policy)?;
    if root.is_infinity() {
        return Err(ProbabilityError::NotIrreducible);
    }
    let mu = system.mobius_matrix();
    let (r, kernel): (Real, Vec<Real>) = match root.exact() {
        Some(q) => {
            let v = kernel_vector_exact(&mu.eval(q))?;
            (
                Real::Exact(q.clone()),
                v.into_iter().map(Real::Exact).collect(),
            )
        }
        None => {
            let r = root.to_f64();
            let v = kernel_vector(&mu.eval_f64(r), policy.kernel_tol)?;
            (Real::Approx(r), v.into_iter().map(Real::Approx).collect())
        }
    };
    if let Some(i) = kernel
        .iter()
        .position(|x| !x.is_nonnegative_within(0.0) || x.is_zero_within(policy.tol))
    {
        return Err(ProbabilityError::KernelSign(
            system.state_name(StateId(i)).into(),
        ));
    }
    let m = system.monoid();
    let weights = system
        .state_ids()
        .map(|alpha| {
            m.letters()
                .map(|a| match system.step(alpha, a) {
                    Some(beta) => &(&r * &kernel[beta.0]) / &kernel[alpha.0],
                    None => Real::Exact(BigRational::zero()),
                })
                .collect()
        })
        .collect();
    let valuation = Valuation::new(system, weights, policy)?;
    valuation.require_probabilistic(policy)?;
    Ok(UniformMeasure {
        root,
        kernel,
        valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn petri_system_has_constant_cocycle() {
        let s2 = fixtures::s2();
        let p = NumericPolicy::default();
        let u = uniform_measure(&s2, &p).unwrap();
        assert_eq!(u.r(), Real::ratio(1, 2));
        for row in u.gamma_table() {
            for g in row {
                assert_eq!(g, Real::from_int(1));
            }
        }
        let m = s2.monoid();
        let a0 = s2.state("α0").unwrap();
        let h = u.valuation().mobius_at(a0);
        let expect = [
            ("a", 1, 4),
            ("b", 1, 4),
            ("d", 0, 1),
            ("a·d", 1, 4),
            ("b·d", 1, 4),
        ];
        for (name, n, d) in expect {
            let c = m.clique(&name.split('·').collect::<Vec<_>>()).unwrap();
            assert_eq!(
                h[m.clique_position(c).unwrap()],
                Real::ratio(n, d),
                "{name}"
            );
        }
    }

    #[test]
    fn switch_system_lambda() {
        let s1 = fixtures::s1();
        let p = NumericPolicy::default();
        let u = uniform_measure(&s1, &p).unwrap();
        assert!((u.r().to_f64() - 0.468213).abs() < 1e-6);
        let g = u.gamma(s1.state("0000").unwrap(), s1.state("1100").unwrap());
        let lambda = (23.0 - 17f64.sqrt()).sqrt() / (4.0 * 2f64.sqrt());
        assert!((g.to_f64() - lambda).abs() < 1e-9, "{g}");
        assert!(u.valuation().null_nodes(&p).is_empty());
    }

    #[test]
    fn single_state_monoid() {
        let s = ConcurrentSystem::from_monoid(fixtures::m2());
        let p = NumericPolicy::default();
        let u = uniform_measure(&s, &p).unwrap();
        let expect = 1.0 - 2f64.sqrt() / 2.0;
        assert!((u.r().to_f64() - expect).abs() < 1e-12);
        assert!(u
            .gamma(StateId(0), StateId(0))
            .approx_eq(&Real::from_int(1), 1e-12));
    }

    #[test]
    fn reducible_systems_are_rejected() {
        let s = ConcurrentSystem::from_monoid(fixtures::m3());
        let err = uniform_measure(&s, &NumericPolicy::default()).unwrap_err();
        assert_eq!(err, ProbabilityError::NotIrreducible);
    }
}
