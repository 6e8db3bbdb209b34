/// Numeric tolerances shared by every analysis that touches floating point.
///
/// Exact (rational) computations ignore these and compare against zero
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// Zero test for Möbius values and the probabilistic-valuation check.
    pub tol: f64,
    /// Coherence of letter weights across commuting pairs.
    pub coherence_tol: f64,
    /// Pivot threshold used for numerical rank decisions.
    pub kernel_tol: f64,
    /// Target bracket width for root isolation.
    pub root_width: f64,
    /// Minimal gap for `r^a > r` to count as strict.
    pub spectral_margin: f64,
    /// Companion-matrix cross-check of the smallest modulus.
    pub modulus_tol: f64,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy {
            tol: 1e-9,
            coherence_tol: 1e-12,
            kernel_tol: 1e-9,
            root_width: 1e-12,
            spectral_margin: 1e-6,
            modulus_tol: 1e-6,
        }
    }
}

impl NumericPolicy {
    /// Default policy with the general zero tolerance replaced.
    pub fn with_tol(tol: f64) -> Self {
        NumericPolicy {
            tol,
            ..Self::default()
        }
    }
}
