//! Centralized numeric policy.
//!
//! Every tolerance used by the crate lives here so that tests can tighten or
//! loosen them uniformly instead of scattering magic numbers.

/// Tolerances governing validation and comparison throughout the crate.
#[derive(Debug, Clone, Copy)]
pub struct NumericPolicy {
    /// Max entrywise |M - M^dag| for a matrix to count as Hermitian.
    pub hermiticity: f64,
    /// Trace-one and partial-sum slack for states and spectra.
    pub trace: f64,
    /// Negative-eigenvalue clipping threshold for spectra (absorbs expm error).
    pub eigenvalue_clip: f64,
    /// Relative Frobenius threshold for eigendecomposition residuals.
    pub reconstruction: f64,
    /// Jacobi sweep convergence: off-diagonal Frobenius < jacobi_rel * ||M||_F.
    pub jacobi_rel: f64,
    /// Tie tolerance for stable sorting of near-degenerate eigenvalues.
    pub tie: f64,
    /// Second-difference slack for the jump-rate concavity test.
    pub concavity: f64,
    /// Default majorization verdict tolerance (strict, counterexample grade).
    pub verdict_strict: f64,
    /// Majorization tolerance absorbing expm error (Monte-Carlo grade).
    pub verdict_loose: f64,
    /// Max-norm slack for T-transform chain round trips.
    pub witness: f64,
}

impl NumericPolicy {
    pub const fn default_policy() -> Self {
        NumericPolicy {
            hermiticity: 1e-10,
            trace: 1e-10,
            eigenvalue_clip: 1e-10,
            reconstruction: 1e-10,
            jacobi_rel: 1e-13,
            tie: 1e-12,
            concavity: 1e-12,
            verdict_strict: 1e-10,
            verdict_loose: 1e-9,
            witness: 1e-9,
        }
    }
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self::default_policy()
    }
}

/// The policy used by all operations unless a caller overrides a tolerance.
pub const POLICY: NumericPolicy = NumericPolicy::default_policy();
