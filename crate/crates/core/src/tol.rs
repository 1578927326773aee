//! Centralized numerical tolerances.
//!
//! Every validation threshold used when constructing states, measurements and
//! distributions lives here. The defaults are tight enough to catch genuinely
//! broken inputs while accommodating the rounding that accumulates over
//! repeated tensor products and optimizer iterations. Callers that build
//! operators out of long iterative computations can relax them through
//! [`Tolerances`].

/// Hermiticity check on inputs to the eigensolver.
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in `(-ENTROPY_EIG_CLAMP, 0)` are treated as exact zeros before
/// taking logarithms.
pub const ENTROPY_EIG_CLAMP: f64 = 1e-9;

/// Joint-probability cells in `[-BORN_CLAMP, 0)` are clamped to zero.
pub const BORN_CLAMP: f64 = 1e-12;

/// Validation thresholds for constructed operators and distributions.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Max-abs deviation of a matrix from its conjugate transpose.
    pub hermitian: f64,
    /// Allowed deviation of a density operator's trace from one.
    pub trace: f64,
    /// Most negative admissible eigenvalue of a PSD operator.
    pub psd: f64,
    /// Max-abs deviation of a POVM's element sum from the identity.
    pub completeness: f64,
    /// Allowed deviation of a pure-state norm from one.
    pub norm: f64,
    /// Allowed deviation of a probability vector's sum from one.
    pub prob_sum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            trace: 1e-9,
            psd: 1e-9,
            completeness: 1e-9,
            norm: 1e-9,
            prob_sum: 1e-9,
        }
    }
}
