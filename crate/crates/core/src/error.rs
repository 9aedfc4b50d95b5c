//! Error type shared across the crate.
//!
//! Only conditions that can arise at runtime from *valid-shaped* inputs are
//! errors; violations of documented structural preconditions (wrong degree for
//! an operation, empty inputs) panic instead, as is usual for contract
//! violations in Rust APIs. Each operation documents which applies.

use thiserror::Error;

/// Errors produced by root extraction, convolution, and Jacobian routines.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// An eigenvalue kept an imaginary part above the discard threshold after
    /// Newton polishing, so the input polynomial is not real-rooted (or is too
    /// ill-conditioned to certify as such).
    #[error(
        "polynomial is not real-rooted: eigenvalue {re} + {im}i keeps an imaginary \
         part above the discard threshold after polishing"
    )]
    NonRealRooted {
        /// Real part of the offending eigenvalue.
        re: f64,
        /// Imaginary part of the offending eigenvalue.
        im: f64,
    },

    /// The eigenvalue iteration did not converge. Does not occur for
    /// real-rooted inputs at supported degrees; kept as a defensive branch.
    #[error("eigenvalue iteration failed to converge after {iterations} sweeps")]
    NoConvergence {
        /// Number of QR sweeps spent on the stuck eigenvalue.
        iterations: usize,
    },

    /// Binary polynomial operations require both operands to share one degree.
    #[error("degree mismatch: left operand has degree {left}, right has degree {right}")]
    DegreeMismatch {
        /// Degree of the left operand.
        left: usize,
        /// Degree of the right operand.
        right: usize,
    },

    /// A root appears more than once, so the requested quantity (score vector)
    /// is undefined rather than merely infinite.
    #[error("repeated root: the minimum root gap is zero, so the score vector is undefined")]
    RepeatedRoot,

    /// Roots are too close together for a differentiable-map computation to be
    /// trustworthy.
    #[error(
        "degenerate input: minimum root gap {min_gap:.3e} is at or below the \
         differentiability guard {guard:.3e}"
    )]
    DegenerateInput {
        /// Observed minimum gap between consecutive roots.
        min_gap: f64,
        /// Guard threshold that was violated.
        guard: f64,
    },

    /// Heat flow runs forward in time only.
    #[error("negative heat-flow time t = {t}")]
    NegativeTime {
        /// The offending time argument.
        t: f64,
    },

    /// The exact permutation oracle enumerates n! terms and is capped.
    #[error("exact permutation oracle supports degree <= {max}, got {n}")]
    OracleDegreeTooLarge {
        /// Requested degree.
        n: usize,
        /// Largest supported degree.
        max: usize,
    },

    /// Interlacing is defined between root vectors of length (n, n) or
    /// (n, n-1) only.
    #[error(
        "interlacing check requires lengths (n, n) or (n, n-1): got outer {outer}, \
         inner {inner}"
    )]
    InterlacingLength {
        /// Length of the outer root vector.
        outer: usize,
        /// Length of the inner root vector.
        inner: usize,
    },

    /// A finite-difference stencil would push perturbed roots past each other,
    /// invalidating the column-by-column derivative.
    #[error(
        "finite-difference stencil would cross roots: step {h:.3e} against minimum \
         gap {min_gap:.3e}"
    )]
    StencilCrossing {
        /// Step size of the stencil.
        h: f64,
        /// Minimum gap of the unperturbed roots.
        min_gap: f64,
    },

    /// Raw coefficient input could not be normalized to a monic polynomial.
    #[error("invalid coefficients: {reason}")]
    InvalidCoefficients {
        /// Human-readable reason (empty input, zero or non-finite leading
        /// coefficient, non-finite entry).
        reason: &'static str,
    },
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
