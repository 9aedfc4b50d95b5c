//! Finite free probability for real-rooted polynomials.
//!
//! The root multiset of a degree-`n` monic real-rooted polynomial behaves in
//! many ways like an `n`-point discretization of a probability density, and
//! this crate implements the dictionary:
//!
//! | density concept | polynomial counterpart | here |
//! |---|---|---|
//! | sum of independent variables | finite free additive convolution | [`convolve`] |
//! | adding a Gaussian | heat flow | [`heat_flow`], [`heat_flow_operator`] |
//! | score function | log-derivative field of the roots | [`score`] |
//! | Fisher information | normalized score energy | [`fisher`] |
//! | differential entropy | mean log root gap | [`entropy`] |
//! | entropy power | exponentiated entropy | [`entropy_power`] |
//! | Gaussian | Hermite polynomial | [`hermite`], [`hermite_normalized`] |
//!
//! With this normalization the classical information inequalities hold
//! verbatim: Fisher information is monotone under the (variance-normalized)
//! monic derivative, entropy power is superadditive under convolution,
//! entropy grows along the heat flow at half the Fisher information, and
//! every one of them is tight exactly on the Hermite family. The
//! [`verify`] module packages seeded randomized checks of each inequality;
//! the [`jacobian`] module exposes the derivative and convolution maps in
//! root coordinates together with their (doubly stochastic) Jacobians,
//! through which scores transport linearly.
//!
//! # Example
//!
//! ```
//! use fflab_core::{convolve, entropy_power, fisher, real_roots, Polynomial, RootVector};
//!
//! let p = Polynomial::from_roots(&RootVector::new(vec![2.0, 0.0, -2.0]));
//! let q = Polynomial::from_roots(&RootVector::new(vec![1.0, 0.0, -1.0]));
//! let roots_p = real_roots(&p).unwrap();
//! let roots_q = real_roots(&q).unwrap();
//! let roots_c = real_roots(&convolve(&p, &q).unwrap()).unwrap();
//!
//! // Inverse Fisher information is superadditive under convolution…
//! let stam = 1.0 / fisher(&roots_c).unwrap()
//!     - 1.0 / fisher(&roots_p).unwrap()
//!     - 1.0 / fisher(&roots_q).unwrap();
//! assert!(stam >= 0.0);
//!
//! // …and so is entropy power.
//! let epi = entropy_power(&roots_c).unwrap()
//!     - entropy_power(&roots_p).unwrap()
//!     - entropy_power(&roots_q).unwrap();
//! assert!(epi >= 0.0);
//! ```
//!
//! # Crate layout
//!
//! - [`poly`]: monic polynomials in signed-coefficient form, evaluation,
//!   monic derivative, affine root changes, Hermite family.
//! - [`roots`]: sorted root vectors and balanced companion-matrix root
//!   extraction.
//! - [`conv`]: the additive convolution (with an exact big-rational
//!   permutation-average oracle for cross-checking) and the heat flows.
//! - [`info`]: score, Fisher information, entropy, entropy power, and the
//!   closed-form Hermite entropy and per-degree entropy defect constant.
//! - [`jacobian`]: derivative and convolution maps in root coordinates,
//!   their analytic and finite-difference Jacobians, and small dense
//!   symmetric-eigen/SVD helpers for studying them.
//! - [`verify`]: seeded, reproducible randomized checks of the six
//!   information inequalities, reporting per-trial margins.
//! - [`error`]: the shared error type.
//!
//! # `no_std`
//!
//! The crate is `no_std + alloc` compatible: disable default features and
//! float math routes through `libm`. The `std` feature (default) enables
//! platform float intrinsics and wall-clock timings inside [`verify`]
//! reports.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]
// Dense matrix kernels read more clearly with explicit index arithmetic than
// with iterator adapters over row slices.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod conv;
pub mod error;
pub mod info;
pub mod jacobian;
pub mod poly;
pub mod roots;
pub mod verify;

pub use conv::{convolve, convolve_oracle, heat_flow, heat_flow_operator, unit_variance_flow};
pub use error::{Error, Result};
pub use info::{
    c_constant, entropy, entropy_from_integral, entropy_power, fisher, hermite_entropy,
    log_discriminant, score, DEFAULT_INTEGRAL_BUDGET, DEFAULT_INTEGRAL_T_MAX,
};
pub use jacobian::{
    convolution_map_fd_jacobian, convolution_roots, cosine_alignment, derivative_map_fd_jacobian,
    derivative_roots, differentiator_matrix, fd_jacobian, gauss_lucas_matrix, svd,
    symmetric_eigen, Matrix, Svd,
};
pub use poly::{hermite, hermite_normalized, Moments, Polynomial};
pub use verify::{
    check_debruijn, check_entropy_monotonicity, check_epi, check_fisher_monotonicity, check_lieb,
    check_stam, run_suite, CheckConfig, CheckReport, Ensemble, Suite, ALL_SUITES, DEGENERATE_GAP,
};
pub use roots::{is_interlacing, real_roots, RootVector};
