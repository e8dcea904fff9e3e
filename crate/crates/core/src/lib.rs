//! Random density matrices and their spectral statistics.
//!
//! The crate covers three families of mixed-state ensembles: the
//! Hilbert-Schmidt measure, the measures induced by partial tracing a random
//! pure state over a `K`-dimensional environment, and the Bures measure.
//! For each it provides
//!
//! - samplers for density matrices and eigenvalue vectors ([`samplers`]),
//! - exact rational values of finite-`N` moments, entropies and eigenvalue
//!   correlations of the induced measures ([`exact`]),
//! - the generating-function route to exact Bures moments through a
//!   Laguerre-type companion ensemble ([`laguerre`]),
//! - large-`N` level densities, Green functions and Pastur equations
//!   ([`asymptotics`]),
//! - Monte Carlo estimators that compare samples with the exact values
//!   ([`montecarlo`]) and a reproducible verification suite ([`suite`]).
//!
//! Everything exact is computed with arbitrary-precision rationals; floating
//! point only enters at the final evaluation of a density.

#![forbid(unsafe_code)]
// `!(x > a)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod laguerre;
pub mod montecarlo;
pub mod numerics;
pub mod output;
pub mod samplers;
pub mod suite;

pub use error::{Error, Result};
pub use numerics::poly::TruncatedPolynomial;
pub use numerics::rational::{BigRational, PiSquareValue};
pub use numerics::rng::RngStream;
pub use samplers::{DensityMatrix, EnsembleKind, EnsembleSpec, SpectrumSample};

/// Crate version, recorded in every output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
