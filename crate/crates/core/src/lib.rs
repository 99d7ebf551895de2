//! Rate/MMSE trade-off machinery for codes over the scalar Gaussian channel.
//!
//! The crate is organized around the estimation-theoretic view of coded
//! transmission: a code that must keep its minimum mean-square error (MMSE)
//! below a prescribed level at one or more SNRs cannot reach point-to-point
//! capacity, and the best it can do is achieved by Gaussian superposition
//! codebooks. The modules map onto that machinery:
//!
//! * [`gaussian`] — scalar channel primitives (Gaussian-input MMSE, capacity,
//!   the q-gap function, binary entropy).
//! * [`curve`] — piecewise closed-form curves over the SNR axis.
//! * [`superposition`] — superposition designs, their exact MMSE / mutual
//!   information curves, and the single- and multi-constraint rate optima.
//! * [`finite_length`] — Fano-based MMSE lower bound for codes with a
//!   nonzero block error probability.
//! * [`disturbance`] — the mutual-information disturbance region and its
//!   comparison against the MMSE-constrained optimum.
//! * [`oracle`] — ground-truth engine for finite discrete codebooks: exact
//!   quadrature and seeded Monte Carlo estimators, plus empirical verifiers
//!   for the single-crossing property and the I-MMSE identity.
//!
//! All rates are handled in nats and all SNRs linear; unit conversion is a
//! presentation concern left to callers.

pub mod config;
pub mod curve;
pub mod disturbance;
pub mod error;
pub mod finite_length;
pub mod gaussian;
pub mod numeric;
pub mod oracle;
pub mod superposition;

pub use config::Config;
pub use error::{Error, Result};
