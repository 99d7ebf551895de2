//! Ground-truth engine for finite discrete codebooks over the Gaussian
//! channel.
//!
//! Everything here is either deterministic (Gauss-Hermite quadrature for
//! scalar constellations) or seeded Monte Carlo with a fixed chunking
//! schedule, so identical inputs reproduce bit-identical estimates no matter
//! how many worker threads run the chunks.

mod codebook;
mod estimator;
mod quadrature;
mod verify;

pub use codebook::{DiscreteCodebook, LayeredCodebook};
pub use estimator::{conditional_mean, mi_monte_carlo, mmse_monte_carlo, MonteCarloEstimate};
pub use quadrature::{
    constellation_of, scalar_mi_quadrature, scalar_mmse_quadrature,
    scalar_mmse_quadrature_with_order,
};
pub use verify::{
    verify_immse_identity, verify_single_crossing, verify_single_crossing_quadrature,
    CrossingReport, IdentityReport, QPoint,
};
