//! Numerical policy knobs shared across the crate.
//!
//! Every tolerance that affects a verdict or a reported error budget lives
//! here, so a run can be tightened or relaxed in one place.

/// Residual above which a closed-form inverse falls back to bisection.
pub const INVERSE_RESIDUAL_TOL: f64 = 1e-12;
/// Residual target for the bisection fallback.
pub const BISECTION_RESIDUAL_TOL: f64 = 1e-14;

/// Tolerances and budgets used by the verifiers and numerical routines.
#[derive(Debug, Clone)]
pub struct Config {
    /// Multiplier on standard errors for statistical verdicts. A deviation is
    /// only called significant beyond `sigma_policy` combined standard errors.
    pub sigma_policy: f64,
    /// Absolute tolerance target for adaptive trapezoidal integration in the
    /// I-MMSE identity checks.
    pub integral_tol: f64,
    /// Hard cap on integrand evaluations for one adaptive integration.
    pub integral_node_cap: usize,
    /// Gauss-Hermite order for the deterministic scalar oracles.
    pub gauss_hermite_order: usize,
    /// Residual above which a closed-form inverse falls back to bisection.
    pub inverse_residual_tol: f64,
    /// Residual target for the bisection fallback.
    pub bisection_residual_tol: f64,
    /// Cap on `codebook size x samples x grid nodes` for exact-posterior
    /// identity checks; larger requests are rejected as infeasible.
    pub eval_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            sigma_policy: 3.0,
            integral_tol: 1e-6,
            integral_node_cap: 1 << 16,
            gauss_hermite_order: 160,
            inverse_residual_tol: INVERSE_RESIDUAL_TOL,
            bisection_residual_tol: BISECTION_RESIDUAL_TOL,
            eval_budget: 20_000_000_000,
        }
    }
}
