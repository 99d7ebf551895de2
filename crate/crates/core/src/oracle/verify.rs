//! Empirical verifiers: the single-crossing property of the q-gap and the
//! I-MMSE integral identity, with explicit statistical and quadrature
//! error budgets.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gaussian::{gaussian_mmse, GaussianSurrogate, SnrPoint};
use crate::numeric::trapezoid_refined;
use crate::oracle::{
    constellation_of, mi_monte_carlo, mmse_monte_carlo, scalar_mi_quadrature,
    scalar_mmse_quadrature, DiscreteCodebook,
};

/// One evaluated q-gap point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPoint {
    pub value: f64,
    pub std_error: f64,
}

/// Grid evaluation of `q(gamma) = mmse_G(gamma) - MMSE(gamma)` with the
/// crossing verdict. `pass` is false only when a nonnegative value is
/// followed by a value negative beyond the configured number of combined
/// standard errors — the forbidden downward crossing.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingReport {
    pub grid: Vec<f64>,
    pub q_values: Vec<QPoint>,
    pub pass: bool,
    pub first_nonnegative_index: Option<usize>,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("grid must be nonempty"));
    }
    if grid.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(Error::invalid("grid points must be finite and nonnegative"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("grid must be strictly increasing"));
    }
    Ok(())
}

fn crossing_verdict(q: &[QPoint], sigma_policy: f64) -> (bool, Option<usize>) {
    let first_nonneg = q.iter().position(|p| p.value >= 0.0);
    let mut min_se_nonneg = f64::INFINITY;
    let mut pass = true;
    for p in q {
        if p.value >= 0.0 {
            min_se_nonneg = min_se_nonneg.min(p.std_error);
        } else if min_se_nonneg.is_finite() {
            let combined = (min_se_nonneg * min_se_nonneg + p.std_error * p.std_error).sqrt();
            if p.value < -sigma_policy * combined {
                pass = false;
                break;
            }
        }
    }
    (pass, first_nonneg)
}

/// Monte Carlo verification that the q-gap never crosses from nonnegative to
/// negative along `grid`. Each grid point gets an independent seeded
/// estimate of `samples` draws.
pub fn verify_single_crossing(
    cb: &DiscreteCodebook,
    variance: GaussianSurrogate,
    grid: &[f64],
    samples: u64,
    seed: u64,
    cfg: &Config,
) -> Result<CrossingReport> {
    check_grid(grid)?;
    let q_values: Vec<QPoint> = grid
        .iter()
        .enumerate()
        .map(|(j, &g)| {
            let gamma = SnrPoint::new(g).expect("grid validated");
            let est = mmse_monte_carlo(cb, gamma, samples, point_seed(seed, j));
            QPoint {
                value: gaussian_mmse(variance, gamma) - est.value,
                std_error: est.std_error,
            }
        })
        .collect();
    let (pass, first_nonnegative_index) = crossing_verdict(&q_values, cfg.sigma_policy);
    Ok(CrossingReport { grid: grid.to_vec(), q_values, pass, first_nonnegative_index })
}

/// Deterministic variant for scalar constellations: the q-gap is evaluated by
/// Gauss-Hermite quadrature, so standard errors are zero and any strictly
/// negative value after a nonnegative one fails the verdict.
pub fn verify_single_crossing_quadrature(
    constellation: &[(f64, f64)],
    variance: GaussianSurrogate,
    grid: &[f64],
) -> Result<CrossingReport> {
    check_grid(grid)?;
    let q_values: Vec<QPoint> = grid
        .iter()
        .map(|&g| {
            let gamma = SnrPoint::new(g).expect("grid validated");
            let mmse = scalar_mmse_quadrature(constellation, gamma)?;
            Ok(QPoint { value: gaussian_mmse(variance, gamma) - mmse, std_error: 0.0 })
        })
        .collect::<Result<_>>()?;
    let (pass, first_nonnegative_index) = crossing_verdict(&q_values, 1.0);
    Ok(CrossingReport { grid: grid.to_vec(), q_values, pass, first_nonnegative_index })
}

/// Outcome of one I-MMSE identity check: the mutual information at the target
/// SNR against half the integral of the MMSE curve up to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub mi: f64,
    pub integral_half: f64,
    pub residual: f64,
    /// Allowance for sampling noise (zero on the deterministic path).
    pub stat_budget: f64,
    /// Allowance for integration truncation.
    pub quad_budget: f64,
    pub pass: bool,
    pub deterministic: bool,
}

/// Check the I-MMSE identity for a codebook at `snr`.
///
/// One-dimensional codebooks take the deterministic quadrature path. Larger
/// codebooks are estimated by Monte Carlo over `grid_density` trapezoid
/// panels; the cost `M * samples * nodes` is bounded by the configured
/// evaluation budget, and oversized requests fail with
/// [`Error::BudgetExceeded`] rather than running for hours.
pub fn verify_immse_identity(
    cb: &DiscreteCodebook,
    snr: SnrPoint,
    grid_density: usize,
    samples: u64,
    seed: u64,
    cfg: &Config,
) -> Result<IdentityReport> {
    if grid_density < 2 {
        return Err(Error::invalid("grid density must be at least 2"));
    }
    if cb.dimension() == 1 {
        return identity_deterministic(cb, snr, cfg);
    }
    // even panel count so the half-density comparison lands on shared nodes
    let panels = grid_density + grid_density % 2;
    let cost = cb.len() as u64 * samples * (panels as u64 + 2);
    if cost > cfg.eval_budget {
        return Err(Error::BudgetExceeded(format!(
            "identity check needs {cost} posterior evaluations, budget is {}",
            cfg.eval_budget
        )));
    }

    let s = snr.value();
    let h = s / panels as f64;
    let mi = mi_monte_carlo(cb, snr, samples, point_seed(seed, usize::MAX));
    let estimates: Vec<_> = (0..=panels)
        .map(|i| {
            let gamma = SnrPoint::new(h * i as f64).expect("nonnegative");
            mmse_monte_carlo(cb, gamma, samples, point_seed(seed, i))
        })
        .collect();

    let trap = |stride: usize| -> f64 {
        let pts: Vec<f64> =
            (0..=panels / stride).map(|i| estimates[i * stride].value).collect();
        let hh = h * stride as f64;
        hh * (pts.iter().sum::<f64>() - 0.5 * (pts[0] + pts[pts.len() - 1]))
    };
    let t_fine = trap(1);
    let t_coarse = trap(2);
    let integral_half = 0.5 * t_fine;
    let quad_budget = 0.5 * (t_fine - t_coarse).abs() / 3.0 + cfg.integral_tol;

    let mut var = mi.std_error * mi.std_error;
    for (i, est) in estimates.iter().enumerate() {
        let w = if i == 0 || i == panels { 0.5 * h } else { h };
        let c = 0.5 * w * est.std_error;
        var += c * c;
    }
    let stat_budget = cfg.sigma_policy * var.sqrt();

    let residual = (mi.value - integral_half).abs();
    Ok(IdentityReport {
        mi: mi.value,
        integral_half,
        residual,
        stat_budget,
        quad_budget,
        pass: residual <= stat_budget + quad_budget,
        deterministic: false,
    })
}

fn identity_deterministic(cb: &DiscreteCodebook, snr: SnrPoint, cfg: &Config) -> Result<IdentityReport> {
    let constellation = constellation_of(cb)?;
    let mi = scalar_mi_quadrature(&constellation, snr)?;
    let quad = trapezoid_refined(
        |g| {
            scalar_mmse_quadrature(&constellation, SnrPoint::new(g).expect("nonnegative"))
                .expect("constellation validated")
        },
        0.0,
        snr.value(),
        cfg.integral_tol,
        cfg.integral_node_cap,
    );
    let integral_half = 0.5 * quad.value;
    let residual = (mi - integral_half).abs();
    let quad_budget = 0.5 * quad.error_estimate + cfg.integral_tol;
    Ok(IdentityReport {
        mi,
        integral_half,
        residual,
        stat_budget: 0.0,
        quad_budget,
        pass: residual <= quad_budget,
        deterministic: true,
    })
}

fn point_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
