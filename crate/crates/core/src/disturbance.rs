//! The mutual-information disturbance region of the Gaussian channel and its
//! comparison against the MMSE-constrained optimum.
//!
//! Here the unintended receiver's exposure is measured by the mutual
//! information it accumulates rather than by its estimation error. Under
//! that measure the optimal strategy is a reduced-power Gaussian codebook,
//! not rate splitting, and several constraints collapse to the single
//! smallest power coefficient.

use crate::error::{Error, Result};
use crate::gaussian::{gaussian_capacity, RateValue, SnrPoint};
use crate::superposition::max_rate_single;

/// One disturbance constraint: the mutual information at `snr` may not exceed
/// `0.5*ln(1 + alpha*snr)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisturbanceConstraint {
    pub snr: f64,
    pub alpha: f64,
}

/// A nonempty list of disturbance constraints at strictly increasing SNRs.
#[derive(Debug, Clone, PartialEq)]
pub struct DisturbanceConstraintSet {
    entries: Vec<DisturbanceConstraint>,
}

impl DisturbanceConstraintSet {
    pub fn new(entries: Vec<DisturbanceConstraint>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("disturbance constraint set must be nonempty"));
        }
        for e in &entries {
            if !e.snr.is_finite() || e.snr <= 0.0 {
                return Err(Error::invalid(format!(
                    "constraint SNR must be finite and positive, got {}",
                    e.snr
                )));
            }
            if !e.alpha.is_finite() || !(0.0..=1.0).contains(&e.alpha) {
                return Err(Error::invalid(format!(
                    "constraint alpha must lie in [0, 1], got {}",
                    e.alpha
                )));
            }
        }
        if entries.windows(2).any(|w| w[0].snr >= w[1].snr) {
            return Err(Error::invalid("constraint SNRs must be strictly increasing"));
        }
        Ok(DisturbanceConstraintSet { entries })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(snr, alpha)| DisturbanceConstraint { snr, alpha }).collect())
    }

    pub fn entries(&self) -> &[DisturbanceConstraint] {
        &self.entries
    }
}

/// One point of the rate-disturbance region for the pair `(snr0, snr1)`:
/// the maximum deliverable rate `0.5*ln(1+alpha*snr1)` and the minimum
/// disturbance `0.5*ln(1+alpha*snr0)` incurred while delivering it.
pub fn rate_disturbance_point(
    snr0: SnrPoint,
    snr1: SnrPoint,
    alpha: f64,
) -> Result<(RateValue, RateValue)> {
    let s0 = snr0.value();
    let s1 = snr1.value();
    if s0 >= s1 {
        return Err(Error::invalid(format!(
            "need snr0 < snr1, got snr0 = {s0}, snr1 = {s1}"
        )));
    }
    if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let r_max = RateValue::from_nats_unchecked(0.5 * (alpha * s1).ln_1p());
    let r_d_min = RateValue::from_nats_unchecked(0.5 * (alpha * s0).ln_1p());
    Ok((r_max, r_d_min))
}

/// The single power coefficient that survives a set of disturbance
/// constraints: the unique `alpha` with
/// `0.5*ln(1+alpha*snr_i) <= 0.5*ln(1+alpha_i*snr_i)` for every `i`,
/// which is exactly `min_i alpha_i`. The multi-constraint maximum rate is
/// then `0.5*ln(1 + effective_alpha*snr_K)`.
pub fn effective_alpha(constraints: &DisturbanceConstraintSet) -> f64 {
    constraints
        .entries
        .iter()
        .map(|e| e.alpha)
        .fold(f64::INFINITY, f64::min)
}

/// Side-by-side rates of the two disturbance measures for one `(snr0, snr1)`
/// instance: the MMSE-constrained optimum at coefficient `beta` (achieved by
/// a superposition codebook) against the mutual-information-constrained
/// optimum at coefficient `alpha` (achieved by a reduced-power Gaussian
/// codebook). The caller picks the `(beta, alpha)` pairing; the record keeps
/// both coefficients so the pairing stays explicit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureComparison {
    pub snr0: f64,
    pub snr1: f64,
    pub beta: f64,
    pub alpha: f64,
    pub mmse_constrained_rate: RateValue,
    pub disturbance_constrained_rate: RateValue,
}

impl MeasureComparison {
    pub const MMSE_STRATEGY: &'static str = "superposition";
    pub const DISTURBANCE_STRATEGY: &'static str = "reduced-power Gaussian";

    /// Positive when the disturbance-constrained rate is larger.
    pub fn rate_gap_nats(&self) -> f64 {
        self.disturbance_constrained_rate.nats() - self.mmse_constrained_rate.nats()
    }
}

/// Compare the two measures at an explicit `(beta, alpha)` pairing.
pub fn compare_measures(
    snr0: SnrPoint,
    snr1: SnrPoint,
    beta: f64,
    alpha: f64,
) -> Result<MeasureComparison> {
    let mmse_rate = max_rate_single(snr0, snr1, beta)?;
    let (dist_rate, _) = rate_disturbance_point(snr0, snr1, alpha)?;
    Ok(MeasureComparison {
        snr0: snr0.value(),
        snr1: snr1.value(),
        beta,
        alpha,
        mmse_constrained_rate: mmse_rate,
        disturbance_constrained_rate: dist_rate,
    })
}

/// The equal-disturbance pairing: the `alpha` whose disturbance level
/// `0.5*ln(1+alpha*snr0)` matches the mutual information a maximum-rate
/// MMSE-constrained code exposes at `snr0`. Such a code runs at full mutual
/// information `0.5*ln(1+snr0)` below its first ladder SNR, so the matched
/// coefficient is full power.
pub fn matched_alpha_equal_disturbance(snr0: SnrPoint) -> f64 {
    let exposure = gaussian_capacity(snr0).nats();
    (((2.0 * exposure).exp() - 1.0) / snr0.value()).min(1.0)
}
