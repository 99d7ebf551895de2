//! MMSE lower bound for finite-length codes with a nonzero block error
//! probability.
//!
//! Fano's inequality discounts the mutual information a code of rate
//! `0.5*ln(1+alpha*snr1)` can deliver when it errs with probability `pe`;
//! feeding the discounted rate through the Gaussian-surrogate argument turns
//! it into an MMSE lower bound at any `snr0 < alpha*snr1`. The bound is
//! evaluated along two independent algebraic routes that must agree: the
//! surrogate-variance substitution and the direct closed-form ratio.

use crate::error::{Error, Result};
use crate::gaussian::{binary_entropy, gaussian_mmse, RateValue, SnrPoint};
use crate::superposition::{equivalent_gaussian_variance, mmse_lower_bound_asymptotic};

/// Rate/error description of a finite-length code designed for `snr1`:
/// rate `0.5*ln(1+alpha*snr1)` and block error probability `pe`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteLengthParams {
    snr1: f64,
    alpha: f64,
    pe: f64,
}

impl FiniteLengthParams {
    /// `alpha` in [0, 1]; `pe` in [0, 1/2] (the bound is meaningless beyond).
    pub fn new(snr1: SnrPoint, alpha: f64, pe: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        if !pe.is_finite() || !(0.0..=0.5).contains(&pe) {
            return Err(Error::invalid(format!(
                "error probability must lie in [0, 1/2], got {pe}"
            )));
        }
        Ok(FiniteLengthParams { snr1: snr1.value(), alpha, pe })
    }

    pub fn snr1(&self) -> f64 {
        self.snr1
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn pe(&self) -> f64 {
        self.pe
    }

    /// Nominal rate `0.5*ln(1+alpha*snr1)` in nats.
    pub fn rate(&self) -> RateValue {
        RateValue::from_nats_unchecked(0.5 * (self.alpha * self.snr1).ln_1p())
    }
}

/// Fano lower bound on the mutual information delivered at `snr1`, in nats:
/// `0.5*ln[(1+alpha*snr1)^(1-pe) * 2^(-2*h_b(pe))]`, clamped at zero.
/// At `pe = 0` this is exactly the nominal rate.
pub fn fano_mi_lower_bound(params: &FiniteLengthParams) -> RateValue {
    if params.pe == 0.0 {
        return params.rate();
    }
    RateValue::from_nats_unchecked(fano_nats_unclamped(params).max(0.0))
}

fn fano_nats_unclamped(params: &FiniteLengthParams) -> f64 {
    let hb = binary_entropy(params.pe).expect("pe validated at construction");
    0.5 * ((1.0 - params.pe) * (params.alpha * params.snr1).ln_1p()
        - 2.0 * hb * std::f64::consts::LN_2)
}

/// An MMSE lower bound value; `vacuous` marks a clamped-to-zero result (the
/// Fano discount ate the whole rate margin, so the bound carries no
/// information).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteLengthBound {
    pub value: f64,
    pub vacuous: bool,
}

/// Lower bound on the MMSE at `snr0` of a finite-length code described by
/// `params`, valid for `snr0 < alpha*snr1` (rejected otherwise).
///
/// With `G = exp(2 * fano_mi_lower_bound)` the bound is
/// `max(0, (G - (1+snr0)) / ((1+snr0)*(snr1-snr0)))`. At `pe = 0` it reduces
/// exactly to [`mmse_lower_bound_asymptotic`]. The value is computed through
/// the surrogate-variance route and cross-checked against
/// [`bound_direct_ratio`].
pub fn finite_length_mmse_lower_bound(
    params: &FiniteLengthParams,
    snr0: SnrPoint,
) -> Result<FiniteLengthBound> {
    let s0 = check_validity(params, snr0)?;
    if params.pe == 0.0 {
        let snr1 = SnrPoint::new(params.snr1).expect("validated");
        let value = mmse_lower_bound_asymptotic(snr0, snr1, params.alpha);
        return Ok(FiniteLengthBound { value, vacuous: value <= 0.0 });
    }
    let via_surrogate = bound_via_surrogate(params, snr0)?;
    let direct = bound_direct_ratio(params, snr0)?;
    debug_assert!(
        (via_surrogate - direct).abs() <= 1e-11 * via_surrogate.abs().max(1.0),
        "bound routes disagree: {via_surrogate} vs {direct} at snr0 = {s0}"
    );
    Ok(FiniteLengthBound { value: via_surrogate.max(0.0), vacuous: via_surrogate <= 0.0 })
}

/// Surrogate-variance route, unclamped: solve for the auxiliary variance `d`
/// matching the Fano-discounted rate and return its own MMSE `d/(1+d*snr0)`.
/// When the discounted rate leaves no margin over `0.5*ln(1+snr0)` the
/// surrogate does not exist and the (negative) G-form value is returned.
pub fn bound_via_surrogate(params: &FiniteLengthParams, snr0: SnrPoint) -> Result<f64> {
    let s0 = check_validity(params, snr0)?;
    let g = (2.0 * fano_nats_unclamped(params)).exp();
    if g <= 1.0 + s0 {
        return Ok((g - (1.0 + s0)) / ((1.0 + s0) * (params.snr1 - s0)));
    }
    let snr1 = SnrPoint::new(params.snr1).expect("validated");
    let alpha_eff = (g - 1.0) / params.snr1;
    let d = equivalent_gaussian_variance(snr0, snr1, alpha_eff.min(1.0))?;
    Ok(gaussian_mmse(d, snr0))
}

/// Direct closed-form ratio, unclamped:
/// `[1 + a*s1 - (1+s0)*F] / [F * (s1 - s0 + s0*(s1 - s0))]` with
/// `F = 2^(2*h_b(pe)) * (1 + a*s1)^pe`.
pub fn bound_direct_ratio(params: &FiniteLengthParams, snr0: SnrPoint) -> Result<f64> {
    let s0 = check_validity(params, snr0)?;
    let s1 = params.snr1;
    let a1 = params.alpha * s1;
    let hb = binary_entropy(params.pe).expect("pe validated at construction");
    let f = (2.0 * hb).exp2() * (1.0 + a1).powf(params.pe);
    Ok((1.0 + a1 - (1.0 + s0) * f) / (f * (s1 - s0 + s0 * (s1 - s0))))
}

fn check_validity(params: &FiniteLengthParams, snr0: SnrPoint) -> Result<f64> {
    let s0 = snr0.value();
    if s0 >= params.alpha * params.snr1 {
        return Err(Error::infeasible(format!(
            "bound is stated only for snr0 < alpha*snr1, got snr0 = {s0}, alpha*snr1 = {}",
            params.alpha * params.snr1
        )));
    }
    Ok(s0)
}
