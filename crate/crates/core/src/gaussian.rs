//! Scalar Gaussian-channel primitives: Gaussian-input MMSE, capacity, the
//! q-gap function and binary entropy, plus the newtypes the rest of the crate
//! builds on. Everything here is pure and thread-safe.

use crate::error::{Error, Result};

/// Linear (not dB) signal-to-noise ratio; finite and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SnrPoint(f64);

impl SnrPoint {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::invalid(format!(
                "SNR must be finite and nonnegative, got {value}"
            )));
        }
        Ok(SnrPoint(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for SnrPoint {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        SnrPoint::new(value)
    }
}

/// Variance of a Gaussian surrogate input, in [0, 1].
///
/// This doubles as the auxiliary variance `d` that matches a rate difference
/// to a Gaussian input of the same mutual-information increment.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GaussianSurrogate(f64);

impl GaussianSurrogate {
    pub fn new(variance: f64) -> Result<Self> {
        if !variance.is_finite() || !(0.0..=1.0).contains(&variance) {
            return Err(Error::invalid(format!(
                "surrogate variance must lie in [0, 1], got {variance}"
            )));
        }
        Ok(GaussianSurrogate(variance))
    }

    pub fn variance(self) -> f64 {
        self.0
    }
}

/// A nonnegative rate stored in nats. Bits exist only at I/O boundaries.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RateValue(f64);

impl RateValue {
    pub fn from_nats(nats: f64) -> Result<Self> {
        if !nats.is_finite() || nats < 0.0 {
            return Err(Error::invalid(format!(
                "rate must be finite and nonnegative, got {nats} nats"
            )));
        }
        Ok(RateValue(nats))
    }

    /// Clamp tiny negative round-off to zero; anything genuinely negative
    /// still panics in debug builds.
    pub(crate) fn from_nats_unchecked(nats: f64) -> Self {
        debug_assert!(nats.is_finite() && nats >= -1e-12, "rate {nats}");
        RateValue(nats.max(0.0))
    }

    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn bits(self) -> f64 {
        self.0 / std::f64::consts::LN_2
    }
}

impl std::ops::Add for RateValue {
    type Output = RateValue;
    fn add(self, rhs: RateValue) -> RateValue {
        RateValue(self.0 + rhs.0)
    }
}

impl std::iter::Sum for RateValue {
    fn sum<I: Iterator<Item = RateValue>>(iter: I) -> RateValue {
        iter.fold(RateValue(0.0), |a, b| a + b)
    }
}

/// MMSE of a Gaussian input of the given variance observed at SNR `gamma`:
/// `v / (1 + v*gamma)`. Strictly decreasing in `gamma` whenever `v > 0`.
pub fn gaussian_mmse(variance: GaussianSurrogate, gamma: SnrPoint) -> f64 {
    let v = variance.variance();
    v / (1.0 + v * gamma.value())
}

/// Capacity of the scalar Gaussian channel at SNR `gamma`, in nats:
/// `0.5 * ln(1 + gamma)`.
pub fn gaussian_capacity(gamma: SnrPoint) -> RateValue {
    RateValue(0.5 * gamma.value().ln_1p())
}

/// Gap between the Gaussian-surrogate MMSE and an observed per-dimension
/// MMSE at the same SNR. Positive once the surrogate dominates; the gap
/// crosses zero upward at most once along the SNR axis.
pub fn q_function(mmse_value: f64, variance: GaussianSurrogate, gamma: SnrPoint) -> f64 {
    gaussian_mmse(variance, gamma) - mmse_value
}

/// Binary entropy in bits, with the exact limits h(0) = h(1) = 0.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    let q = 1.0 - p;
    Ok(-(p * p.log2() + q * q.log2()))
}
