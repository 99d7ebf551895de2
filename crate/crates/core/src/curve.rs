//! Piecewise closed-form curves over the SNR axis.
//!
//! A curve covers `[0, inf)` with one segment more than it has breakpoints.
//! MMSE curves are built from rational segments `a / (1 + a*gamma)` with a
//! zero tail; mutual-information curves from logarithmic segments
//! `c + 0.5*ln(1 + a*gamma)` whose final piece is flat (`a = 0`).

use crate::error::{Error, Result};
use crate::gaussian::SnrPoint;

/// One closed-form piece of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    /// `gamma -> a / (1 + a*gamma)`: the MMSE of a Gaussian input of variance `a`.
    Rational { a: f64 },
    /// Identically zero.
    Zero,
    /// `gamma -> c + 0.5*ln(1 + a*gamma)`; `a = 0` makes the piece constant.
    Log { c: f64, a: f64 },
}

impl Segment {
    pub fn eval(&self, gamma: f64) -> f64 {
        match *self {
            Segment::Rational { a } => a / (1.0 + a * gamma),
            Segment::Zero => 0.0,
            Segment::Log { c, a } => c + 0.5 * (a * gamma).ln_1p(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Mmse,
    MutualInformation,
}

/// A piecewise curve with breakpoints at increasing SNRs.
///
/// Values at a breakpoint belong to the segment that starts there (curves are
/// right-continuous), with one exception: a trailing `Zero` segment opens just
/// above its breakpoint, so the last rational piece owns its right endpoint.
/// That matches the decoding picture: the final layer is still being resolved
/// *at* the last SNR, and the estimate error vanishes only beyond it.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCurve {
    breakpoints: Vec<f64>,
    segments: Vec<Segment>,
    kind: CurveKind,
}

impl PiecewiseCurve {
    pub fn new(kind: CurveKind, breakpoints: Vec<f64>, segments: Vec<Segment>) -> Result<Self> {
        if segments.len() != breakpoints.len() + 1 {
            return Err(Error::invalid(format!(
                "need one segment more than breakpoints, got {} segments for {} breakpoints",
                segments.len(),
                breakpoints.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::invalid("breakpoints must be finite and nonnegative"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("breakpoints must be strictly increasing"));
        }
        Ok(PiecewiseCurve { breakpoints, segments, kind })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Evaluate the curve at `gamma`.
    pub fn eval(&self, gamma: SnrPoint) -> f64 {
        let g = gamma.value();
        let mut idx = self.breakpoints.partition_point(|&b| b <= g);
        if idx > 0 && g == self.breakpoints[idx - 1] && matches!(self.segments[idx], Segment::Zero)
        {
            idx -= 1;
        }
        self.segments[idx].eval(g)
    }

    /// Evaluate at a raw nonnegative SNR; panics on a negative or non-finite
    /// argument.
    pub fn eval_at(&self, gamma: f64) -> f64 {
        self.eval(SnrPoint::new(gamma).expect("curve evaluation point"))
    }

    /// The limit from the left at `gamma` (ties resolve to the segment ending
    /// there). Differs from [`eval`](Self::eval) exactly at jump breakpoints;
    /// emitting both values gives a faithful corner pair for staircase data.
    pub fn eval_left_limit(&self, gamma: SnrPoint) -> f64 {
        let g = gamma.value();
        let idx = self.breakpoints.partition_point(|&b| b < g);
        self.segments[idx].eval(g)
    }
}
