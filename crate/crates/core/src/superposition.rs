//! Gaussian superposition designs and the MMSE-constrained rate optima.
//!
//! A design splits unit transmit power across layers via strictly decreasing
//! coefficients `1 > beta_0 > ... > beta_{K-1} > 0` over an increasing SNR
//! ladder `snr_0 < ... < snr_K`. Layer `i` is resolved at `snr_i`, which gives
//! the MMSE curve its staircase of rational pieces and the mutual-information
//! curve its matching logarithmic pieces. The same designs achieve the
//! maximum rate under per-SNR MMSE constraints, which is what
//! [`max_rate_single`] and [`max_rate_multi`] compute.

use crate::curve::{CurveKind, PiecewiseCurve, Segment};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianSurrogate, RateValue, SnrPoint};

/// Strictly increasing, strictly positive SNR points.
///
/// A single-point ladder is the degenerate "no constraint" case: one Gaussian
/// codebook resolved at that SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrLadder {
    points: Vec<f64>,
}

impl SnrLadder {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("SNR ladder must be nonempty"));
        }
        if points.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err(Error::invalid("SNR ladder entries must be finite and positive"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("SNR ladder must be strictly increasing"));
        }
        Ok(SnrLadder { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Number of constraint levels (one fewer than the point count).
    pub fn constraint_count(&self) -> usize {
        self.points.len() - 1
    }
}

/// One MMSE constraint: at SNR `snr` the code's MMSE may not exceed
/// `beta / (1 + beta*snr)`, the MMSE of a Gaussian input of variance `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MmseConstraint {
    pub snr: f64,
    pub beta: f64,
}

/// A set of MMSE constraints, possibly redundant and in any order.
///
/// [`prune_constraints`] reduces a set to canonical form: strictly increasing
/// in SNR and strictly decreasing in beta.
#[derive(Debug, Clone, PartialEq)]
pub struct MmseConstraintSet {
    entries: Vec<MmseConstraint>,
}

impl MmseConstraintSet {
    pub fn new(entries: Vec<MmseConstraint>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("constraint set must be nonempty"));
        }
        for e in &entries {
            if !e.snr.is_finite() || e.snr <= 0.0 {
                return Err(Error::invalid(format!(
                    "constraint SNR must be finite and positive, got {}",
                    e.snr
                )));
            }
            if !e.beta.is_finite() || !(0.0..=1.0).contains(&e.beta) {
                return Err(Error::invalid(format!(
                    "constraint beta must lie in [0, 1], got {}",
                    e.beta
                )));
            }
        }
        Ok(MmseConstraintSet { entries })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(snr, beta)| MmseConstraint { snr, beta }).collect())
    }

    pub fn entries(&self) -> &[MmseConstraint] {
        &self.entries
    }

    pub fn sum_of_betas(&self) -> f64 {
        self.entries.iter().map(|e| e.beta).sum()
    }

    /// Strict validation mode: additionally require `sum(beta_i) <= 1`.
    ///
    /// The canonical chain `1 > beta_0 > ... > beta_{K-1} > 0` is all the
    /// layer-power accounting needs, so this check is opt-in.
    pub fn check_beta_sum(&self) -> Result<()> {
        let s = self.sum_of_betas();
        if s > 1.0 {
            return Err(Error::invalid(format!(
                "strict mode requires sum of betas <= 1, got {s}"
            )));
        }
        Ok(())
    }
}

/// Remove every constraint implied by another one.
///
/// `(snr_i, beta_i)` dominates `(snr_l, beta_l)` when `snr_i <= snr_l` and
/// `beta_i <= beta_l`: the tighter Gaussian-surrogate level at the lower SNR
/// already forces the looser one everywhere above it. Ties on beta keep the
/// lower-SNR entry. The result is strictly increasing in SNR, strictly
/// decreasing in beta, and pruning is idempotent.
pub fn prune_constraints(raw: &MmseConstraintSet) -> MmseConstraintSet {
    let mut entries = raw.entries.clone();
    entries.sort_by(|a, b| a.snr.total_cmp(&b.snr).then(a.beta.total_cmp(&b.beta)));
    let mut kept: Vec<MmseConstraint> = Vec::new();
    for e in entries {
        match kept.last() {
            Some(prev) if prev.beta <= e.beta => {} // dominated
            _ => kept.push(e),
        }
    }
    MmseConstraintSet { entries: kept }
}

/// A layered Gaussian superposition codebook descriptor: the SNR ladder, the
/// rate-splitting coefficients, and the per-layer rates they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionDesign {
    ladder: SnrLadder,
    betas: Vec<f64>,
    layer_rates: Vec<RateValue>,
    total_rate: RateValue,
}

impl SuperpositionDesign {
    /// Build a design from a ladder and strictly decreasing betas in (0, 1);
    /// one beta fewer than ladder points.
    ///
    /// Layer rates: the common layer carries
    /// `0.5*ln((1+snr_0)/(1+beta_0*snr_0))`, middle layer `j` carries
    /// `0.5*ln((1+beta_{j-1}*snr_j)/(1+beta_j*snr_j))` and the innermost layer
    /// `0.5*ln(1+beta_{K-1}*snr_K)`. Layer powers are the beta differences and
    /// sum to one.
    pub fn new(ladder: SnrLadder, betas: Vec<f64>) -> Result<Self> {
        let k = ladder.constraint_count();
        if betas.len() != k {
            return Err(Error::invalid(format!(
                "expected {k} betas for a ladder of {} points, got {}",
                ladder.points().len(),
                betas.len()
            )));
        }
        if betas.iter().any(|b| !b.is_finite() || !(*b > 0.0 && *b < 1.0)) {
            return Err(Error::invalid("betas must lie strictly inside (0, 1)"));
        }
        if betas.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::invalid("betas must be strictly decreasing"));
        }

        let s = ladder.points();
        let mut layer_rates = Vec::with_capacity(k + 1);
        if k == 0 {
            layer_rates.push(RateValue::from_nats_unchecked(0.5 * s[0].ln_1p()));
        } else {
            layer_rates
                .push(RateValue::from_nats_unchecked(0.5 * (s[0].ln_1p() - (betas[0] * s[0]).ln_1p())));
            for j in 1..k {
                layer_rates.push(RateValue::from_nats_unchecked(
                    0.5 * ((betas[j - 1] * s[j]).ln_1p() - (betas[j] * s[j]).ln_1p()),
                ));
            }
            layer_rates.push(RateValue::from_nats_unchecked(0.5 * (betas[k - 1] * s[k]).ln_1p()));
        }
        let total_rate = layer_rates.iter().copied().sum();
        Ok(SuperpositionDesign { ladder, betas, layer_rates, total_rate })
    }

    pub fn ladder(&self) -> &SnrLadder {
        &self.ladder
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn layer_rates(&self) -> &[RateValue] {
        &self.layer_rates
    }

    pub fn total_rate(&self) -> RateValue {
        self.total_rate
    }

    /// Exact MMSE curve of the design: `1/(1+gamma)` before the first ladder
    /// SNR, `beta_i/(1+beta_i*gamma)` between consecutive SNRs, zero beyond
    /// the last (each drop is a phase transition).
    pub fn mmse_curve(&self) -> PiecewiseCurve {
        let mut segments = Vec::with_capacity(self.betas.len() + 2);
        segments.push(Segment::Rational { a: 1.0 });
        segments.extend(self.betas.iter().map(|&b| Segment::Rational { a: b }));
        segments.push(Segment::Zero);
        PiecewiseCurve::new(CurveKind::Mmse, self.ladder.points.clone(), segments)
            .expect("design ladder is a valid breakpoint list")
    }

    /// Exact mutual-information curve of the design, continuous and
    /// nondecreasing, saturating at the total rate from the last ladder SNR
    /// on. Each segment's derivative is half the matching MMSE segment.
    pub fn mi_curve(&self) -> PiecewiseCurve {
        let mut segments = Vec::with_capacity(self.betas.len() + 2);
        segments.push(Segment::Log { c: 0.0, a: 1.0 });
        let mut cum = 0.0;
        for (i, &b) in self.betas.iter().enumerate() {
            cum += self.layer_rates[i].nats();
            segments.push(Segment::Log { c: cum, a: b });
        }
        segments.push(Segment::Log { c: self.total_rate.nats(), a: 0.0 });
        PiecewiseCurve::new(CurveKind::MutualInformation, self.ladder.points.clone(), segments)
            .expect("design ladder is a valid breakpoint list")
    }
}

/// Maximum rate at `snr1` for a code whose MMSE at `snr0` may not exceed
/// `beta/(1+beta*snr0)`:
/// `0.5*ln(1+beta*snr1) + 0.5*ln((1+snr0)/(1+beta*snr0))`.
///
/// `beta = 0` collapses to decodability at `snr0`; `beta = 1` removes the
/// constraint entirely.
pub fn max_rate_single(snr0: SnrPoint, snr1: SnrPoint, beta: f64) -> Result<RateValue> {
    let (s0, s1) = ordered_pair(snr0, snr1)?;
    check_unit_interval(beta, "beta")?;
    let nats = 0.5 * (beta * s1).ln_1p() + 0.5 * (s0.ln_1p() - (beta * s0).ln_1p());
    Ok(RateValue::from_nats_unchecked(nats))
}

/// Map the MMSE-constraint coefficient `beta` to the rate coefficient `alpha`
/// with `max_rate = 0.5*ln(1+alpha*snr1)`:
/// `alpha = (beta*(snr1-snr0) + snr0*(1+beta*snr1)) / (snr1*(1+beta*snr0))`.
pub fn beta_to_alpha(snr0: SnrPoint, snr1: SnrPoint, beta: f64) -> Result<f64> {
    let (s0, s1) = ordered_pair(snr0, snr1)?;
    check_unit_interval(beta, "beta")?;
    Ok((beta * (s1 - s0) + s0 * (1.0 + beta * s1)) / (s1 * (1.0 + beta * s0)))
}

/// Inverse of [`beta_to_alpha`]: the unique `beta` in [0, 1] whose rate
/// coefficient is `alpha`. Below `alpha*snr1 <= snr0` the MMSE constraint is
/// trivially zero and `beta = 0` is returned.
///
/// Solved in closed form by inverting the Moebius map; if the closed form's
/// round trip is off it falls back to bisection (the map is strictly
/// increasing in beta).
pub fn alpha_to_beta(snr0: SnrPoint, snr1: SnrPoint, alpha: f64) -> Result<f64> {
    let (s0, s1) = ordered_pair(snr0, snr1)?;
    check_unit_interval(alpha, "alpha")?;
    if alpha * s1 <= s0 {
        return Ok(0.0);
    }
    let beta = ((alpha * s1 - s0) / ((s1 - s0) + s0 * s1 * (1.0 - alpha))).clamp(0.0, 1.0);
    let residual = (beta_to_alpha(snr0, snr1, beta)? - alpha).abs();
    if residual <= crate::config::INVERSE_RESIDUAL_TOL {
        return Ok(beta);
    }
    // bisection fallback on a monotone map
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut mid = beta;
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let r = beta_to_alpha(snr0, snr1, mid)? - alpha;
        if r.abs() <= crate::config::BISECTION_RESIDUAL_TOL {
            break;
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// The auxiliary Gaussian variance `d` whose capacity increment from `snr0`
/// to `snr1` matches the rate coefficient `alpha`:
/// `(1+alpha*snr1)/(1+snr0) = (1+d*snr1)/(1+d*snr0)`, solved as
/// `d = (c-1)/(snr1 - c*snr0)` with `c = (1+alpha*snr1)/(1+snr0)`.
///
/// Requires `snr0 < alpha*snr1`; then `d` lies in (0, 1].
pub fn equivalent_gaussian_variance(
    snr0: SnrPoint,
    snr1: SnrPoint,
    alpha: f64,
) -> Result<GaussianSurrogate> {
    let (s0, s1) = ordered_pair(snr0, snr1)?;
    check_unit_interval(alpha, "alpha")?;
    if alpha * s1 <= s0 {
        return Err(Error::infeasible(format!(
            "surrogate variance needs snr0 < alpha*snr1, got snr0 = {s0}, alpha*snr1 = {}",
            alpha * s1
        )));
    }
    let c = (1.0 + alpha * s1) / (1.0 + s0);
    let d = (c - 1.0) / (s1 - c * s0);
    GaussianSurrogate::new(d.clamp(0.0, 1.0))
}

/// Asymptotic lower bound on the MMSE at `snr0` of any reliable code of rate
/// `0.5*ln(1+alpha*snr1)`:
/// `(alpha*snr1 - snr0) / ((snr1 - snr0)*(1 + snr0))`, zero once
/// `alpha*snr1 <= snr0`. Equals the surrogate's own MMSE `d/(1+d*snr0)`.
pub fn mmse_lower_bound_asymptotic(snr0: SnrPoint, snr1: SnrPoint, alpha: f64) -> f64 {
    let s0 = snr0.value();
    let s1 = snr1.value();
    if alpha * s1 <= s0 {
        return 0.0;
    }
    (alpha * s1 - s0) / ((s1 - s0) * (1.0 + s0))
}

/// Maximum rate at `snr_k` under a set of MMSE constraints at lower SNRs,
/// together with the superposition design achieving it.
///
/// The constraint set is canonicalized with [`prune_constraints`] first, so
/// adding an implied constraint never changes the result. Degenerate
/// coefficients collapse before the design is built: `beta = 1` entries are
/// vacuous and `beta = 0` makes the code decodable at that SNR, truncating
/// the ladder there.
pub fn max_rate_multi(
    constraints: &MmseConstraintSet,
    snr_k: SnrPoint,
) -> Result<(RateValue, SuperpositionDesign)> {
    let pruned = prune_constraints(constraints);
    let sk = snr_k.value();
    if let Some(e) = pruned.entries.iter().find(|e| e.snr >= sk) {
        return Err(Error::infeasible(format!(
            "target SNR {sk} must exceed every constraint SNR, found constraint at {}",
            e.snr
        )));
    }
    let mut points = Vec::with_capacity(pruned.entries.len() + 1);
    let mut betas = Vec::with_capacity(pruned.entries.len());
    let mut end = sk;
    for e in &pruned.entries {
        if e.beta >= 1.0 {
            continue;
        }
        if e.beta <= 0.0 {
            end = e.snr;
            break;
        }
        points.push(e.snr);
        betas.push(e.beta);
    }
    points.push(end);
    let design = SuperpositionDesign::new(SnrLadder::new(points)?, betas)?;
    Ok((design.total_rate(), design))
}

/// The unique MMSE / mutual-information curve pair of any maximum-rate code
/// under the given constraints: identical to the curves of the achieving
/// superposition design.
pub fn optimal_profile(
    constraints: &MmseConstraintSet,
    snr_k: SnrPoint,
) -> Result<(PiecewiseCurve, PiecewiseCurve)> {
    let (_, design) = max_rate_multi(constraints, snr_k)?;
    Ok((design.mmse_curve(), design.mi_curve()))
}

fn ordered_pair(snr0: SnrPoint, snr1: SnrPoint) -> Result<(f64, f64)> {
    let s0 = snr0.value();
    let s1 = snr1.value();
    if s0 >= s1 {
        return Err(Error::invalid(format!(
            "need snr0 < snr1, got snr0 = {s0}, snr1 = {s1}"
        )));
    }
    Ok((s0, s1))
}

fn check_unit_interval(x: f64, name: &str) -> Result<()> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("{name} must lie in [0, 1], got {x}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::gaussian_mmse;
    use crate::numeric::trapezoid_refined;
    use proptest::prelude::*;

    fn snr(v: f64) -> SnrPoint {
        SnrPoint::new(v).unwrap()
    }

    fn design(points: &[f64], betas: &[f64]) -> SuperpositionDesign {
        SuperpositionDesign::new(SnrLadder::new(points.to_vec()).unwrap(), betas.to_vec()).unwrap()
    }

    /// Two-layer reference design: SNRs (2, 2.5), beta 0.4.
    fn two_layer() -> SuperpositionDesign {
        design(&[2.0, 2.5], &[0.4])
    }

    /// Four-layer reference design: SNRs (0.8, 1.7, 2.2, 3), betas (0.6, 0.4, 0.3).
    fn four_layer() -> SuperpositionDesign {
        design(&[0.8, 1.7, 2.2, 3.0], &[0.6, 0.4, 0.3])
    }

    /// Integrate an MMSE staircase segment by segment (the integrand is
    /// smooth inside each piece and jumps at breakpoints).
    fn integrate_mmse(curve: &PiecewiseCurve, to: f64) -> f64 {
        let mut edges = vec![0.0];
        edges.extend(curve.breakpoints().iter().copied().filter(|b| *b < to));
        edges.push(to);
        edges
            .windows(2)
            .map(|w| {
                // sample strictly inside the piece to dodge the boundary rules
                let inset = 1e-9 * (w[1] - w[0]);
                trapezoid_refined(
                    |g| curve.eval_at(g.clamp(w[0] + inset, w[1] - inset)),
                    w[0],
                    w[1],
                    1e-11,
                    1 << 16,
                )
                .value
            })
            .sum()
    }

    #[test]
    fn two_layer_reference_rates() {
        let d = two_layer();
        let rates = d.layer_rates();
        assert_eq!(rates.len(), 2);
        assert!((rates[0].nats() - 0.255_412_811_882_995_34).abs() < 1e-15);
        assert!((rates[1].nats() - 0.346_573_590_279_972_65).abs() < 1e-15);
        assert!((d.total_rate().nats() - 0.601_986_402_162_968_0).abs() < 1e-15);
    }

    #[test]
    fn four_layer_reference_rates() {
        let d = four_layer();
        let expected = [
            0.097_872_288_563_047_66,
            0.092_151_858_998_972_92,
            0.062_227_087_236_702_99,
            0.320_926_943_086_197_39,
        ];
        assert_eq!(d.layer_rates().len(), 4);
        for (r, e) in d.layer_rates().iter().zip(expected) {
            assert!((r.nats() - e).abs() < 1e-14, "layer rate {} vs {e}", r.nats());
        }
        assert!((d.total_rate().nats() - 0.573_178_177_884_920_95).abs() < 1e-14);
    }

    #[test]
    fn total_rate_approaches_capacity_as_beta_fills() {
        let d = design(&[2.0, 2.5], &[1.0 - 1e-9]);
        assert!((d.total_rate().nats() - 0.5 * 2.5f64.ln_1p()).abs() < 1e-8);
    }

    #[test]
    fn design_validation() {
        let ladder = || SnrLadder::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(SuperpositionDesign::new(ladder(), vec![0.5]).is_err()); // length
        assert!(SuperpositionDesign::new(ladder(), vec![0.4, 0.6]).is_err()); // order
        assert!(SuperpositionDesign::new(ladder(), vec![1.0, 0.5]).is_err()); // open interval
        assert!(SuperpositionDesign::new(ladder(), vec![0.5, 0.0]).is_err());
        assert!(SuperpositionDesign::new(ladder(), vec![0.5, 0.5]).is_err()); // strict
        assert!(SnrLadder::new(vec![]).is_err());
        assert!(SnrLadder::new(vec![0.0, 1.0]).is_err()); // positive
        assert!(SnrLadder::new(vec![2.0, 2.0]).is_err());
        assert!(SnrLadder::new(vec![2.0, 1.0]).is_err());
    }

    #[test]
    fn two_layer_mmse_curve_values() {
        let c = two_layer().mmse_curve();
        assert!((c.eval_at(1.0) - 0.5).abs() < 1e-15);
        assert!((c.eval_at(2.2) - 0.4 / 1.88).abs() < 1e-15);
        assert!((c.eval_at(2.2) - 0.212_765_957_446_808_5).abs() < 1e-15);
        assert_eq!(c.eval_at(3.0), 0.0);
    }

    #[test]
    fn two_layer_mi_curve_values() {
        let d = two_layer();
        let c = d.mi_curve();
        assert_eq!(c.eval_at(0.0), 0.0);
        // saturation at and beyond the last ladder SNR, bit-exact
        assert_eq!(c.eval_at(2.5), d.total_rate().nats());
        assert_eq!(c.eval_at(1e9), d.total_rate().nats());
    }

    #[test]
    fn mi_is_half_the_mmse_integral() {
        for d in [two_layer(), four_layer()] {
            let mmse = d.mmse_curve();
            let mi = d.mi_curve();
            let last = *d.ladder().points().last().unwrap();
            for to in [0.7, last, last + 1.0] {
                let lhs = mi.eval_at(to.min(last));
                let rhs = 0.5 * integrate_mmse(&mmse, to.min(last));
                assert!((lhs - rhs).abs() < 1e-8, "at {to}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn max_rate_single_reference_points() {
        let r = max_rate_single(snr(2.0), snr(2.5), 0.4).unwrap();
        assert!((r.nats() - 0.601_986_402_162_968_0).abs() < 1e-15);
        let r = max_rate_single(snr(2.0), snr(2.5), 1.0).unwrap();
        assert!((r.nats() - 0.5 * 3.5f64.ln()).abs() < 1e-15);
        let r = max_rate_single(snr(2.0), snr(2.5), 0.0).unwrap();
        assert!((r.nats() - 0.5 * 3.0f64.ln()).abs() < 1e-15);
        assert!(max_rate_single(snr(2.5), snr(2.0), 0.4).is_err());
        assert!(max_rate_single(snr(2.0), snr(2.5), 1.4).is_err());
    }

    #[test]
    fn coefficient_map_reference_points() {
        let a = beta_to_alpha(snr(2.0), snr(2.5), 0.4).unwrap();
        assert!((a - 14.0 / 15.0).abs() < 1e-15);
        // the mapped alpha reproduces the rate as a single log
        let r = 0.5 * (a * 2.5).ln_1p();
        assert!((r - 0.601_986_402_162_968_0).abs() < 1e-15);
        assert!((beta_to_alpha(snr(2.0), snr(2.5), 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((beta_to_alpha(snr(2.0), snr(2.5), 0.0).unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn coefficient_map_inverts() {
        let b = alpha_to_beta(snr(2.0), snr(2.5), 14.0 / 15.0).unwrap();
        assert!((b - 0.4).abs() < 1e-12);
        assert_eq!(alpha_to_beta(snr(2.0), snr(2.5), 0.8).unwrap(), 0.0);
        assert_eq!(alpha_to_beta(snr(2.0), snr(2.5), 0.5).unwrap(), 0.0);
        assert!((alpha_to_beta(snr(2.0), snr(2.5), 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(alpha_to_beta(snr(2.0), snr(2.5), 1.2).is_err());
    }

    #[test]
    fn surrogate_variance_reference_points() {
        let d = equivalent_gaussian_variance(snr(2.0), snr(2.5), 14.0 / 15.0).unwrap();
        assert!((d.variance() - 0.4).abs() < 1e-13);
        let d = equivalent_gaussian_variance(snr(2.0), snr(2.5), 1.0).unwrap();
        assert!((d.variance() - 1.0).abs() < 1e-12);
        // alpha*snr1 just above snr0 sends d to zero
        let d = equivalent_gaussian_variance(snr(2.0), snr(2.5), 0.8 + 1e-9).unwrap();
        assert!(d.variance() > 0.0 && d.variance() < 1e-8);
        assert!(equivalent_gaussian_variance(snr(2.0), snr(2.5), 0.8).is_err());
    }

    #[test]
    fn asymptotic_bound_reference_points() {
        let v = mmse_lower_bound_asymptotic(snr(2.0), snr(2.5), 14.0 / 15.0);
        assert!((v - 2.0 / 9.0).abs() < 1e-15);
        // the constraint binds with equality at the surrogate MMSE
        let g = GaussianSurrogate::new(0.4).unwrap();
        assert!((v - gaussian_mmse(g, snr(2.0))).abs() < 1e-15);
        assert_eq!(mmse_lower_bound_asymptotic(snr(2.0), snr(2.5), 0.8), 0.0);
        let v = mmse_lower_bound_asymptotic(snr(0.5), snr(2.5179), 1.0 / 2.5179);
        assert!((v - 0.165_188_231_990_353_0).abs() < 1e-14);
    }

    #[test]
    fn pruning_reference_cases() {
        let s = MmseConstraintSet::from_pairs(&[(2.0, 0.4)]).unwrap();
        assert_eq!(prune_constraints(&s).entries(), s.entries());
        // a higher beta at a higher SNR is implied by the entry below it
        let s = MmseConstraintSet::from_pairs(&[(1.0, 0.3), (2.0, 0.5)]).unwrap();
        let p = prune_constraints(&s);
        assert_eq!(p.entries(), &[MmseConstraint { snr: 1.0, beta: 0.3 }]);
        // equal betas keep the lower-SNR entry
        let s = MmseConstraintSet::from_pairs(&[(2.0, 0.4), (1.0, 0.4)]).unwrap();
        let p = prune_constraints(&s);
        assert_eq!(p.entries(), &[MmseConstraint { snr: 1.0, beta: 0.4 }]);
        // equal SNRs keep the tighter beta
        let s = MmseConstraintSet::from_pairs(&[(1.0, 0.6), (1.0, 0.2)]).unwrap();
        let p = prune_constraints(&s);
        assert_eq!(p.entries(), &[MmseConstraint { snr: 1.0, beta: 0.2 }]);
    }

    #[test]
    fn interleaved_non_dominated_constraint_is_kept() {
        // (1.5, 0.45) is not implied by (1, 0.5): the two-constraint design
        // has MMSE 0.5/1.75 = 0.2857 at 1.5, above the 0.45-level 0.2687, so
        // the middle constraint genuinely binds and must survive pruning.
        let s = MmseConstraintSet::from_pairs(&[(1.0, 0.5), (2.0, 0.3), (1.5, 0.45)]).unwrap();
        let p = prune_constraints(&s);
        assert_eq!(p.entries().len(), 3);
        assert_eq!(p.entries()[1], MmseConstraint { snr: 1.5, beta: 0.45 });

        let without = MmseConstraintSet::from_pairs(&[(1.0, 0.5), (2.0, 0.3)]).unwrap();
        let (_, d) = max_rate_multi(&without, snr(2.5)).unwrap();
        let mmse_at_mid = d.mmse_curve().eval_at(1.5);
        let level = 0.45 / (1.0 + 0.45 * 1.5);
        assert!(mmse_at_mid > level, "{mmse_at_mid} vs {level}");
    }

    #[test]
    fn multi_rate_single_constraint_reduces_to_two_layer() {
        let s = MmseConstraintSet::from_pairs(&[(2.0, 0.4)]).unwrap();
        let (rate, d) = max_rate_multi(&s, snr(2.5)).unwrap();
        assert!((rate.nats() - 0.601_986_402_162_968_0).abs() < 1e-15);
        assert_eq!(d.ladder().points(), &[2.0, 2.5]);
        assert_eq!(d.betas(), &[0.4]);
    }

    #[test]
    fn multi_rate_four_layer_reference() {
        let s = MmseConstraintSet::from_pairs(&[(0.8, 0.6), (1.7, 0.4), (2.2, 0.3)]).unwrap();
        let (rate, d) = max_rate_multi(&s, snr(3.0)).unwrap();
        assert!((rate.nats() - 0.573_178_177_884_920_95).abs() < 1e-14);
        assert_eq!(d.betas(), &[0.6, 0.4, 0.3]);
    }

    #[test]
    fn vacuous_constraints_collapse_to_one_codebook() {
        let s = MmseConstraintSet::from_pairs(&[(0.5, 1.0), (1.5, 1.0)]).unwrap();
        let (rate, d) = max_rate_multi(&s, snr(2.5)).unwrap();
        assert!((rate.nats() - 0.5 * 2.5f64.ln_1p()).abs() < 1e-15);
        assert_eq!(d.ladder().points(), &[2.5]);
        assert!(d.betas().is_empty());
        // profile of the unconstrained optimum: uncoded MMSE, then zero
        let (mmse, mi) = optimal_profile(&s, snr(2.5)).unwrap();
        assert!((mmse.eval_at(1.0) - 0.5).abs() < 1e-15);
        assert_eq!(mmse.eval_at(2.6), 0.0);
        assert_eq!(mi.eval_at(3.0), rate.nats());
    }

    #[test]
    fn zero_beta_truncates_the_ladder() {
        let s = MmseConstraintSet::from_pairs(&[(1.0, 0.5), (2.0, 0.0)]).unwrap();
        let (rate, d) = max_rate_multi(&s, snr(4.0)).unwrap();
        // decodable at 2.0: nothing is earned beyond it
        assert_eq!(d.ladder().points(), &[1.0, 2.0]);
        let direct = max_rate_single(snr(1.0), snr(2.0), 0.5).unwrap();
        assert!((rate.nats() - direct.nats()).abs() < 1e-15);
        assert_eq!(d.mmse_curve().eval_at(3.0), 0.0);
    }

    #[test]
    fn infeasible_target_snr_is_rejected() {
        let s = MmseConstraintSet::from_pairs(&[(2.0, 0.4)]).unwrap();
        assert!(matches!(max_rate_multi(&s, snr(2.0)), Err(Error::Infeasible(_))));
        assert!(matches!(max_rate_multi(&s, snr(1.0)), Err(Error::Infeasible(_))));
    }

    #[test]
    fn optimal_profile_matches_the_achieving_design() {
        let s = MmseConstraintSet::from_pairs(&[(2.0, 0.4)]).unwrap();
        let (mmse, mi) = optimal_profile(&s, snr(2.5)).unwrap();
        let d = two_layer();
        assert_eq!(mmse, d.mmse_curve());
        assert_eq!(mi, d.mi_curve());
        // four-layer staircase has four nonzero pieces
        let s = MmseConstraintSet::from_pairs(&[(0.8, 0.6), (1.7, 0.4), (2.2, 0.3)]).unwrap();
        let (mmse, _) = optimal_profile(&s, snr(3.0)).unwrap();
        assert_eq!(mmse.segments().len(), 5);
        assert_eq!(mmse.breakpoints(), &[0.8, 1.7, 2.2, 3.0]);
    }

    #[test]
    fn strict_sum_mode() {
        let ok = MmseConstraintSet::from_pairs(&[(1.0, 0.6), (2.0, 0.3)]).unwrap();
        assert!(ok.check_beta_sum().is_ok());
        let over = MmseConstraintSet::from_pairs(&[(1.0, 0.8), (2.0, 0.5)]).unwrap();
        assert!(over.check_beta_sum().is_err());
    }

    #[test]
    fn constraint_set_validation() {
        assert!(MmseConstraintSet::from_pairs(&[]).is_err());
        assert!(MmseConstraintSet::from_pairs(&[(0.0, 0.5)]).is_err());
        assert!(MmseConstraintSet::from_pairs(&[(1.0, 1.5)]).is_err());
        assert!(MmseConstraintSet::from_pairs(&[(1.0, -0.1)]).is_err());
    }

    // strategies for random designs
    fn arb_ladder_and_betas() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (1usize..=4).prop_flat_map(|k| {
            let gaps = prop::collection::vec(0.05f64..2.0, k + 1);
            let raw_betas = prop::collection::vec(0.02f64..0.98, k);
            (gaps, raw_betas).prop_filter_map("betas must separate", |(gaps, mut betas)| {
                let mut points = Vec::with_capacity(gaps.len());
                let mut acc = 0.0;
                for g in gaps {
                    acc += g;
                    points.push(acc);
                }
                betas.sort_by(|a, b| b.partial_cmp(a).unwrap());
                if betas.windows(2).any(|w| w[0] - w[1] < 1e-3) {
                    return None;
                }
                Some((points, betas))
            })
        })
    }

    proptest! {
        #[test]
        fn mi_derivative_is_half_mmse((points, betas) in arb_ladder_and_betas(),
                                      frac in 0.05f64..0.95) {
            let d = design(&points, &betas);
            let mi = d.mi_curve();
            let mmse = d.mmse_curve();
            // sample inside a segment, away from breakpoints
            let last = *points.last().unwrap();
            let gamma = frac * last;
            let h = 1e-5;
            let near_break = std::iter::once(&0.0).chain(points.iter())
                .any(|b| (gamma - b).abs() < 10.0 * h);
            prop_assume!(!near_break && gamma > h);
            let deriv = (mi.eval_at(gamma + h) - mi.eval_at(gamma - h)) / (2.0 * h);
            prop_assert!((deriv - 0.5 * mmse.eval_at(gamma)).abs() < 1e-6,
                "derivative {deriv} vs half mmse {}", 0.5 * mmse.eval_at(gamma));
        }

        #[test]
        fn rate_matches_single_log_of_mapped_alpha(
            s0 in 0.05f64..5.0, ds in 0.01f64..5.0, beta in 0.0f64..=1.0
        ) {
            let s1 = s0 + ds;
            let rate = max_rate_single(snr(s0), snr(s1), beta).unwrap().nats();
            let alpha = beta_to_alpha(snr(s0), snr(s1), beta).unwrap();
            prop_assert!((rate - 0.5 * (alpha * s1).ln_1p()).abs() < 1e-12);
        }

        #[test]
        fn surrogate_of_mapped_alpha_returns_beta(
            s0 in 0.05f64..5.0, ds in 0.01f64..5.0, beta in 1e-4f64..=1.0
        ) {
            let s1 = s0 + ds;
            let alpha = beta_to_alpha(snr(s0), snr(s1), beta).unwrap();
            let d = equivalent_gaussian_variance(snr(s0), snr(s1), alpha).unwrap();
            prop_assert!((d.variance() - beta).abs() < 1e-10,
                "d = {} vs beta = {beta}", d.variance());
        }

        #[test]
        fn inverse_map_round_trips(
            s0 in 0.05f64..5.0, ds in 0.01f64..5.0, beta in 0.0f64..=1.0
        ) {
            let s1 = s0 + ds;
            let alpha = beta_to_alpha(snr(s0), snr(s1), beta).unwrap();
            let back = alpha_to_beta(snr(s0), snr(s1), alpha).unwrap();
            prop_assert!((back - beta).abs() < 1e-9, "beta {beta} -> alpha {alpha} -> {back}");
        }

        #[test]
        fn constraints_bind_with_equality((points, betas) in arb_ladder_and_betas()) {
            let d = design(&points, &betas);
            let curve = d.mmse_curve();
            for (s, b) in points.iter().zip(&betas) {
                // identical expression to the segment formula: must be exact
                prop_assert_eq!(curve.eval_at(*s), b / (1.0 + b * s));
            }
        }

        #[test]
        fn gaussian_surrogate_dominates_the_staircase(
            (points, betas) in arb_ladder_and_betas(), frac in 0.0f64..3.0
        ) {
            let d = design(&points, &betas);
            let curve = d.mmse_curve();
            for (i, (&s, &b)) in points.iter().zip(&betas).enumerate() {
                let gamma = s + frac;
                let level = gaussian_mmse(GaussianSurrogate::new(b).unwrap(), snr(gamma));
                let v = curve.eval_at(gamma);
                prop_assert!(v <= level + 1e-15);
                // equality on the segment's own span
                let next = points.get(i + 1).copied().unwrap_or(f64::INFINITY);
                if gamma < next {
                    prop_assert!((v - level).abs() < 1e-15);
                }
            }
        }

        #[test]
        fn single_rate_is_monotone(
            s0 in 0.05f64..5.0, ds in 0.01f64..5.0, beta in 0.0f64..0.99,
            db in 0.001f64..0.01, ds2 in 0.01f64..1.0
        ) {
            let s1 = s0 + ds;
            let r = max_rate_single(snr(s0), snr(s1), beta).unwrap().nats();
            let r_beta = max_rate_single(snr(s0), snr(s1), (beta + db).min(1.0)).unwrap().nats();
            let r_snr = max_rate_single(snr(s0), snr(s1 + ds2), beta).unwrap().nats();
            prop_assert!(r_beta >= r - 1e-15);
            prop_assert!(r_snr >= r - 1e-15);
        }

        #[test]
        fn tightening_a_constraint_never_raises_the_rate(
            (points, betas) in arb_ladder_and_betas(),
            which in 0usize..4, shrink in 0.01f64..0.9
        ) {
            let k = betas.len();
            let sk = points.last().unwrap() + 0.5;
            let pairs: Vec<(f64, f64)> =
                points[..k].iter().copied().zip(betas.iter().copied()).collect();
            let set = MmseConstraintSet::from_pairs(&pairs).unwrap();
            let (rate, _) = max_rate_multi(&set, snr(sk)).unwrap();
            let mut tightened = pairs.clone();
            let idx = which % k;
            tightened[idx].1 *= 1.0 - shrink;
            let set2 = MmseConstraintSet::from_pairs(&tightened).unwrap();
            let (rate2, _) = max_rate_multi(&set2, snr(sk)).unwrap();
            prop_assert!(rate2.nats() <= rate.nats() + 1e-15);
        }

        #[test]
        fn multi_rate_matches_product_formula((points, betas) in arb_ladder_and_betas()) {
            // independent algebraic route: one product inside a single log
            let k = betas.len();
            let sk = points.last().unwrap() + 0.7;
            let pairs: Vec<(f64, f64)> =
                points[..k].iter().copied().zip(betas.iter().copied()).collect();
            let set = MmseConstraintSet::from_pairs(&pairs).unwrap();
            let (rate, _) = max_rate_multi(&set, snr(sk)).unwrap();
            let s = &points[..k];
            let mut product = (1.0 + s[0]) / (1.0 + betas[0] * s[0]);
            for j in 1..k {
                product *= (1.0 + betas[j - 1] * s[j]) / (1.0 + betas[j] * s[j]);
            }
            let formula = 0.5 * product.ln() + 0.5 * (betas[k - 1] * sk).ln_1p();
            prop_assert!((rate.nats() - formula).abs() < 1e-12,
                "design sum {} vs product formula {formula}", rate.nats());
        }

        #[test]
        fn layer_powers_are_positive_and_sum_to_one((points, betas) in arb_ladder_and_betas()) {
            let d = design(&points, &betas);
            let mut powers = vec![1.0 - d.betas()[0]];
            powers.extend(d.betas().windows(2).map(|w| w[0] - w[1]));
            powers.push(*d.betas().last().unwrap());
            prop_assert!(powers.iter().all(|p| *p > 0.0));
            let total: f64 = powers.iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert_eq!(d.layer_rates().len(), powers.len());
        }

        #[test]
        fn pruning_is_idempotent_and_stable_under_reinsertion(
            pairs in prop::collection::vec((0.1f64..5.0, 0.0f64..=1.0), 1..8)
        ) {
            let set = MmseConstraintSet::from_pairs(&pairs).unwrap();
            let once = prune_constraints(&set);
            let twice = prune_constraints(&once);
            prop_assert_eq!(&once, &twice);
            // canonical shape
            prop_assert!(once.entries().windows(2).all(|w| w[0].snr < w[1].snr));
            prop_assert!(once.entries().windows(2).all(|w| w[0].beta > w[1].beta));
            // re-adding any removed entry changes nothing
            for removed in set.entries().iter()
                .filter(|e| !once.entries().contains(e)) {
                let mut again = once.entries().to_vec();
                again.push(*removed);
                let re = prune_constraints(&MmseConstraintSet::new(again).unwrap());
                prop_assert_eq!(&re, &once);
            }
        }

        #[test]
        fn pruned_design_satisfies_every_removed_constraint(
            pairs in prop::collection::vec((0.1f64..4.0, 0.0f64..=1.0), 1..8)
        ) {
            let set = MmseConstraintSet::from_pairs(&pairs).unwrap();
            let sk = pairs.iter().map(|p| p.0).fold(0.0, f64::max) + 1.0;
            let (_, d) = max_rate_multi(&set, snr(sk)).unwrap();
            let curve = d.mmse_curve();
            // brute force: the achieving design meets every original
            // constraint, including the pruned ones
            for e in set.entries() {
                let level = e.beta / (1.0 + e.beta * e.snr);
                prop_assert!(curve.eval_at(e.snr) <= level + 1e-12,
                    "constraint ({}, {}) violated: {} > {level}",
                    e.snr, e.beta, curve.eval_at(e.snr));
            }
        }
    }
}
