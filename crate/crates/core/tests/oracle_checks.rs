//! Cross-module checks that tie the Monte Carlo oracles to the closed-form
//! machinery: sampled superposition codebooks against the ideal staircase,
//! and the crossing verdict over randomized small instances.

use mmse_codes::config::Config;
use mmse_codes::gaussian::{GaussianSurrogate, SnrPoint};
use mmse_codes::oracle::{
    mmse_monte_carlo, verify_immse_identity, verify_single_crossing, DiscreteCodebook,
    LayeredCodebook,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn snr(v: f64) -> SnrPoint {
    SnrPoint::new(v).unwrap()
}

/// Below the first ladder SNR the ideal staircase sits at the uncoded level
/// 1/(1+gamma); sampled finite codebooks approach it from below as the
/// dimension and layer sizes grow. Trend only — no rate is asserted.
#[test]
fn layered_codebooks_climb_toward_the_uncoded_mmse() {
    let beta = 0.4;
    let gamma = snr(1.0);
    let ideal = 0.5; // 1/(1+1)
    let mut distances = Vec::new();
    // layer sizes track exp(n * layer rate) for the (2, 2.5), beta = 0.4 design
    for (n, m_common, m_private) in [(2usize, 2usize, 2usize), (4, 3, 4), (8, 8, 16)] {
        let layered = LayeredCodebook::sample_two_layer(beta, m_common, m_private, n, 99).unwrap();
        let est = mmse_monte_carlo(&layered.combined, gamma, 60_000, 17);
        assert!(
            est.value <= ideal + 3.0 * est.std_error,
            "n = {n}: estimate {} above the uncoded level",
            est.value
        );
        distances.push((ideal - est.value, est.std_error));
    }
    let (d_small, se_small) = distances[0];
    let (d_large, se_large) = distances[distances.len() - 1];
    assert!(
        d_large < d_small + 3.0 * (se_small + se_large),
        "no approach trend: distances {distances:?}"
    );
}

/// Randomized small instances: the q-gap verdict holds except for rare
/// statistical flukes. The acceptance suite runs the full-size version; this
/// is the fast smoke-level sample.
#[test]
fn crossing_verdicts_pass_on_random_small_instances() {
    let cfg = Config::default();
    let grid = [0.2, 0.6, 1.0, 1.6, 2.4, 3.2];
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let instances = 50usize;
    let mut passes = 0usize;
    for i in 0..instances as u64 {
        let m = rng.random_range(2..=16);
        let n = rng.random_range(1..=4);
        let sigma2 = rng.random_range(0.0..=1.0);
        let cb = DiscreteCodebook::random_gaussian(m, n, 1000 + i).unwrap();
        let var = GaussianSurrogate::new(sigma2).unwrap();
        let report = verify_single_crossing(&cb, var, &grid, 20_000, 5000 + i, &cfg).unwrap();
        passes += report.pass as usize;
    }
    assert!(passes >= instances - 2, "only {passes}/{instances} verdicts passed");
}

/// Estimated MMSE stays inside [0, prior variance] and never rises along the
/// SNR axis, up to the three-sigma allowance.
#[test]
fn estimated_mmse_is_bounded_and_nonincreasing() {
    let grid = [0.0, 0.4, 0.9, 1.5, 2.2, 3.0, 4.5];
    for seed in [5u64, 6, 7] {
        let cb = DiscreteCodebook::random_gaussian(10, 3, seed).unwrap();
        let pv = cb.prior_variance();
        let estimates: Vec<_> = grid
            .iter()
            .enumerate()
            .map(|(j, &g)| mmse_monte_carlo(&cb, snr(g), 30_000, 50 * seed + j as u64))
            .collect();
        for est in &estimates {
            assert!(est.value >= 0.0);
            assert!(est.value <= pv + 3.0 * est.std_error + 1e-12);
            assert!(est.value <= 1.0 + 3.0 * est.std_error);
        }
        for w in estimates.windows(2) {
            let slack = 3.0 * (w[0].std_error.powi(2) + w[1].std_error.powi(2)).sqrt();
            assert!(
                w[1].value <= w[0].value + slack,
                "estimate rose: {} -> {} (slack {slack})",
                w[0].value,
                w[1].value
            );
        }
    }
}

#[test]
fn identity_holds_for_random_codebooks_within_budget() {
    let cfg = Config::default();
    for seed in 0..3u64 {
        let cb = DiscreteCodebook::random_gaussian(8, 2, 100 + seed).unwrap();
        let r = verify_immse_identity(&cb, snr(1.5), 16, 50_000, seed, &cfg).unwrap();
        assert!(
            r.pass,
            "seed {seed}: residual {} stat {} quad {}",
            r.residual, r.stat_budget, r.quad_budget
        );
    }
}
