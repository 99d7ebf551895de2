//! Seeded Monte Carlo estimators for codebook MMSE and mutual information.
//!
//! Sampling is partitioned into fixed-size chunks; chunk `c` draws from an
//! independent ChaCha stream derived from the caller's seed, and chunk sums
//! are reduced in index order. Estimates are therefore bit-identical for a
//! given `(seed, parameters)` regardless of how many threads execute chunks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::gaussian::SnrPoint;
use crate::numeric::logsumexp;
use crate::oracle::DiscreteCodebook;

/// Fixed chunking schedule; part of the deterministic contract.
const CHUNK_SAMPLES: u64 = 8192;

/// A Monte Carlo estimate with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Posterior mean `E[X | Y = y]` under the uniform prior and unit-variance
/// Gaussian noise at SNR `gamma`. Weights are computed in the log domain with
/// max subtraction, so they never jointly underflow; the result lies in the
/// convex hull of the codewords.
pub fn conditional_mean(cb: &DiscreteCodebook, gamma: SnrPoint, observation: &[f64]) -> Vec<f64> {
    assert_eq!(observation.len(), cb.dimension(), "observation dimension mismatch");
    let sqrt_gamma = gamma.value().sqrt();
    let mut log_w = Vec::with_capacity(cb.len());
    posterior_log_weights(cb, sqrt_gamma, observation, &mut log_w);
    let mut mean = vec![0.0; cb.dimension()];
    weighted_mean(cb, &log_w, &mut mean);
    mean
}

fn posterior_log_weights(cb: &DiscreteCodebook, sqrt_gamma: f64, y: &[f64], out: &mut Vec<f64>) {
    out.clear();
    for w in cb.words() {
        let mut d2 = 0.0;
        for (yi, xi) in y.iter().zip(w) {
            let d = yi - sqrt_gamma * xi;
            d2 += d * d;
        }
        out.push(-0.5 * d2);
    }
}

fn weighted_mean(cb: &DiscreteCodebook, log_w: &[f64], mean: &mut [f64]) {
    let m = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    mean.fill(0.0);
    for (lw, w) in log_w.iter().zip(cb.words()) {
        let wt = (lw - m).exp();
        total += wt;
        for (acc, x) in mean.iter_mut().zip(w) {
            *acc += wt * x;
        }
    }
    for acc in mean.iter_mut() {
        *acc /= total;
    }
}

/// Unbiased estimate of the per-dimension MMSE
/// `(1/n) E||X - E[X|Y]||^2` at SNR `gamma`, from `samples` independent
/// (codeword, noise) draws.
pub fn mmse_monte_carlo(
    cb: &DiscreteCodebook,
    gamma: SnrPoint,
    samples: u64,
    seed: u64,
) -> MonteCarloEstimate {
    run_chunked(cb, gamma, samples, seed, SampleStatistic::SquaredError)
}

/// Estimate of the normalized mutual information `(1/n) E[ln p(y|x)/p(y)]`
/// in nats per dimension, with `p(y)` the uniform codeword mixture.
pub fn mi_monte_carlo(
    cb: &DiscreteCodebook,
    gamma: SnrPoint,
    samples: u64,
    seed: u64,
) -> MonteCarloEstimate {
    run_chunked(cb, gamma, samples, seed, SampleStatistic::InformationDensity)
}

#[derive(Clone, Copy)]
enum SampleStatistic {
    SquaredError,
    InformationDensity,
}

fn run_chunked(
    cb: &DiscreteCodebook,
    gamma: SnrPoint,
    samples: u64,
    seed: u64,
    stat: SampleStatistic,
) -> MonteCarloEstimate {
    assert!(samples >= 1, "need at least one sample");
    let chunks = samples.div_ceil(CHUNK_SAMPLES);
    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_SAMPLES.min(samples - c * CHUNK_SAMPLES);
            chunk_sums(cb, gamma, count, seed, c, stat)
        })
        .collect();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for (s, s2) in partials {
        sum += s;
        sum_sq += s2;
    }
    let n = samples as f64;
    let value = sum / n;
    let std_error = if samples >= 2 {
        let var = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    MonteCarloEstimate { value, std_error, samples, seed }
}

fn chunk_sums(
    cb: &DiscreteCodebook,
    gamma: SnrPoint,
    count: u64,
    seed: u64,
    chunk: u64,
    stat: SampleStatistic,
) -> (f64, f64) {
    // stream 0 is reserved for codebook generation from the same seed
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(chunk + 1);
    let n = cb.dimension();
    let sqrt_gamma = gamma.value().sqrt();
    let ln_m = (cb.len() as f64).ln();
    let mut y = vec![0.0; n];
    let mut log_w = Vec::with_capacity(cb.len());
    let mut mean = vec![0.0; n];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..count {
        let idx = rng.random_range(0..cb.len());
        let x = cb.word(idx);
        for (yi, xi) in y.iter_mut().zip(x) {
            let noise: f64 = StandardNormal.sample(&mut rng);
            *yi = sqrt_gamma * xi + noise;
        }
        posterior_log_weights(cb, sqrt_gamma, &y, &mut log_w);
        let v = match stat {
            SampleStatistic::SquaredError => {
                weighted_mean(cb, &log_w, &mut mean);
                let mut err = 0.0;
                for (xi, mi) in x.iter().zip(&mean) {
                    let d = xi - mi;
                    err += d * d;
                }
                err / n as f64
            }
            SampleStatistic::InformationDensity => {
                (log_w[idx] - logsumexp(&log_w) + ln_m) / n as f64
            }
        };
        sum += v;
        sum_sq += v * v;
    }
    (sum, sum_sq)
}
