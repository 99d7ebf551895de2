//! Finite codebooks under the per-codeword average power constraint.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Slack for the power check: rescaled codebooks may overshoot the unit
/// constraint by a few ulps.
const POWER_SLACK: f64 = 1e-12;

/// `M` real codewords of dimension `n` under a uniform prior, each obeying
/// the average power constraint `(1/n) * sum_i x_i^2 <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCodebook {
    // row-major, stride n
    words: Vec<f64>,
    n: usize,
    m: usize,
}

impl DiscreteCodebook {
    pub fn new(codewords: Vec<Vec<f64>>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::invalid("codebook needs at least one codeword"));
        }
        let n = codewords[0].len();
        if n == 0 {
            return Err(Error::invalid("codewords must have positive dimension"));
        }
        let mut words = Vec::with_capacity(codewords.len() * n);
        for (i, w) in codewords.iter().enumerate() {
            if w.len() != n {
                return Err(Error::invalid(format!(
                    "codeword {i} has dimension {}, expected {n}",
                    w.len()
                )));
            }
            if w.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!("codeword {i} has a non-finite entry")));
            }
            let power = w.iter().map(|x| x * x).sum::<f64>() / n as f64;
            if power > 1.0 + POWER_SLACK {
                return Err(Error::invalid(format!(
                    "codeword {i} violates the average power constraint: power = {power}"
                )));
            }
            words.extend_from_slice(w);
        }
        let m = codewords.len();
        Ok(DiscreteCodebook { words, n, m })
    }

    /// The unit-power binary constellation {+1, -1} in one dimension.
    pub fn bpsk() -> Self {
        DiscreteCodebook { words: vec![1.0, -1.0], n: 1, m: 2 }
    }

    /// A single-codeword codebook.
    pub fn single(word: Vec<f64>) -> Result<Self> {
        Self::new(vec![word])
    }

    /// `m` codewords with i.i.d. standard Gaussian entries, jointly rescaled
    /// so the largest codeword power is exactly one.
    pub fn random_gaussian(m: usize, n: usize, seed: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::invalid("random codebook needs m >= 1 and n >= 1"));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut words: Vec<f64> = (0..m * n).map(|_| StandardNormal.sample(&mut rng)).collect();
        rescale_to_unit_power(&mut words, n);
        Ok(DiscreteCodebook { words, n, m })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one codeword
    }

    pub fn word(&self, i: usize) -> &[f64] {
        &self.words[i * self.n..(i + 1) * self.n]
    }

    pub fn words(&self) -> impl Iterator<Item = &[f64]> {
        self.words.chunks_exact(self.n)
    }

    /// Per-dimension prior variance `(1/n) * E||X - E X||^2` under the
    /// uniform prior; this is the MMSE at zero SNR.
    pub fn prior_variance(&self) -> f64 {
        let mut mean = vec![0.0; self.n];
        for w in self.words() {
            for (m, x) in mean.iter_mut().zip(w) {
                *m += x;
            }
        }
        for m in &mut mean {
            *m /= self.m as f64;
        }
        let mut acc = 0.0;
        for w in self.words() {
            for (m, x) in mean.iter().zip(w) {
                let d = x - m;
                acc += d * d;
            }
        }
        acc / (self.m * self.n) as f64
    }

    /// Largest per-codeword average power (at most one).
    pub fn max_power(&self) -> f64 {
        self.words()
            .map(|w| w.iter().map(|x| x * x).sum::<f64>() / self.n as f64)
            .fold(0.0, f64::max)
    }
}

fn rescale_to_unit_power(words: &mut [f64], n: usize) {
    let max_power = words
        .chunks_exact(n)
        .map(|w| w.iter().map(|x| x * x).sum::<f64>() / n as f64)
        .fold(0.0f64, f64::max);
    if max_power > 0.0 {
        let scale = 1.0 / max_power.sqrt();
        for x in words.iter_mut() {
            *x *= scale;
        }
    }
}

/// A two-layer superposition sample: a common codebook of power about
/// `1 - beta`, a private codebook of power about `beta`, and their sum
/// codebook (duplicates removed), jointly rescaled to respect the power
/// constraint.
#[derive(Debug, Clone)]
pub struct LayeredCodebook {
    pub common: DiscreteCodebook,
    pub private: DiscreteCodebook,
    pub combined: DiscreteCodebook,
}

impl LayeredCodebook {
    pub fn sample_two_layer(
        beta: f64,
        m_common: usize,
        m_private: usize,
        n: usize,
        seed: u64,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) || beta == 0.0 {
            return Err(Error::invalid(format!("beta must lie in (0, 1), got {beta}")));
        }
        if m_common == 0 || m_private == 0 || n == 0 {
            return Err(Error::invalid("layer sizes and dimension must be positive"));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let common_sd = (1.0 - beta).sqrt();
        let private_sd = beta.sqrt();
        let mut common: Vec<f64> = (0..m_common * n)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                common_sd * z
            })
            .collect();
        let mut private: Vec<f64> = (0..m_private * n)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                private_sd * z
            })
            .collect();

        let mut combined: Vec<Vec<f64>> = Vec::with_capacity(m_common * m_private);
        for u in common.chunks_exact(n) {
            for v in private.chunks_exact(n) {
                combined.push(u.iter().zip(v).map(|(a, b)| a + b).collect());
            }
        }
        combined.sort_by(|a, b| a.partial_cmp(b).expect("finite codewords"));
        combined.dedup();

        // one shared scale keeps x = u + v intact
        let max_power = combined
            .iter()
            .map(|w| w.iter().map(|x| x * x).sum::<f64>() / n as f64)
            .fold(0.0f64, f64::max);
        if max_power > 1.0 {
            let scale = 1.0 / max_power.sqrt();
            for x in common.iter_mut().chain(private.iter_mut()) {
                *x *= scale;
            }
            for w in &mut combined {
                for x in w.iter_mut() {
                    *x *= scale;
                }
            }
        }

        Ok(LayeredCodebook {
            common: DiscreteCodebook { words: common, n, m: m_common },
            private: DiscreteCodebook { words: private, n, m: m_private },
            combined: DiscreteCodebook::new(combined)?,
        })
    }
}
