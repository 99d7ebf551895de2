#![no_main]

use libfuzzer_sys::fuzz_target;
use mmse_codes::gaussian::SnrPoint;
use mmse_codes::oracle::{conditional_mean, DiscreteCodebook};

fuzz_target!(|data: &[u8]| {
    let Ok(words) = serde_json::from_slice::<Vec<Vec<f64>>>(data) else { return };
    // keep the posterior evaluation cheap
    if words.len() > 64 || words.iter().any(|w| w.len() > 16) {
        return;
    }
    if let Ok(cb) = DiscreteCodebook::new(words) {
        let pv = cb.prior_variance();
        assert!(pv.is_finite() && (0.0..=1.0 + 1e-9).contains(&pv));
        let y = vec![0.25; cb.dimension()];
        let mean = conditional_mean(&cb, SnrPoint::new(1.0).unwrap(), &y);
        assert!(mean.iter().all(|m| m.is_finite()));
    }
});
