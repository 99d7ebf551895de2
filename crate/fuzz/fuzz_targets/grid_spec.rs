#![no_main]

use libfuzzer_sys::fuzz_target;
use mmse_codes_cli::parse::{parse_grid, GridKind};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_grid(text) else { return };
    // bound the expansion so a single exec stays cheap
    let cheap = match spec.kind {
        GridKind::Count(n) => n <= 10_000,
        GridKind::Step(h) => (spec.stop - spec.start) / h <= 10_000.0,
    };
    if cheap {
        let pts = spec.materialize();
        assert!(!pts.is_empty());
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|p| p.is_finite()));
    }
});
