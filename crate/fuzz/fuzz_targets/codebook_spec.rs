#![no_main]

use libfuzzer_sys::fuzz_target;
use mmse_codes_cli::parse::{parse_codebook_spec, CodebookSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_codebook_spec(text) else { return };
    // resolve only the hermetic variants: no filesystem, no huge allocations
    match &spec {
        CodebookSpec::Bpsk | CodebookSpec::Inline(_) => {
            let _ = spec.resolve(7);
        }
        CodebookSpec::Random { m, n } if m * n <= 1 << 12 => {
            let cb = spec.resolve(7).unwrap();
            assert!(cb.max_power() <= 1.0 + 1e-9);
        }
        _ => {}
    }
});
