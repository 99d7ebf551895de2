#![no_main]

use libfuzzer_sys::fuzz_target;
use mmse_codes_cli::config_file::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = parse_config(text) {
        // typed getters must never panic on accepted files
        let _ = cfg.get("snrs");
        let _ = cfg.get_parsed::<u64>("seed");
        let _ = cfg.get_parsed::<f64>("pe");
        let _ = cfg.get_bool("db");
        let _ = cfg.get_bool("strict-sum");
    }
});
