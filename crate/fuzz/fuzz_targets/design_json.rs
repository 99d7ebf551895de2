#![no_main]

use libfuzzer_sys::fuzz_target;
use mmse_codes::gaussian::SnrPoint;
use mmse_codes_cli::design_io::DesignDoc;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = DesignDoc::from_json(text) else { return };
    // a document that parses and validates must evaluate cleanly everywhere
    if let Ok(design) = doc.to_design() {
        let mmse = design.mmse_curve();
        let mi = design.mi_curve();
        for g in [0.0, 0.5, 1.0, 10.0, 1e6] {
            let gamma = SnrPoint::new(g).unwrap();
            let m = mmse.eval(gamma);
            let i = mi.eval(gamma);
            assert!(m.is_finite() && (0.0..=1.0 + 1e-9).contains(&m));
            assert!(i.is_finite() && i >= 0.0);
        }
        for &b in mmse.breakpoints() {
            let gamma = SnrPoint::new(b).unwrap();
            let _ = mmse.eval_left_limit(gamma);
            let _ = mmse.eval(gamma);
        }
    }
});
