#![no_main]

use libfuzzer_sys::fuzz_target;
use nconic::conics::{sample_points, SheetTag};
use nconic::io::{conic_to_json, parse_conic, write_json};
use nconic::ConicKind;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_conic(s) else { return };
    // anything accepted must survive a write/read cycle unchanged
    let text = write_json(&conic_to_json(&spec), false);
    assert_eq!(parse_conic(&text).as_ref(), Ok(&spec), "{text}");
    let sheet = match spec.kind() {
        ConicKind::HyperboloidTwoSheets | ConicKind::Cone => SheetTag::Sheet1,
        _ => SheetTag::Whole,
    };
    let _ = sample_points(&spec, sheet, 4, 0);
});
