#![no_main]

use libfuzzer_sys::fuzz_target;
use nconic::io::{parse_conic, parse_hyperplane, slice_to_json, write_json};
use nconic::slicer::{sample_slice, slice};

// conic JSON, a newline, then plane JSON
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Some((conic, plane)) = s.split_once('\n') else {
        return;
    };
    let (Ok(spec), Ok(plane)) = (parse_conic(conic), parse_hyperplane(plane)) else {
        return;
    };
    if let Ok(r) = slice(&spec, &plane) {
        let _ = write_json(&slice_to_json(&r), false);
        let _ = sample_slice(&r, 4, 0);
    }
});
