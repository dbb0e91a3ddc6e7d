#![no_main]

use libfuzzer_sys::fuzz_target;
use nconic::io::{hyperplane_to_json, parse_hyperplane, write_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = parse_hyperplane(s) {
            let _ = write_json(&hyperplane_to_json(&p), true);
        }
    }
});
