#![no_main]

use libfuzzer_sys::fuzz_target;
use nconic::cascade::{intersect_bisectors, sample_result};
use nconic::io::{cascade_to_json, parse_balls, write_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(balls) = parse_balls(s) else { return };
    if let Ok(r) = intersect_bisectors(&balls) {
        let _ = write_json(&cascade_to_json(&r, true), false);
        let _ = sample_result(&r, 4, 0);
    }
});
