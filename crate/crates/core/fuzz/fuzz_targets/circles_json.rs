#![no_main]

use libfuzzer_sys::fuzz_target;
use nconic::apollonius::{solve_apollonius, ApolloniusOptions};
use nconic::io::{apollonius_to_json, parse_circles, write_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(circles) = parse_circles(s) else { return };
    if let Ok(sol) = solve_apollonius(&circles, &ApolloniusOptions::default()) {
        let _ = write_json(&apollonius_to_json(&sol), false);
    }
});
