#![no_main]

use latin_equitable::format::{parse_census, write_census};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(census) = parse_census(text) {
        assert_eq!(parse_census(&write_census(&census)).unwrap(), census);
    }
});
