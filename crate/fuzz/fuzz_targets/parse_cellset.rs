#![no_main]

use latin_equitable::format::{parse_cellset, write_cellset};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = parse_cellset(text) {
        assert_eq!(parse_cellset(&write_cellset(&set)).unwrap(), set);
    }
});
