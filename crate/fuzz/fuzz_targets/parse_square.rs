#![no_main]

use latin_equitable::format::{parse_square, write_square};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sq) = parse_square(text) {
        assert_eq!(parse_square(&write_square(&sq)).unwrap(), sq);
    }
});
