#![no_main]

use latin_equitable::format::{parse_partition, write_partition};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_partition(text) {
        assert_eq!(parse_partition(&write_partition(&p)).unwrap(), p);
    }
});
