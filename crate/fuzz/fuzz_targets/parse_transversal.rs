#![no_main]

use latin_equitable::format::{parse_transversal, write_transversal};
use latin_equitable::LatinSquare;
use libfuzzer_sys::fuzz_target;

// first byte picks the order of the cyclic square, the rest is the text
fuzz_target!(|data: &[u8]| {
    let Some((&order, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let sq = LatinSquare::cyclic(usize::from(order % 9) + 1);
    if let Ok(t) = parse_transversal(&sq, text) {
        assert_eq!(parse_transversal(&sq, &write_transversal(&t)).unwrap(), t);
    }
});
