#![no_main]

use crosstile::format::{parse_code, write_code};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(code) = parse_code(text) {
        let written = write_code(&code);
        let again = parse_code(&written).expect("written code parses");
        assert_eq!(again, code);
        assert_eq!(write_code(&again), written);
    }
});
