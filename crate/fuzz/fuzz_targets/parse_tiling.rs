#![no_main]

use crosstile::format::{parse_tiling, write_tiling};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(tiling) = parse_tiling(text) {
        let written = write_tiling(&tiling);
        let again = parse_tiling(&written).expect("written tiling parses");
        assert_eq!(again, tiling);
        // small windows also go through the verifier
        if tiling.window_cells().is_ok_and(|c| c <= 1 << 16) {
            let _ = crosstile::verify(&tiling);
        }
    }
});
