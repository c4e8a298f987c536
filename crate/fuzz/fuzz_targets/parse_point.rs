#![no_main]

use crosstile::format::parse_point;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(point) = parse_point(text) {
        let spaced: Vec<String> = point.iter().map(|v| v.to_string()).collect();
        assert_eq!(parse_point(&spaced.join(" ")).expect("reparses"), point);
    }
});
