#![no_main]

use crosstile::format::{parse_lattice, write_lattice};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(lattice) = parse_lattice(text) {
        let again = parse_lattice(&write_lattice(&lattice)).expect("written lattice parses");
        assert_eq!(again.generator(), lattice.generator());
        assert_eq!(again.volume(), lattice.volume());
        let _ = lattice.contains(&vec![1; lattice.dim()]);
    }
});
