#![no_main]

use lamiq::lattice::LatticeSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = LatticeSpec::parse(s) {
        let _ = spec.family();
        let _ = spec.group_spec();
    }
});
