#![no_main]

use lamiq::symmetry::SignedPerm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<SignedPerm>() {
        let back: SignedPerm = p.to_string().parse().expect("display must round-trip");
        assert_eq!(back, p);
    }
});
