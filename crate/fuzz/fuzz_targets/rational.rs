#![no_main]

use lamiq::exactnum::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = s.parse::<Rational>() {
        let back: Rational = q.to_string().parse().expect("display must round-trip");
        assert_eq!(back, q);
    }
});
