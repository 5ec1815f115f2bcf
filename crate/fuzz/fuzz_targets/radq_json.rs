#![no_main]

use lamiq::exactnum::radq::parse_radq_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_radq_json(s) {
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(parse_radq_json(&text).unwrap(), x);
    }
});
