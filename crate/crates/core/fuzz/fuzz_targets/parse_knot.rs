#![no_main]

use conclab_core::io::{canonical_json, from_json_str};
use conclab_core::parse::parse_knot;
use conclab_core::seifert::SeifertMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_knot(s) {
        let back: SeifertMatrix = from_json_str(&canonical_json(&a)).unwrap();
        assert_eq!(back.entries(), a.entries());
    }
});
