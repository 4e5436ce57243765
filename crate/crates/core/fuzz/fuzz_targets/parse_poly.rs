#![no_main]

use conclab_core::parse::parse_poly_any;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_poly_any(s) {
        // the coefficient JSON form must read back to the same polynomial
        let json = conclab_core::io::canonical_json(&p);
        assert_eq!(parse_poly_any(&json).unwrap(), p);
    }
});
