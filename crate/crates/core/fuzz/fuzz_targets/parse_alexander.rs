#![no_main]

use conclab_core::parse::parse_alexander;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_alexander(s) {
        assert!(f.poly().is_symmetric());
        assert_eq!(f.poly().eval_at_one().abs(), 1);
    }
});
