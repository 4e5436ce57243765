#![no_main]

// Every JSON document type the CLI reads from files.
use conclab_core::abgroup::FiniteAbelianGroup;
use conclab_core::dinv::{DTable, VSequence};
use conclab_core::io::{canonical_json, from_json_str};
use conclab_core::seifert::JumpFunction;
use libfuzzer_sys::fuzz_target;

fn round_trip<T>(s: &str)
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    if let Ok(v) = from_json_str::<T>(s) {
        let back: T = from_json_str(&canonical_json(&v)).unwrap();
        assert_eq!(back, v);
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    round_trip::<FiniteAbelianGroup>(s);
    round_trip::<VSequence>(s);
    round_trip::<DTable>(s);
    round_trip::<JumpFunction>(s);
});
