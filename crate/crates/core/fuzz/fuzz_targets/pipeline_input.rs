#![no_main]

use conclab_core::io::PipelineInput;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = PipelineInput::from_json(s);
    }
});
