#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // The instance parser must never panic, whatever the bytes: every
    // input either validates fully or returns a located diagnostic.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = sheaftree::instance::parse_instance(text);
    }
});
