#![no_main]

use libfuzzer_sys::fuzz_target;
use riley::parse::parse_order;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(o) = parse_order(s) {
            assert!(o.at_least(2));
        }
    }
});
