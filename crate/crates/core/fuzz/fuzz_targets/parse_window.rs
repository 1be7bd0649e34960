#![no_main]

use libfuzzer_sys::fuzz_target;
use riley::parse::parse_window;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = parse_window(s) {
            assert!(w.width() > 0.0 && w.height() > 0.0);
            // Display output parses back to the same window
            assert_eq!(parse_window(&w.to_string()).unwrap(), w);
        }
    }
});
