#![no_main]

use libfuzzer_sys::fuzz_target;
use riley::schema::RegionRecord;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(rec) = RegionRecord::from_json(s) {
            let again = RegionRecord::from_json(&rec.to_json()).unwrap();
            assert_eq!(again, rec);
        }
    }
});
