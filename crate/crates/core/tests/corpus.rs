//! Replays the fuzz corpus seeds through the same checks the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use riley::parse::{parse_complex, parse_order, parse_window};
use riley::schema::RegionRecord;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter_map(|p| {
            let bytes = fs::read(&p).unwrap();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            String::from_utf8(bytes).ok().map(|s| (name, s))
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn complex_seeds() {
    let mut ok = 0;
    for (_, s) in seeds("parse_complex") {
        if let Ok(z) = parse_complex(&s) {
            assert!(z.re.is_finite() && z.im.is_finite());
            ok += 1;
        }
    }
    assert!(ok > 0);
}

#[test]
fn order_seeds() {
    for (name, s) in seeds("parse_order") {
        let r = parse_order(&s);
        match name.as_str() {
            "one" | "overflow" => assert!(r.is_err(), "{name}"),
            _ => assert!(r.unwrap().at_least(2), "{name}"),
        }
    }
}

#[test]
fn window_seeds() {
    for (name, s) in seeds("parse_window") {
        match parse_window(&s) {
            Ok(w) => {
                assert!(w.width() > 0.0 && w.height() > 0.0);
                assert_eq!(parse_window(&w.to_string()).unwrap(), w);
            }
            Err(_) => assert!(matches!(name.as_str(), "empty" | "short"), "{name}"),
        }
    }
}

#[test]
fn region_json_seeds() {
    for (name, s) in seeds("region_json") {
        match RegionRecord::from_json(&s) {
            Ok(rec) => assert_eq!(RegionRecord::from_json(&rec.to_json()).unwrap(), rec),
            Err(_) => assert_eq!(name, "partial.json"),
        }
    }
}
