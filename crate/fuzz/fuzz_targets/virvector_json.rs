#![no_main]
use isingcheck::virasoro::VirVector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(v) = VirVector::from_json_str(data) {
        let back = VirVector::from_json_str(&v.to_json_string()).expect("re-encoded vector parses");
        assert_eq!(back, v);
        // keep the mode action cheap: only small vectors
        if v.terms().count() <= 4 && v.degree().is_some_and(|d| d <= 12) {
            let _ = v.apply_mode(1);
        }
    }
});
