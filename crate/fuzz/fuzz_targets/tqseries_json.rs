#![no_main]
use isingcheck::characters::TQSeries;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(s) = TQSeries::from_json_str(data) {
        let back = TQSeries::from_json_str(&s.to_json_string()).expect("re-encoded series parses");
        assert!(back.compare(&s).equal());
    }
});
