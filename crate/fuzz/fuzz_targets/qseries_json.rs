#![no_main]
use isingcheck::qseries::QSeries;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(s) = QSeries::from_json_str(data) {
        let back = QSeries::from_json_str(&s.to_json_string()).expect("re-encoded series parses");
        assert!(back.compare(&s).equal());
        assert_eq!(back.trunc(), s.trunc());
    }
});
