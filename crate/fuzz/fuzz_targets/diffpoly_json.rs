#![no_main]
use isingcheck::diffalg::DiffPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(f) = DiffPoly::from_json_str(data) {
        let back = DiffPoly::from_json_str(&f.to_json_string()).expect("re-encoded polynomial parses");
        assert_eq!(back, f);
        if let Ok(lm) = f.leading_monomial() {
            assert_eq!(Some(lm.weight()), f.weight());
        }
    }
});
