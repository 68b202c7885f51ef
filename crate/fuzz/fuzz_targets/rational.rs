#![no_main]
use isingcheck::rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(x) = rational::parse(data) {
        assert_eq!(rational::parse(&rational::format(&x)).unwrap(), x);
    }
});
