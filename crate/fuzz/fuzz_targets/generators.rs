#![no_main]
use isingcheck::checks::parse_generators;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(gens) = parse_generators(data) {
        assert!(!gens.is_empty());
        assert!(gens.iter().all(|g| g.is_homogeneous()));
    }
});
