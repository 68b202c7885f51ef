#![no_main]
use isingcheck_cli::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(cfg) = RunConfig::parse(data) {
        assert!(cfg.qseries >= 1 && cfg.hilbert >= 1 && cfg.groebner >= 1);
    }
});
