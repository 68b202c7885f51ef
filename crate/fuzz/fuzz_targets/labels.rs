#![no_main]
use isingcheck::diffalg::ElementName;
use isingcheck::polyfamilies::Sector;
use isingcheck_cli::Format;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(name) = ElementName::parse(data) {
        assert_eq!(ElementName::parse(name.name()).unwrap(), name);
    }
    if let Ok(s) = Sector::parse(data) {
        assert_eq!(Sector::parse(s.name()).unwrap(), s);
    }
    let _ = data.parse::<Format>();
});
