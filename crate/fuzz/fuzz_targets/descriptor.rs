#![no_main]

use engel_graph::grp::GroupSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    // parsing never panics; accepted descriptors round-trip through Display
    if let Ok(spec) = GroupSpec::parse(s) {
        let printed = spec.to_string();
        let again = GroupSpec::parse(&printed).expect("canonical form reparses");
        assert_eq!(spec, again, "descriptor round trip");
    }
});
