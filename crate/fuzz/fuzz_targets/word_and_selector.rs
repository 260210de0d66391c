#![no_main]

use engel_graph::delta::SubgroupSel;
use engel_graph::engel::Word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Some(w) = Word::parse(s) {
        // accepted words round-trip (except the `commuting` alias for engel:1)
        let printed = w.to_string();
        assert_eq!(Word::parse(&printed), Some(w));
    }
    let _ = SubgroupSel::parse(s);
});
