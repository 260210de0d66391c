#![no_main]

use engel_graph::graph::{export_json, import_json, scc};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // imports either fail cleanly or produce a graph whose own export
    // re-imports with identical component structure
    let Ok(d) = import_json(data) else {
        return;
    };
    if d.n_vertices() > 2000 {
        return;
    }
    let r = scc(None, None, &d);
    let doc = export_json(&d, None, None, Some(&r));
    let d2 = import_json(doc.as_bytes()).expect("own export re-imports");
    let r2 = scc(None, None, &d2);
    assert_eq!(r.count, r2.count);
    assert_eq!(r.empty, r2.empty);
});
