#![no_main]

use engel_cli::cache::decode_blob;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // corrupt cache entries must be rejected, never trusted or panicked on;
    // shapes match the Alt(5) graph the seed corpus was generated from
    let _ = decode_blob(data, 60, 5);
    // and against a shape the data cannot possibly satisfy
    let _ = decode_blob(data, 7, 3);
});
