//! Library side of the CLI: machine-readable reports, the on-disk neighbor
//! cache, and the verification suites behind `engel verify`.

pub mod cache;
pub mod report;
pub mod suites;
