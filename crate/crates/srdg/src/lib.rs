//! File formats, the external MILP driver, the benchmark harness and the
//! command line for smooth routing in decaying graphs. The algorithms live
//! in `srdg-core`.

pub mod backend;
pub mod bench;
pub mod engine;
pub mod io;
pub mod sources;
