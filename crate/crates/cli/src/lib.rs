//! Library surface of the qci command-line tool: job grammar, dispatch, and
//! the pinned regression ledger. The binary in `main.rs` is a thin wrapper
//! so integration tests can drive everything in-process.

pub mod grammar;
pub mod jobs;
pub mod paper;
