//! Holds the end-to-end acceptance run in `tests/acceptance.rs`; it lives in its
//! own package so that it runs after the core crate's own tests.
