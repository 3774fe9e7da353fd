//! Holds the acceptance suite in `tests/acceptance.rs`, which prints one
//! PASS/FAIL line per criterion:
//!
//! ```text
//! cargo test -p satcheck-validation --test acceptance
//! ```
