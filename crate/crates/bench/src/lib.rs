//! Fixtures for the benchmarks.

use std::path::PathBuf;

use logfront_core::exactalg::{poly_parse, SparsePoly};

/// A polynomial from the shared `data/` directory.
pub fn fixture(name: &str) -> SparsePoly {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    poly_parse(text.trim()).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn line() -> SparsePoly {
    poly_parse("z + w + 1").expect("literal")
}
