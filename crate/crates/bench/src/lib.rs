//! Benchmarks for the `lamplighter` crate; see `benches/`.
