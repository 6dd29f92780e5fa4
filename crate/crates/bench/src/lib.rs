//! Benchmark-only crate; see `benches/series.rs`.
