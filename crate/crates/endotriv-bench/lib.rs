//! Benchmark crate; see `benches/main.rs`.
