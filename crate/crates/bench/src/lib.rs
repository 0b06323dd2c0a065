//! Benchmarks for the foldmaps library live in `benches/`.
