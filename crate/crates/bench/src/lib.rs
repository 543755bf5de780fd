//! Criterion benchmarks for the scalecut library live under `benches/`.
