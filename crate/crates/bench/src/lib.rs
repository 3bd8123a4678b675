//! Criterion benchmarks for the klein-core kernels; see `benches/`.
