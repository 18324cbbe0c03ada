//! Criterion benchmarks for the grplab kernels; see `benches/`.
