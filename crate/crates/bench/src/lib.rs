//! Criterion benchmarks for the contraction kernels live in `benches/`;
//! run them with `cargo bench -p tetragauge-bench`.
