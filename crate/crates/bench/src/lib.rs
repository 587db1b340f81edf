//! Criterion benchmarks for `supersinglet-core`; run with `cargo bench -p supersinglet-bench`.
