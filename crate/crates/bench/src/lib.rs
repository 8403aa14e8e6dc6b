//! Criterion benchmarks for grautkit; run with `cargo bench -p grautkit-bench`.
