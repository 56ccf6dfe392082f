//! Criterion benchmarks for gencover live in `benches/`; run them with `cargo bench -p gencover-bench`.
