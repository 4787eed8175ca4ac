//! Benchmarks live under `benches/`; run them with `cargo bench -p subexp-bench`.
