//! Benchmarks for `dquad-core` live under `benches/`.
