//! Criterion benchmarks for `prequant-core`; see `benches/`.
