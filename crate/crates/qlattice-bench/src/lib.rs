//! Criterion benchmarks for the qlattice workspace; see `benches/`.
