//! Criterion benchmarks for `abelian-psi`; run with `cargo bench -p abelian-psi-bench`.
