//! Criterion benches for the core crate live in `benches/`.
