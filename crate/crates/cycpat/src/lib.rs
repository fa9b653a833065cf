//! Stable patterns of cyclic matrices.
//!
//! A pattern is a partition of `Z_q` (optionally with signs) describing which
//! entries of the first row of a `q×q` cyclic matrix are equal or opposite.
//! This crate classifies patterns by whether the matrices sharing a pattern
//! are closed under products or under inversion, enumerates every stable
//! pattern for small `q`, computes their Fourier duals, and measures the degree
//! growth of the birational map `K = I∘J` (matrix inverse after entrywise
//! inverse) on the pattern's color space.

pub mod arith;
pub mod birational;
pub mod closed_forms;
pub mod cyclotomic;
pub mod enumeration;
pub mod modp;
pub mod patterns;
