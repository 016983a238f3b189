//! Exact arithmetic substrate: rationals, sparse polynomials, matrices.

pub mod matrix;
pub mod poly;
pub mod rational;
