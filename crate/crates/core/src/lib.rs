//! Minimal vectors of Gaussian-integer lattices, best approximations of complex
//! numbers, and the first-return map of the diagonal flow.

pub mod gauss;
pub mod lattice;
pub mod reduction;
pub mod cfrac;
pub mod critical;
pub mod regions;
pub mod transversal;
pub mod dirichlet;
pub mod export;
pub mod measure;
