//! Proper divisor graphs.
//!
//! For a composite `n`, the proper divisor graph has the divisors `d` with
//! `1 < d < n` as vertices, and `u ~ v` exactly when `n` divides `u * v`.
//! This crate builds the graph explicitly, evaluates its invariants from
//! the prime factorization alone, constructs optimal colorings and the full
//! automorphism group, and cross-checks all of it against exhaustive
//! oracles that only ever look at the explicit graph.

#![forbid(unsafe_code)]

pub mod arith;
pub mod automorphism;
pub mod bitset;
pub mod coloring;
mod error;
pub mod formulas;
pub mod graph;
pub mod oracles;
pub mod report;
pub mod verify;

pub use arith::{factorize, Factorization, PrimePower};
pub use automorphism::{aut_structure, enumerate_automorphisms, AutGroup, Automorphism, SpecialCase};
pub use coloring::{EdgeColoring, EdgeKind, VertexColoring};
pub use error::{Error, Result};
pub use graph::{DivisorGraph, SimpleGraph};
pub use oracles::{OracleBudget, OracleError};
pub use report::ParameterReport;
