//! Stabilizer-code algebra and Clifford-hierarchy classification of logical
//! gates implemented by constant-depth local circuits.
//!
//! The crate is organised bottom-up:
//!
//! * [`symplectic`]: Pauli operators as bit vectors with exact phases, plus GF(2) linear algebra;
//! * [`code`]: stabilizer codes, logical classes, exhaustive distance search;
//! * [`geometry`]: lattices, regions, L∞ neighbourhoods, torus strips, the disc/strip/triangle partition;
//! * [`library`]: toric code, 15-qubit color code, repetition code, stacked copies;
//! * [`circuit`]: layered local circuits, light cones, Clifford and dense backends;
//! * [`cleaning`]: region correctability, operator cleaning, the union check;
//! * [`classifier`]: encoded-gate extraction, hierarchy levels, commutator experiments, closure;
//! * [`demo`]: the curated end-to-end checks shared by the test suite and the CLI.

pub mod circuit;
pub mod classifier;
pub mod cleaning;
pub mod code;
pub mod demo;
pub mod error;
pub mod geometry;
pub mod library;
pub mod symplectic;

pub use code::{distance, DistanceResult, StabilizerCode};
pub use error::{Error, ErrorCategory, Result};
pub use geometry::{Lattice, Region};
pub use symplectic::{BitMatrix, BitVector, Pauli1, PauliOperator};
