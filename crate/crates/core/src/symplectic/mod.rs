//! Pauli algebra and the GF(2) linear algebra underneath it.

pub mod gf2;
pub mod pauli;

pub use gf2::{gf2_kernel, gf2_rank, gf2_solve, BitMatrix, BitVector, Echelon, RowSpace};
pub use pauli::{Pauli1, PauliOperator};
