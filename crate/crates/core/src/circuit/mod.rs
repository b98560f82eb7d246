//! Layered local circuits with a Clifford (tableau) backend and a dense
//! statevector backend.

pub mod dense;
mod gate;
mod layered;

pub use dense::{CMatrix, LocalOperator};
pub use gate::{t_matrix, GateDocument, GateKind, LocalGate, MAX_DENSE_ARITY};
pub use layered::{
    random_local_clifford, CircuitDocument, Direction, LayeredCircuit, DENSE_STATE_CAP, DENSE_UNITARY_CAP,
};
