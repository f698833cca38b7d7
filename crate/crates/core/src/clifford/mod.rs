//! Clifford gates, their action on Pauli labels, and the covariance class.

mod action;
mod gate;
mod gates;
mod obstruction;

pub use action::CliffordAction;
pub use gate::{extract_action, CliffordGate, RESIDUAL_TOL, SNAP_TOL, UNITARY_TOL};
pub use gates::{
    embed, embed_block, fourier_gate, fourier_matrix, generator_set, hadamard, obstruction_gate,
    phase_matrix, quadratic_gate, quadratic_matrix, sum_matrix,
};
pub use obstruction::{
    decide_phi_cov_trivial, find_obstruction, phi_cov_eval, Obstruction, ObstructionRecord,
    PhiCovWitness,
};
