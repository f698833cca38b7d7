//! Pauli labels, gauges and the multiplication table of the Pauli group.

mod gauge;
mod op;
mod point;

pub use gauge::{standard_gauge, Gauge, MAX_GAUGE_POINTS};
pub use op::{beta, gauge_matrix, pauli_matrix, phi_power, projector, relative_phase, PauliOp};
pub use point::{symplectic_form, PauliPoint, Space};

pub(crate) use op::{beta_unchecked, check_dim, digits_of, index_of, phase_modulus, scale};
pub(crate) use point::symplectic;
