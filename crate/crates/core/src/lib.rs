pub mod cli;
pub mod clifford;
pub mod cohomology;
pub mod dense;
pub mod error;
pub mod modlinalg;
pub mod pauli;
pub mod qcm;
pub mod wigner;

pub use error::{Error, Result};
