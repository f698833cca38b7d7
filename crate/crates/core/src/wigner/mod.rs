//! Phase point operator bases, Wigner functions, measurement effects and positivity checks.

mod basis;
mod bochner;
mod covariance;
mod positive;
mod theta;

pub use basis::{
    expand_operator, gross_basis, pauli_traces, phase_point_operator, phase_point_operators,
    random_admissible, wigner_of, PhasePointBasis, WignerFunction, COEFF_TOL, ZERO_TOL,
};
pub use bochner::{bochner_check, BochnerReport, BOCHNER_TOL};
pub use covariance::{verify_covariance, Covariance, COVARIANCE_TOL, MATCH_TOL};
pub use positive::{
    check_magnitude_necessity, construct_positive_rep, construct_positive_rep_with_offset,
    ladder_residual, verify_positivity_preservation, PositiveRep, PositiveRepWitness,
    POSITIVITY_TOL,
};
pub use theta::{theta_effect, ThetaEffect};
