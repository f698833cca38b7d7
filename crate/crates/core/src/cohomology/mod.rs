//! Chain complexes of Pauli labels, cochains, and the class of `beta`.

mod beta;
mod chain;
mod cochain;
mod mermin;

pub use beta::{
    check_beta_cocycle, decide_beta_trivial, trivializing_gauge, BetaCertificate,
    CertificateRecord, ClassDecision, Verdict, EXHAUSTIVE_TRIPLES_LIMIT, MAX_LINEAR_POINTS,
};
pub use chain::{Chain, ChainRecord, Tuple, MAX_DEGREE};
pub use cochain::{coboundary_eval, evaluate, BetaCochain, Cochain, OneCochain};
pub use mermin::{
    mermin_certificate, mermin_labels, table_gauge, verify_cycle, Face, FaceRecord,
    MerminCertificate, MerminRecord,
};
