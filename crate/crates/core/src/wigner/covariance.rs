use serde::Serialize;

use super::basis::{phase_point_operators, PhasePointBasis};
use crate::clifford::CliffordGate;
use crate::dense::{frobenius_distance, max_abs_diff};
use crate::error::{contract, Error, Result};
use crate::pauli::PauliPoint;

/// Frobenius distance under which `g(A_0)` is matched to some `A_w`.
pub const MATCH_TOL: f64 = 1e-8;
/// Entrywise tolerance for `g(A_v) = A_{S v + a}`.
pub const COVARIANCE_TOL: f64 = 1e-10;

/// Successful covariance check: `g A_v g^dagger = A_{S_g v + a_g}` for all `v`.
#[derive(Clone, Debug, Serialize)]
pub struct Covariance {
    pub translation: PauliPoint,
    pub residual: f64,
}

/// Finds `a_g` from `g(A_0)` and checks the covariance relation on every `v`.
pub fn verify_covariance(
    basis: &PhasePointBasis,
    gate: &CliffordGate,
) -> Result<Option<Covariance>> {
    let s = basis.space();
    if gate.action().space() != s {
        return contract(format!("gate {} acts on a different space", gate.name()));
    }
    let ops = phase_point_operators(basis)?;
    let image0 = gate.conjugate(&ops[0]);
    let matches: Vec<usize> = ops
        .iter()
        .enumerate()
        .filter(|(_, a)| frobenius_distance(a, &image0) < MATCH_TOL)
        .map(|(i, _)| i)
        .collect();
    let w = match matches[..] {
        [] => return Ok(None),
        [w] => w,
        _ => {
            return Err(Error::NotABasis(format!(
                "g(A_0) matches {} phase point operators",
                matches.len()
            )))
        }
    };
    let translation = s.point(w);
    let mut residual = 0.0f64;
    for (i, a) in ops.iter().enumerate() {
        let target = &gate.action().apply(&s.point(i)) + &translation;
        let r = max_abs_diff(&gate.conjugate(a), &ops[s.index(&target)]);
        if r > COVARIANCE_TOL {
            return Ok(None);
        }
        residual = residual.max(r);
    }
    Ok(Some(Covariance {
        translation,
        residual,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{extract_action, generator_set, hadamard};
    use crate::pauli::{gauge_matrix, Gauge};
    use crate::wigner::{gross_basis, random_admissible};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gross_is_covariant_under_generators() {
        for n in [1usize, 2] {
            let b = gross_basis(3, n).unwrap();
            for gate in generator_set(b.gauge()).unwrap() {
                let cov = verify_covariance(&b, &gate).unwrap();
                assert!(cov.is_some(), "{}", gate.name());
            }
        }
    }

    #[test]
    fn pauli_gate_translates_by_its_label() {
        let b = gross_basis(3, 1).unwrap();
        for p in b.space().points() {
            let gate =
                extract_action(b.gauge(), "T", gauge_matrix(b.gauge(), &p).unwrap()).unwrap();
            let cov = verify_covariance(&b, &gate).unwrap().unwrap();
            assert_eq!(cov.translation, p);
        }
    }

    #[test]
    fn qubit_hadamard_breaks_random_bases() {
        let g = Gauge::standard(2, 1).unwrap();
        let h = extract_action(&g, "H", hadamard()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..50 {
            let b = random_admissible(&g, rng.random_bool(0.5), &mut rng).unwrap();
            assert!(verify_covariance(&b, &h).unwrap().is_none());
        }
    }
}
