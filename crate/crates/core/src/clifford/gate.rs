use std::fmt;

use super::action::CliffordAction;
use crate::cohomology::OneCochain;
use crate::dense::{max_abs_diff, root_of_unity, snap_root_of_unity, unitarity_residual, CMatrix};
use crate::error::{contract, Error, Result};
use crate::modlinalg::ModMatrix;
use crate::pauli::{
    check_dim, digits_of, gauge_matrix, index_of, phase_modulus, relative_phase, scale, Gauge,
    PauliOp, PauliPoint,
};

/// Tolerance for recognising a phase as a root of unity.
pub const SNAP_TOL: f64 = 1e-8;
/// Tolerance on `U T_a U^dagger - omega^phi T_{Sa}`.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance on `U U^dagger - I`.
pub const UNITARY_TOL: f64 = 1e-9;

/// A Clifford unitary together with its action on Pauli labels in a given gauge.
#[derive(Clone)]
pub struct CliffordGate {
    name: String,
    unitary: CMatrix,
    action: CliffordAction,
}

impl fmt::Debug for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CliffordGate")
            .field("name", &self.name)
            .field("dim", &self.unitary.nrows())
            .finish()
    }
}

impl CliffordGate {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    pub fn action(&self) -> &CliffordAction {
        &self.action
    }

    pub fn symplectic(&self) -> &ModMatrix {
        self.action.symplectic()
    }

    pub fn phase_cochain(&self) -> &OneCochain {
        self.action.phases()
    }

    /// `U M U^dagger`
    pub fn conjugate(&self, m: &CMatrix) -> CMatrix {
        &self.unitary * m * self.unitary.adjoint()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Reads `(b, lambda)` off a matrix `M = lambda T_b` in the gauge `g`.
fn match_pauli(g: &Gauge, m: &CMatrix) -> Result<(PauliPoint, u32)> {
    let d = g.d();
    let n = g.n();
    let du = d as usize;
    let col0: Vec<usize> = (0..m.nrows()).filter(|&r| m[(r, 0)].norm() > 0.5).collect();
    let [row] = col0[..] else {
        return Err(Error::NotClifford(
            "conjugated Pauli is not monomial in the computational basis".into(),
        ));
    };
    let x = digits_of(row, du, n);
    let mut z = vec![0i64; n];
    for q in 0..n {
        let mut e = vec![0usize; n];
        e[q] = 1;
        let col = index_of(&e, du);
        let mut target = x.clone();
        target[q] = (target[q] + 1) % du;
        let ratio = m[(index_of(&target, du), col)] / m[(row, 0)];
        z[q] = snap_root_of_unity(ratio, d, SNAP_TOL).ok_or_else(|| {
            Error::NotClifford(format!(
                "clock ratio {ratio} on qudit {q} is not a power of omega"
            ))
        })? as i64;
    }
    let xs: Vec<i64> = x.iter().map(|&v| v as i64).collect();
    let b = PauliPoint::new(d, &z, &xs);
    let (p, r) = g.op(&b).apply_basis(0);
    debug_assert_eq!(r, row);
    let lambda = m[(row, 0)] / root_of_unity(p as i64, phase_modulus(d));
    let phase = snap_root_of_unity(lambda, d, SNAP_TOL).ok_or_else(|| {
        Error::PhaseConsistency(format!(
            "phase {lambda} in front of T_{b} is not a power of omega"
        ))
    })?;
    let tb = gauge_matrix(g, &b)?;
    let residual = max_abs_diff(m, &(tb * root_of_unity(phase as i64, d)));
    if residual > RESIDUAL_TOL {
        return Err(Error::NotClifford(format!(
            "conjugate differs from omega^{phase} T_{b} by {residual:e}"
        )));
    }
    Ok((b, phase))
}

/// Determines `(S_g, Phi~_g)` of a unitary by conjugating the unit labels.
pub fn extract_action(g: &Gauge, name: impl Into<String>, u: CMatrix) -> Result<CliffordGate> {
    let space = g.space();
    let dim = check_dim(space.d(), space.n())?;
    if u.nrows() != dim || u.ncols() != dim {
        return contract(format!(
            "unitary is {}x{}, expected {dim}x{dim}",
            u.nrows(),
            u.ncols()
        ));
    }
    let ures = unitarity_residual(&u);
    if ures > UNITARY_TOL {
        return contract(format!("matrix is not unitary (residual {ures:e})"));
    }
    let d = space.d();
    let pm = phase_modulus(d);
    let sc = scale(d);
    let units = space.units();
    let m = units.len();
    let mut s = ModMatrix::zeros(m, m, d as u64);
    // images of the raw generators Z_q, X_q as exact Pauli operators
    let mut raw_images = Vec::with_capacity(m);
    let udag = u.adjoint();
    for (j, e) in units.iter().enumerate() {
        let conj = &u * gauge_matrix(g, e)? * &udag;
        let (b, phi) = match_pauli(g, &conj)?;
        for (i, c) in b.coords().into_iter().enumerate() {
            s.set(i, j, c as u64);
        }
        let phase = (sc * phi + g.gamma(&b) + pm - g.gamma(e)) % pm;
        raw_images.push(PauliOp::new(phase, b));
    }

    let n = space.n();
    let values = space
        .points()
        .map(|a| {
            let mut img = PauliOp::identity(d, n);
            for q in 0..n {
                img = img.mul(&raw_images[q].pow(a.z()[q] as u64));
            }
            for q in 0..n {
                img = img.mul(&raw_images[n + q].pow(a.x()[q] as u64));
            }
            let img = PauliOp::new(img.phase() + g.gamma(&a), img.point().clone());
            relative_phase(g, &img).map_err(|_| {
                Error::PhaseConsistency(format!(
                    "image of T_{a} carries a half-integer power of omega"
                ))
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    let action = CliffordAction::new(space, s, OneCochain::new(space, values)?)?;

    // dense spot checks of g T_a g^dagger = omega^Phi T_{Sa}
    let step = (space.size() / 256).max(1);
    for i in (0..space.size()).step_by(step) {
        let a = space.point(i);
        let lhs = &u * gauge_matrix(g, &a)? * &udag;
        let rhs = gauge_matrix(g, &action.apply(&a))? * root_of_unity(action.phase(&a) as i64, d);
        let r = max_abs_diff(&lhs, &rhs);
        if r > RESIDUAL_TOL {
            return Err(Error::Internal(format!(
                "extracted action disagrees with conjugation of T_{a} by {r:e}"
            )));
        }
    }
    Ok(CliffordGate {
        name: name.into(),
        unitary: u,
        action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::gates::{embed, fourier_matrix, hadamard};
    use crate::pauli::symplectic;
    use num_complex::Complex64;

    #[test]
    fn identity_has_trivial_action() {
        let g = Gauge::standard(3, 2).unwrap();
        let gate = extract_action(&g, "I", CMatrix::identity(9, 9)).unwrap();
        assert!(gate.phase_cochain().is_zero());
        assert_eq!(gate.symplectic(), &ModMatrix::identity(4, 3));
    }

    #[test]
    fn hadamard_phases() {
        let g = Gauge::standard(2, 1).unwrap();
        let h = extract_action(&g, "H", hadamard()).unwrap();
        let p = |z, x| PauliPoint::new(2, &[z], &[x]);
        assert_eq!(h.action().phase(&p(0, 1)), 0);
        assert_eq!(h.action().phase(&p(1, 0)), 0);
        assert_eq!(h.action().phase(&p(1, 1)), 1);
    }

    #[test]
    fn pauli_gate_phase_is_the_symplectic_form() {
        for d in [2u32, 3, 4, 6] {
            let g = Gauge::standard(d, 1).unwrap();
            for b in g.space().points() {
                let gate = extract_action(&g, "T", gauge_matrix(&g, &b).unwrap()).unwrap();
                for a in g.space().points() {
                    assert_eq!(gate.action().apply(&a), a);
                    assert_eq!(gate.action().phase(&a), symplectic(&b, &a));
                }
            }
        }
    }

    #[test]
    fn non_unitary_is_rejected() {
        let g = Gauge::standard(2, 1).unwrap();
        let m = CMatrix::identity(2, 2) * Complex64::new(2.0, 0.0);
        assert!(matches!(
            extract_action(&g, "2I", m),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn non_clifford_is_rejected() {
        let g = Gauge::standard(2, 1).unwrap();
        // the T gate diag(1, e^{i pi/4})
        let mut t = CMatrix::identity(2, 2);
        t[(1, 1)] = root_of_unity(1, 8);
        assert!(matches!(
            extract_action(&g, "T", t),
            Err(Error::NotClifford(_))
        ));
    }

    #[test]
    fn fourier_on_second_qudit() {
        let g = Gauge::standard(3, 2).unwrap();
        let u = embed(&fourier_matrix(3), 3, 2, 1);
        let gate = extract_action(&g, "F1", u).unwrap();
        let z1 = PauliPoint::new(3, &[0, 1], &[0, 0]);
        assert_eq!(
            gate.action().apply(&z1),
            PauliPoint::new(3, &[0, 0], &[0, -1])
        );
    }
}
