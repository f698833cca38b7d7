use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::basis::{expand_operator, phase_point_operators, PhasePointBasis};
use crate::cohomology::{decide_beta_trivial, trivializing_gauge, BetaCertificate, ClassDecision};
use crate::dense::root_of_unity;
use crate::error::Result;
use crate::pauli::{projector, symplectic, Gauge, PauliPoint};

/// Tolerance for `|c_b| = 1` and for the closed-form ladder coefficients.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// `r_a` with `r_a + r_b - r_{a+b} = beta(a,b)` on commuting pairs, for the gauge that was
/// passed to [`construct_positive_rep`], together with the offset `x`.
#[derive(Clone, Debug, Serialize)]
pub struct PositiveRepWitness {
    pub r: Vec<u32>,
    pub x: PauliPoint,
}

#[derive(Clone, Debug)]
pub enum PositiveRep {
    Constructed {
        basis: PhasePointBasis,
        witness: PositiveRepWitness,
    },
    Refused(BetaCertificate),
}

/// [`construct_positive_rep_with_offset`] with `x = 0`.
pub fn construct_positive_rep(g: &Gauge) -> Result<PositiveRep> {
    construct_positive_rep_with_offset(g, None)
}

/// Re-gauges to `beta = 0` and takes `c_a = omega^{[a,x]}`, or returns the obstruction to doing so.
///
/// The basis lives in the re-gauged frame `gamma - scale*nu`; `witness.r = nu + [., x]` refers
/// to the input gauge.
pub fn construct_positive_rep_with_offset(g: &Gauge, x: Option<PauliPoint>) -> Result<PositiveRep> {
    let s = g.space();
    let x = match x {
        Some(x) => {
            s.check(&x)?;
            x
        }
        None => s.zero(),
    };
    let nu = match decide_beta_trivial(g)? {
        ClassDecision::Trivial { nu } => nu,
        ClassDecision::Nontrivial(cert) => return Ok(PositiveRep::Refused(cert)),
    };
    let h = trivializing_gauge(g, &nu)?;
    let d = s.d();
    let coefficients = s
        .points()
        .map(|a| root_of_unity(symplectic(&a, &x) as i64, d))
        .collect();
    let r = s
        .points()
        .map(|a| (nu.at(&a) + symplectic(&a, &x)) % d)
        .collect();
    let basis = PhasePointBasis::new(h, coefficients, Some(x.clone()))?;
    Ok(PositiveRep::Constructed {
        basis,
        witness: PositiveRepWitness { r, x },
    })
}

/// Largest deviation of the expansion of `Pi_{a,s} A_v Pi_{a,s}` from
/// `delta_{s,[a,v+x]} (1/d) sum_k A_{v+ka}`, over all `s` and `v`.
pub fn ladder_residual(basis: &PhasePointBasis, a: &PauliPoint) -> Result<f64> {
    let sp = basis.space();
    sp.check(a)?;
    let d = sp.d();
    let g = basis.gauge();
    let x = basis.offset();
    let ops = phase_point_operators(basis)?;
    let projectors: Vec<_> = (0..d).map(|s| projector(g, a, s)).collect::<Result<_>>()?;
    let worst = (0..sp.size())
        .into_par_iter()
        .map(|i| {
            let v = sp.point(i);
            let mut worst = 0.0f64;
            for (s, p) in projectors.iter().enumerate() {
                let coeffs = expand_operator(basis, &(p * &ops[i] * p))?;
                let mut expect = vec![0.0; sp.size()];
                if symplectic(a, &(&v + &x)) == s as u32 {
                    for k in 0..d {
                        expect[sp.index(&(&v + &a.scaled(k as i64)))] += 1.0 / d as f64;
                    }
                }
                for (c, e) in coeffs.iter().zip(&expect) {
                    worst = worst.max((c - Complex64::new(*e, 0.0)).norm());
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(worst)
}

/// Whether measuring `T_a` maps every `A_v` to a nonnegative combination of the closed form.
pub fn verify_positivity_preservation(basis: &PhasePointBasis, a: &PauliPoint) -> Result<bool> {
    Ok(ladder_residual(basis, a)? <= POSITIVITY_TOL)
}

/// `|c_b| = 1` for all `b`.
pub fn check_magnitude_necessity(basis: &PhasePointBasis) -> bool {
    basis
        .coefficients()
        .iter()
        .all(|c| (c.norm() - 1.0).abs() <= POSITIVITY_TOL)
}
