use num_complex::Complex64;
use serde::Serialize;

use super::basis::PhasePointBasis;
use crate::dense::root_of_unity;
use crate::error::Result;
use crate::pauli::{symplectic, PauliPoint};

/// Effect `Theta_{Pi_{a,s}}` of a Pauli outcome on phase space.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaEffect {
    pub a: PauliPoint,
    pub s: u32,
    pub values: Vec<f64>,
    /// Largest imaginary part discarded.
    pub max_imag: f64,
}

impl ThetaEffect {
    /// Whether every value is within `tol` of 0 or 1.
    pub fn is_indicator(&self, tol: f64) -> bool {
        self.values
            .iter()
            .all(|&x| x.abs() <= tol || (x - 1.0).abs() <= tol)
    }
}

/// `Theta(v) = (1/d) sum_k omega^{-k(s + [v,a])} c_a(k)`.
pub fn theta_effect(basis: &PhasePointBasis, a: &PauliPoint, s: u32) -> Result<ThetaEffect> {
    let space = basis.space();
    space.check(a)?;
    let d = space.d();
    let ladder = basis.ladder(a)?;
    let mut max_imag = 0.0f64;
    let values = space
        .points()
        .map(|v| {
            let sp = (s + symplectic(&v, a)) % d;
            let t: Complex64 = ladder
                .iter()
                .enumerate()
                .map(|(k, c)| root_of_unity(-((k as i64) * sp as i64), d) * c)
                .sum::<Complex64>()
                / d as f64;
            max_imag = max_imag.max(t.im.abs());
            t.re
        })
        .collect();
    Ok(ThetaEffect {
        a: a.clone(),
        s: s % d,
        values,
        max_imag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{random_density, trace_product};
    use crate::pauli::{projector, Gauge};
    use crate::wigner::{gross_basis, random_admissible, wigner_of};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn born_rule_and_resolution_of_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (d, n) in [(2u32, 1usize), (3, 1), (4, 1), (2, 2), (3, 2)] {
            let g = Gauge::standard(d, n).unwrap();
            let b = random_admissible(&g, false, &mut rng).unwrap();
            let rho = random_density(g.space().dim(), &mut rng);
            let w = wigner_of(&b, &rho).unwrap();
            for a in g.space().points() {
                let mut sum = vec![0.0; g.space().size()];
                for s in 0..d {
                    let th = theta_effect(&b, &a, s).unwrap();
                    assert!(th.max_imag < 1e-12);
                    let p = trace_product(&projector(&g, &a, s).unwrap(), &rho).re;
                    let q: f64 = th.values.iter().zip(&w.values).map(|(t, w)| t * w).sum();
                    assert!((p - q).abs() < 1e-10);
                    for (acc, t) in sum.iter_mut().zip(&th.values) {
                        *acc += t;
                    }
                }
                assert!(sum.iter().all(|x| (x - 1.0).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn gross_effects_are_indicators() {
        let b = gross_basis(3, 1).unwrap();
        for a in b.space().points() {
            for s in 0..3 {
                let th = theta_effect(&b, &a, s).unwrap();
                assert!(th.is_indicator(1e-12));
                for v in b.space().points() {
                    let expect = if symplectic(&a, &v) == s { 1.0 } else { 0.0 };
                    assert!((th.values[b.space().index(&v)] - expect).abs() < 1e-12);
                }
            }
        }
    }
}
