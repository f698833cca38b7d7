use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::dense::{root_of_unity, CMatrix};
use crate::error::{contract, Result};

/// Tolerance on Hermitian symmetry, eigenvalue signs and the eigenvector relation.
pub const BOCHNER_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct BochnerReport {
    /// `f^(k) = (1/d) sum_x f(x) omega^{kx}`
    pub fourier: Vec<f64>,
    /// Eigenvalues of the circulant `M^x_y = f(x - y)`, ascending.
    pub eigenvalues: Vec<f64>,
    /// `max_k |M nu_k - d f^(k) nu_k|` with `nu_k(x) = omega^{-kx}`.
    pub eigen_residual: f64,
    pub fourier_nonnegative: bool,
    pub psd: bool,
    /// `fourier_nonnegative == psd` and the eigenvector relation holds.
    pub verdict: bool,
}

/// Compares nonnegativity of `f^` with positive semidefiniteness of the circulant of `f`.
pub fn bochner_check(f: &[Complex64]) -> Result<BochnerReport> {
    let d = f.len();
    if d == 0 {
        return contract("bochner_check needs a nonempty function");
    }
    for x in 0..d {
        if (f[(d - x) % d] - f[x].conj()).norm() > BOCHNER_TOL {
            return contract(format!("f(-{x}) != f({x})^*"));
        }
    }
    let m = CMatrix::from_fn(d, d, |x, y| f[(x + d - y) % d]);
    let du = d as u32;
    let fourier_c: Vec<Complex64> = (0..d)
        .map(|k| {
            (0..d)
                .map(|x| f[x] * root_of_unity((k * x) as i64, du))
                .sum::<Complex64>()
                / d as f64
        })
        .collect();
    let mut eigen_residual = 0.0f64;
    for (k, fk) in fourier_c.iter().enumerate() {
        let nu = DVector::from_fn(d, |x, _| root_of_unity(-((k * x) as i64), du));
        let r = (&m * &nu - &nu * (*fk * d as f64)).camax();
        eigen_residual = eigen_residual.max(r);
    }
    let mut eigenvalues: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let fourier: Vec<f64> = fourier_c.iter().map(|c| c.re).collect();
    let fourier_nonnegative = fourier.iter().all(|&v| v >= -BOCHNER_TOL);
    let psd = eigenvalues
        .first()
        .is_none_or(|&l| l >= -BOCHNER_TOL * d as f64);
    Ok(BochnerReport {
        fourier,
        eigenvalues,
        eigen_residual,
        fourier_nonnegative,
        psd,
        verdict: fourier_nonnegative == psd && eigen_residual <= BOCHNER_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_function() {
        for d in 2..=9usize {
            let r = bochner_check(&vec![c(1.0, 0.0); d]).unwrap();
            assert!(r.verdict && r.psd && r.fourier_nonnegative);
            assert!((r.fourier[0] - 1.0).abs() < 1e-12);
            assert!(r.fourier[1..].iter().all(|v| v.abs() < 1e-12));
            assert!((r.eigenvalues[d - 1] - d as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn cosine_has_two_point_spectrum() {
        for d in 3..=9u32 {
            let f: Vec<Complex64> = (0..d as i64)
                .map(|k| root_of_unity(k, d) + root_of_unity(-k, d))
                .collect();
            let r = bochner_check(&f).unwrap();
            assert!(r.verdict);
            let big: Vec<f64> = r
                .eigenvalues
                .iter()
                .copied()
                .filter(|l| l.abs() > 1e-9)
                .collect();
            assert_eq!(big.len(), 2);
            assert!(big.iter().all(|l| (l - d as f64).abs() < 1e-9));
        }
    }

    #[test]
    fn character_is_a_point_mass() {
        let d = 5u32;
        let f: Vec<Complex64> = (0..d as i64).map(|k| root_of_unity(2 * k, d)).collect();
        let r = bochner_check(&f).unwrap();
        assert!(r.verdict && r.psd);
        assert_eq!(r.fourier.iter().filter(|v| v.abs() > 1e-9).count(), 1);
    }

    #[test]
    fn rejects_non_hermitian() {
        assert!(bochner_check(&[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0)]).is_err());
    }

    proptest! {
        #[test]
        fn equivalence_never_fails(d in 2usize..=9, raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9)) {
            let mut f = vec![c(0.0, 0.0); d];
            f[0] = c(raw[0].0, 0.0);
            for x in 1..d {
                let y = d - x;
                if x < y {
                    f[x] = c(raw[x].0, raw[x].1);
                    f[y] = f[x].conj();
                } else if x == y {
                    f[x] = c(raw[x].0, 0.0);
                }
            }
            let r = bochner_check(&f).unwrap();
            prop_assert!(r.eigen_residual < 1e-10);
            prop_assert!(r.verdict);
        }
    }
}
