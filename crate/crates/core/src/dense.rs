//! Dense complex matrices and root-of-unity helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;

/// Largest Hilbert-space dimension for dense matrices.
pub const MAX_DENSE_DIM: usize = 4096;

/// `exp(2 pi i e / m)`
pub fn root_of_unity(e: i64, m: u32) -> Complex64 {
    let e = e.rem_euclid(m as i64);
    match (4 * e).checked_rem(m as i64) {
        // exact values on the quarter turns
        Some(0) => match 4 * e / m as i64 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
        _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / m as f64),
    }
}

/// Recovers `e` with `z ~ exp(2 pi i e / m)` when `|z - that| <= tol`.
pub fn snap_root_of_unity(z: Complex64, m: u32, tol: f64) -> Option<u32> {
    if (z.norm() - 1.0).abs() > tol {
        return None;
    }
    let turns = z.arg() / (2.0 * std::f64::consts::PI) * m as f64;
    let e = turns.round().rem_euclid(m as f64) as u32 % m;
    ((z - root_of_unity(e as i64, m)).norm() <= tol).then_some(e)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Largest entry of `U U^dagger - I`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let id = CMatrix::identity(u.nrows(), u.ncols());
    max_abs_diff(&(u * u.adjoint()), &id)
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Matrix with independent standard complex Gaussian entries.
pub fn random_operator<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random full-rank density matrix `G G^dagger / Tr(G G^dagger)`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = random_operator(dim, rng);
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    rho / tr
}

/// Haar-random pure state as a density matrix.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = random_operator(dim, rng);
    let psi = g.column(0).normalize();
    &psi * psi.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_snap_back() {
        for m in 1..20u32 {
            for e in 0..m {
                let z = root_of_unity(e as i64, m);
                assert_eq!(snap_root_of_unity(z, m, 1e-9), Some(e));
            }
        }
        assert_eq!(snap_root_of_unity(Complex64::new(0.5, 0.0), 4, 1e-8), None);
        assert_eq!(root_of_unity(1, 4), Complex64::new(0.0, 1.0));
    }
}
