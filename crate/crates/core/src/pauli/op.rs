use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gauge::Gauge;
use super::point::{symplectic, PauliPoint};
use crate::dense::{root_of_unity, CMatrix, MAX_DENSE_DIM};
use crate::error::{contract, Error, Result};

/// `mu^phase Z(a_Z) X(a_X)`, where `mu = omega` for odd `d` and `sqrt(omega)` for even `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliOp {
    phase: u32,
    point: PauliPoint,
}

impl PauliOp {
    pub fn new(phase: u32, point: PauliPoint) -> Self {
        let pm = phase_modulus(point.d());
        Self {
            phase: phase % pm,
            point,
        }
    }

    pub fn identity(d: u32, n: usize) -> Self {
        Self::new(0, PauliPoint::zero(d, n))
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn point(&self) -> &PauliPoint {
        &self.point
    }

    /// Exact product: `Z(z1)X(x1) Z(z2)X(x2) = omega^(-x1.z2) Z(z1+z2) X(x1+x2)`.
    pub fn mul(&self, other: &PauliOp) -> PauliOp {
        let d = self.point.d();
        let pm = phase_modulus(d) as u64;
        let s = scale(d) as u64;
        let twist = s * (self.point.x_dot_z(&other.point) % d as u64);
        let phase = (self.phase as u64 + other.phase as u64 + pm - twist % pm) % pm;
        PauliOp::new(phase as u32, &self.point + &other.point)
    }

    /// The inverse `mu^(-p - scale x.z) Z(-z) X(-x)`.
    pub fn inverse(&self) -> PauliOp {
        let d = self.point.d();
        let pm = phase_modulus(d) as u64;
        let s = scale(d) as u64;
        let zx = s * (self.point.z_dot_x() % d as u64);
        let phase = (2 * pm - self.phase as u64 - zx % pm) % pm;
        PauliOp::new(phase as u32, -&self.point)
    }

    pub fn pow(&self, k: u64) -> PauliOp {
        let mut acc = PauliOp::identity(self.point.d(), self.point.n());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies the operator to a basis state `|k>`: returns `(phase exponent mod scale*d, image index)`.
    pub(crate) fn apply_basis(&self, k: usize) -> (u32, usize) {
        let d = self.point.d() as usize;
        let n = self.point.n();
        let s = scale(self.point.d()) as usize;
        let pm = phase_modulus(self.point.d()) as usize;
        let mut digits = digits_of(k, d, n);
        let mut zexp = 0usize;
        for q in 0..n {
            digits[q] = (digits[q] + self.point.x()[q] as usize) % d;
            zexp += self.point.z()[q] as usize * digits[q];
        }
        let phase = (self.phase as usize + s * (zexp % d)) % pm;
        (phase as u32, index_of(&digits, d))
    }
}

pub(crate) fn scale(d: u32) -> u32 {
    if d.is_multiple_of(2) {
        2
    } else {
        1
    }
}

pub(crate) fn phase_modulus(d: u32) -> u32 {
    scale(d) * d
}

/// Qudit digits of a computational basis index; qudit 0 is the most significant.
pub(crate) fn digits_of(mut k: usize, d: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for slot in digits.iter_mut().rev() {
        *slot = k % d;
        k /= d;
    }
    digits
}

pub(crate) fn index_of(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &v| acc * d + v)
}

pub(crate) fn check_dim(d: u32, n: usize) -> Result<usize> {
    let dim = (d as f64).powi(n as i32);
    if dim > MAX_DENSE_DIM as f64 {
        return Err(Error::Resource(format!(
            "d^n = {dim} exceeds the dense limit {MAX_DENSE_DIM}"
        )));
    }
    Ok(dim as usize)
}

/// Dense `d^n x d^n` matrix of a Pauli operator.
pub fn pauli_matrix(op: &PauliOp) -> Result<CMatrix> {
    let d = op.point.d();
    let dim = check_dim(d, op.point.n())?;
    let pm = phase_modulus(d);
    let mut m = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let (phase, row) = op.apply_basis(k);
        m[(row, k)] = root_of_unity(phase as i64, pm);
    }
    Ok(m)
}

/// Dense matrix of `T_a` in the given gauge.
pub fn gauge_matrix(g: &Gauge, a: &PauliPoint) -> Result<CMatrix> {
    g.space().check(a)?;
    pauli_matrix(&g.op(a))
}

/// `beta(a,b)` with `T_a T_b = omega^beta T_{a+b}` for commuting `a, b`.
pub fn beta(g: &Gauge, a: &PauliPoint, b: &PauliPoint) -> Result<u32> {
    let space = g.space();
    space.check(a)?;
    space.check(b)?;
    if symplectic(a, b) != 0 {
        return contract(format!(
            "beta is only defined on commuting pairs, got {a} and {b}"
        ));
    }
    beta_unchecked(g, a, b)
}

pub(crate) fn beta_unchecked(g: &Gauge, a: &PauliPoint, b: &PauliPoint) -> Result<u32> {
    let prod = g.op(a).mul(&g.op(b));
    relative_phase(g, &prod)
}

/// Exponent `e` with `op = omega^e T_{op.point}` in the gauge `g`.
pub fn relative_phase(g: &Gauge, op: &PauliOp) -> Result<u32> {
    let d = g.d();
    let pm = phase_modulus(d);
    let diff = (op.phase() + pm - g.gamma(op.point())) % pm;
    let s = scale(d);
    if !diff.is_multiple_of(s) {
        return Err(Error::Internal(format!(
            "phase offset {diff} of {} is not a power of omega",
            op.point()
        )));
    }
    Ok(diff / s)
}

/// `phi_b(k)` with `(T_b)^k = omega^phi T_{kb}`.
pub fn phi_power(g: &Gauge, b: &PauliPoint, k: u32) -> Result<u32> {
    g.space().check(b)?;
    let k = k % g.d();
    relative_phase(g, &g.op(b).pow(k as u64))
}

/// `Pi_{a,s} = (1/d) sum_i omega^(-s i) (T_a)^i`, the eigenprojector of `T_a` for `omega^s`.
pub fn projector(g: &Gauge, a: &PauliPoint, s: u32) -> Result<CMatrix> {
    g.space().check(a)?;
    let d = g.d();
    let dim = check_dim(d, g.n())?;
    let t = g.op(a);
    let mut acc = CMatrix::zeros(dim, dim);
    let mut power = PauliOp::identity(d, g.n());
    for i in 0..d {
        let w = root_of_unity(-((s as i64) * i as i64), d);
        acc += pauli_matrix(&power)? * w;
        power = power.mul(&t);
    }
    Ok(acc / Complex64::new(d as f64, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{max_abs_diff, snap_root_of_unity};
    use crate::pauli::Space;
    use proptest::prelude::*;

    fn dense_phase(a: &CMatrix, b: &CMatrix, d: u32) -> Option<u32> {
        // a = omega^e b for monomial matrices
        let (i, j) = (0..b.nrows())
            .flat_map(|i| (0..b.ncols()).map(move |j| (i, j)))
            .find(|&(i, j)| b[(i, j)].norm() > 0.5)?;
        let e = snap_root_of_unity(a[(i, j)] / b[(i, j)], d, 1e-9)?;
        (max_abs_diff(a, &(b * root_of_unity(e as i64, d))) < 1e-10).then_some(e)
    }

    #[test]
    fn matrix_examples() {
        let z = pauli_matrix(&PauliOp::new(0, PauliPoint::new(2, &[1], &[0]))).unwrap();
        assert_eq!(z[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], Complex64::new(-1.0, 0.0));
        let x = pauli_matrix(&PauliOp::new(0, PauliPoint::new(3, &[0], &[1]))).unwrap();
        for k in 0..3 {
            assert_eq!(x[((k + 1) % 3, k)], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn phase_one_zx_for_qubits() {
        // i Z X = [[0, i], [-i, 0]], which is -Y
        let m = pauli_matrix(&PauliOp::new(1, PauliPoint::new(2, &[1], &[1]))).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let expected = CMatrix::from_row_slice(2, 2, &[0.0.into(), i, -i, 0.0.into()]);
        assert!(max_abs_diff(&m, &expected) < 1e-15);
    }

    #[test]
    fn y_squares_to_identity() {
        let g = Gauge::standard(2, 1).unwrap();
        let y = PauliPoint::new(2, &[1], &[1]);
        assert_eq!(phi_power(&g, &y, 2).unwrap(), 0);
        let m = gauge_matrix(&g, &y).unwrap();
        assert!(max_abs_diff(&(&m * &m), &CMatrix::identity(2, 2)) < 1e-15);
    }

    #[test]
    fn zx_commutation() {
        for d in 2..7 {
            let z = pauli_matrix(&PauliOp::new(0, PauliPoint::new(d, &[1], &[0]))).unwrap();
            let x = pauli_matrix(&PauliOp::new(0, PauliPoint::new(d, &[0], &[1]))).unwrap();
            assert_eq!(dense_phase(&(&z * &x), &(&x * &z), d), Some(1));
        }
    }

    #[test]
    fn beta_matches_dense_products() {
        for (d, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2), (6, 1)] {
            let g = Gauge::standard(d, n).unwrap();
            let s = g.space();
            let mats: Vec<CMatrix> = s.points().map(|a| gauge_matrix(&g, &a).unwrap()).collect();
            for a in s.points() {
                for b in s.points() {
                    if symplectic(&a, &b) != 0 {
                        assert!(beta(&g, &a, &b).is_err());
                        continue;
                    }
                    let ab = &a + &b;
                    let lhs = &mats[s.index(&a)] * &mats[s.index(&b)];
                    let e = dense_phase(&lhs, &mats[s.index(&ab)], d).unwrap();
                    assert_eq!(beta(&g, &a, &b).unwrap(), e, "d={d} n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn beta_matches_dense_products_sampled_d6_n2() {
        let g = Gauge::standard(6, 2).unwrap();
        let s = g.space();
        let mut seen = 0;
        for i in (0..s.size()).step_by(37) {
            for j in (0..s.size()).step_by(53) {
                let (a, b) = (s.point(i), s.point(j));
                if symplectic(&a, &b) != 0 {
                    continue;
                }
                seen += 1;
                let lhs = gauge_matrix(&g, &a).unwrap() * gauge_matrix(&g, &b).unwrap();
                let rhs = gauge_matrix(&g, &(&a + &b)).unwrap();
                assert_eq!(Some(beta(&g, &a, &b).unwrap()), dense_phase(&lhs, &rhs, 6));
            }
        }
        assert!(seen > 50);
    }

    #[test]
    fn gross_gauge_beta_vanishes() {
        for (d, n) in [(3, 1), (3, 2), (5, 1)] {
            let g = Gauge::standard(d, n).unwrap();
            for a in g.space().points() {
                for b in g.space().points() {
                    if symplectic(&a, &b) == 0 {
                        assert_eq!(beta(&g, &a, &b).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn table_pair_for_qubits() {
        // a = Z on qudit 1 inverted, b = Z on qudit 2, c = X on qudit 2, d' = X on qudit 1
        let g = Gauge::standard(2, 2).unwrap();
        let ab = PauliPoint::new(2, &[1, 1], &[0, 0]);
        let cd = PauliPoint::new(2, &[0, 0], &[1, 1]);
        assert_eq!(beta(&g, &ab, &cd).unwrap(), 1);
    }

    #[test]
    fn beta_with_zero_vanishes() {
        for d in 2..8 {
            let g = Gauge::standard(d, 1).unwrap();
            let zero = g.space().zero();
            for a in g.space().points() {
                assert_eq!(beta(&g, &a, &zero).unwrap(), 0);
                assert_eq!(beta(&g, &zero, &a).unwrap(), 0);
            }
        }
    }

    #[test]
    fn paulis_have_order_d() {
        for (d, n) in [(2, 2), (3, 2), (4, 1), (6, 1), (8, 1)] {
            let g = Gauge::standard(d, n).unwrap();
            for a in g.space().points() {
                assert_eq!(phi_power(&g, &a, d).unwrap(), 0);
                let m = gauge_matrix(&g, &a).unwrap();
                let mut p = CMatrix::identity(m.nrows(), m.ncols());
                for _ in 0..d {
                    p = &p * &m;
                }
                assert!(max_abs_diff(&p, &CMatrix::identity(m.nrows(), m.ncols())) < 1e-9);
            }
        }
    }

    #[test]
    fn gross_phi_vanishes() {
        let g = Gauge::standard(3, 2).unwrap();
        for b in g.space().points() {
            for k in 0..3 {
                assert_eq!(phi_power(&g, &b, k).unwrap(), 0);
            }
        }
    }

    #[test]
    fn phi_identities() {
        for (d, n) in [(2, 2), (3, 1), (4, 1), (6, 1)] {
            let g = Gauge::standard(d, n).unwrap();
            let s = g.space();
            let d64 = d as i64;
            for b in s.points() {
                assert_eq!(phi_power(&g, &b, 0).unwrap(), 0);
                assert_eq!(phi_power(&g, &b, 1).unwrap(), 0);
                let minus_one = d - 1;
                assert_eq!(
                    phi_power(&g, &b, minus_one).unwrap(),
                    phi_power(&g, &(-&b), minus_one).unwrap()
                );
                for k in 0..d {
                    let lhs = phi_power(&g, &b, (d - k) % d).unwrap() as i64;
                    let rhs = phi_power(&g, &b.scaled(k as i64), minus_one).unwrap() as i64
                        - phi_power(&g, &b, k).unwrap() as i64;
                    assert_eq!(lhs, rhs.rem_euclid(d64));
                }
            }
        }
    }

    #[test]
    fn projectors_resolve_identity() {
        let g = Gauge::standard(3, 1).unwrap();
        let a = PauliPoint::new(3, &[1], &[2]);
        let t = gauge_matrix(&g, &a).unwrap();
        let mut sum = CMatrix::zeros(3, 3);
        for s in 0..3 {
            let p = projector(&g, &a, s).unwrap();
            assert!(max_abs_diff(&(&p * &p), &p) < 1e-12);
            let w = root_of_unity(s as i64, 3);
            assert!(max_abs_diff(&(&t * &p), &(&p * w)) < 1e-12);
            sum += p;
        }
        assert!(max_abs_diff(&sum, &CMatrix::identity(3, 3)) < 1e-12);
    }

    #[test]
    fn inverse_and_product_match_dense() {
        for d in [2u32, 3, 4, 6] {
            let s = Space::new(d, 1).unwrap();
            for a in s.points() {
                for p in 0..phase_modulus(d) {
                    let op = PauliOp::new(p, a.clone());
                    let inv = pauli_matrix(&op.inverse()).unwrap();
                    let m = pauli_matrix(&op).unwrap();
                    assert!(
                        max_abs_diff(&(&m * &inv), &CMatrix::identity(d as usize, d as usize))
                            < 1e-12
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn products_match_dense(
            d in prop::sample::select(vec![2u32, 3, 4, 5, 6]),
            p in 0u32..12, q in 0u32..12,
            v in proptest::collection::vec(0i64..6, 8),
        ) {
            let a = PauliOp::new(p, PauliPoint::new(d, &v[0..2], &v[2..4]));
            let b = PauliOp::new(q, PauliPoint::new(d, &v[4..6], &v[6..8]));
            let lhs = pauli_matrix(&a).unwrap() * pauli_matrix(&b).unwrap();
            let rhs = pauli_matrix(&a.mul(&b)).unwrap();
            prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
        }

        #[test]
        fn commutation_phase_is_symplectic(
            d in prop::sample::select(vec![2u32, 3, 4, 6]),
            v in proptest::collection::vec(0i64..6, 8),
        ) {
            let g = Gauge::standard(d, 2).unwrap();
            let a = PauliPoint::new(d, &v[0..2], &v[2..4]);
            let b = PauliPoint::new(d, &v[4..6], &v[6..8]);
            let ta = gauge_matrix(&g, &a).unwrap();
            let tb = gauge_matrix(&g, &b).unwrap();
            let phase = root_of_unity(symplectic(&a, &b) as i64, d);
            prop_assert!(max_abs_diff(&(&ta * &tb), &((&tb * &ta) * phase)) < 1e-10);
        }

        #[test]
        fn gauge_shift_moves_beta_by_a_coboundary(
            d in prop::sample::select(vec![2u32, 3, 4, 6]),
            seed in proptest::collection::vec(0u32..64, 256),
        ) {
            let g = Gauge::standard(d, 1).unwrap();
            let s = g.space();
            let mut nu: Vec<u32> = (0..s.size()).map(|i| seed[i % 256] % d).collect();
            nu[0] = 0;
            let h = g.shifted(&nu).unwrap();
            for a in s.points() {
                for b in s.points() {
                    if symplectic(&a, &b) != 0 {
                        continue;
                    }
                    let shift = nu[s.index(&a)] as i64 + nu[s.index(&b)] as i64
                        - nu[s.index(&(&a + &b))] as i64;
                    let expected = (beta(&g, &a, &b).unwrap() as i64 + shift).rem_euclid(d as i64);
                    prop_assert_eq!(beta(&h, &a, &b).unwrap() as i64, expected);
                }
            }
        }
    }
}
