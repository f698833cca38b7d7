use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dense::{root_of_unity, CMatrix};
use crate::error::{contract, Error, Result};
use crate::pauli::{check_dim, phi_power, symplectic, Gauge, PauliPoint, Space};

/// Tolerance on `c_0 = 1` and the reality constraint.
pub const COEFF_TOL: f64 = 1e-10;
/// Coefficients below this magnitude count as zero.
pub const ZERO_TOL: f64 = 1e-12;

/// Phase point operators `A_v = d^{-n} sum_b omega^{-[v,b]} c_b T_b^dagger` for a gauge and
/// coefficients `c`.
#[derive(Clone, Debug)]
pub struct PhasePointBasis {
    gauge: Gauge,
    coefficients: Vec<Complex64>,
    offset: Option<PauliPoint>,
}

impl PhasePointBasis {
    /// Checks `c_0 = 1` and `c_b^* = omega^{phi_{-b}(-1)} c_{-b}`.
    pub fn new(
        gauge: Gauge,
        coefficients: Vec<Complex64>,
        offset: Option<PauliPoint>,
    ) -> Result<Self> {
        let s = gauge.space();
        if coefficients.len() != s.size() {
            return contract(format!(
                "expected {} coefficients, got {}",
                s.size(),
                coefficients.len()
            ));
        }
        if (coefficients[0] - Complex64::new(1.0, 0.0)).norm() > COEFF_TOL {
            return contract(format!("c_0 must be 1, got {}", coefficients[0]));
        }
        if let Some(x) = &offset {
            s.check(x)?;
        }
        let basis = Self {
            gauge,
            coefficients,
            offset,
        };
        let r = basis.reality_residual()?;
        if r > COEFF_TOL {
            return contract(format!(
                "coefficients violate the reality constraint by {r:e}"
            ));
        }
        Ok(basis)
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn space(&self) -> Space {
        self.gauge.space()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, b: &PauliPoint) -> Complex64 {
        self.coefficients[self.space().index(b)]
    }

    /// The parameter `x` of `c_a = omega^{[a,x]}`, zero when unset.
    pub fn offset(&self) -> PauliPoint {
        self.offset.clone().unwrap_or_else(|| self.space().zero())
    }

    /// Largest `|c_b^* - omega^{phi_{-b}(-1)} c_{-b}|`.
    pub fn reality_residual(&self) -> Result<f64> {
        let s = self.space();
        let d = s.d();
        let mut worst = 0.0f64;
        for (i, b) in s.points().enumerate() {
            let mb = b.scaled(-1);
            let phi = phi_power(&self.gauge, &mb, d - 1)?;
            let rhs = root_of_unity(phi as i64, d) * self.coefficients[s.index(&mb)];
            worst = worst.max((self.coefficients[i].conj() - rhs).norm());
        }
        Ok(worst)
    }

    /// Whether every `c_b` is nonzero, i.e. the operators span all matrices.
    pub fn is_operator_basis(&self) -> bool {
        self.coefficients.iter().all(|c| c.norm() > ZERO_TOL)
    }

    /// `c_a(k) = omega^{phi_a(k)} c_{ka}` for `k = 0..d`.
    pub fn ladder(&self, a: &PauliPoint) -> Result<Vec<Complex64>> {
        let d = self.space().d();
        (0..d)
            .map(|k| {
                let phi = phi_power(&self.gauge, a, k)?;
                Ok(root_of_unity(phi as i64, d) * self.coefficient(&a.scaled(k as i64)))
            })
            .collect()
    }
}

/// Gross' basis: standard gauge for odd `d` and `c = 1`.
pub fn gross_basis(d: u32, n: usize) -> Result<PhasePointBasis> {
    if d.is_multiple_of(2) {
        return contract(format!("the Gross construction needs odd d, got {d}"));
    }
    let g = Gauge::standard(d, n)?;
    let size = g.space().size();
    PhasePointBasis::new(g, vec![Complex64::new(1.0, 0.0); size], None)
}

/// Random coefficients obeying `c_0 = 1` and the reality constraint.
///
/// With `unit_modulus` every `|c_b| = 1`; otherwise magnitudes are drawn from `[0.25, 1.75]`.
pub fn random_admissible<R: Rng + ?Sized>(
    g: &Gauge,
    unit_modulus: bool,
    rng: &mut R,
) -> Result<PhasePointBasis> {
    let s = g.space();
    let d = s.d();
    let mut c = vec![Complex64::new(0.0, 0.0); s.size()];
    c[0] = Complex64::new(1.0, 0.0);
    let tau = 2.0 * std::f64::consts::PI;
    for (i, b) in s.points().enumerate().skip(1) {
        let mb = b.scaled(-1);
        let j = s.index(&mb);
        if j < i {
            continue;
        }
        let r = if unit_modulus {
            1.0
        } else {
            rng.random_range(0.25..1.75)
        };
        // c_{-b} = c_b^* omega^{-phi_{-b}(-1)}
        let phi = phi_power(g, &mb, d - 1)? as f64;
        if j == i {
            // c_b^* = omega^{phi} c_b forces arg c_b = -pi phi / d mod pi
            let sign = if rng.random_bool(0.5) { 0.0 } else { 0.5 };
            c[i] = Complex64::from_polar(r, -tau * phi / (2.0 * d as f64) + tau * sign);
        } else {
            let cb = Complex64::from_polar(r, rng.random_range(0.0..tau));
            c[i] = cb;
            c[j] = cb.conj() * Complex64::from_polar(1.0, -tau * phi / d as f64);
        }
    }
    PhasePointBasis::new(g.clone(), c, None)
}

/// `A_v`, assembled from the monomial form of each `T_b`.
pub fn phase_point_operator(basis: &PhasePointBasis, v: &PauliPoint) -> Result<CMatrix> {
    let s = basis.space();
    s.check(v)?;
    let d = s.d();
    let dim = check_dim(d, s.n())?;
    let pm = s.phase_modulus();
    let norm = 1.0 / dim as f64;
    let mut a = CMatrix::zeros(dim, dim);
    for (i, b) in s.points().enumerate() {
        let w = root_of_unity(-(symplectic(v, &b) as i64), d) * basis.coefficients[i] * norm;
        let op = basis.gauge.op(&b);
        for k in 0..dim {
            // T_b |k> = mu^p |row>, so T_b^dagger has mu^{-p} at (k, row)
            let (p, row) = op.apply_basis(k);
            a[(k, row)] += w * root_of_unity(-(p as i64), pm);
        }
    }
    Ok(a)
}

/// All `A_v` in point-index order.
pub fn phase_point_operators(basis: &PhasePointBasis) -> Result<Vec<CMatrix>> {
    let s = basis.space();
    check_dim(s.d(), s.n())?;
    (0..s.size())
        .into_par_iter()
        .map(|i| phase_point_operator(basis, &s.point(i)))
        .collect()
}

/// `Tr(T_b Y)` for every `b`.
pub fn pauli_traces(g: &Gauge, y: &CMatrix) -> Result<Vec<Complex64>> {
    let s = g.space();
    let dim = check_dim(s.d(), s.n())?;
    if y.shape() != (dim, dim) {
        return contract(format!("operator must be {dim}x{dim}"));
    }
    let pm = s.phase_modulus();
    Ok(s.points()
        .map(|b| {
            let op = g.op(&b);
            (0..dim)
                .map(|j| {
                    let (p, row) = op.apply_basis(j);
                    root_of_unity(p as i64, pm) * y[(j, row)]
                })
                .sum()
        })
        .collect())
}

/// The unique `w` with `Y = sum_v w(v) A_v`: `w(v) = d^{-2n} sum_b omega^{[v,b]} Tr(T_b Y) / c_b`.
pub fn expand_operator(basis: &PhasePointBasis, y: &CMatrix) -> Result<Vec<Complex64>> {
    if !basis.is_operator_basis() {
        return Err(Error::NotABasis("some coefficient c_b vanishes".into()));
    }
    let s = basis.space();
    let d = s.d();
    let t: Vec<Complex64> = pauli_traces(&basis.gauge, y)?
        .into_iter()
        .zip(&basis.coefficients)
        .map(|(t, c)| t / c)
        .collect();
    let norm = 1.0 / s.size() as f64;
    let pts: Vec<PauliPoint> = s.points().collect();
    Ok(pts
        .par_iter()
        .map(|v| {
            pts.iter()
                .zip(&t)
                .map(|(b, tb)| root_of_unity(symplectic(v, b) as i64, d) * tb)
                .sum::<Complex64>()
                * norm
        })
        .collect())
}

/// Real quasi-probability `W_rho` over `V`.
#[derive(Clone, Debug, Serialize)]
pub struct WignerFunction {
    pub space: Space,
    pub values: Vec<f64>,
}

impl WignerFunction {
    pub fn at(&self, v: &PauliPoint) -> f64 {
        self.values[self.space.index(v)]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Points with `W < -tol`.
    pub fn negative_points(&self, tol: f64) -> Vec<(PauliPoint, f64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &w)| w < -tol)
            .map(|(i, &w)| (self.space.point(i), w))
            .collect()
    }
}

/// `W_rho` for Hermitian `rho`.
pub fn wigner_of(basis: &PhasePointBasis, rho: &CMatrix) -> Result<WignerFunction> {
    let herm = crate::dense::max_abs_diff(rho, &rho.adjoint());
    if herm > 1e-9 {
        return contract(format!("operator is not Hermitian (deviation {herm:e})"));
    }
    let w = expand_operator(basis, rho)?;
    let worst_imag = w.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if worst_imag > 1e-9 {
        return Err(Error::Internal(format!(
            "Wigner function of a Hermitian operator has imaginary part {worst_imag:e}"
        )));
    }
    Ok(WignerFunction {
        space: basis.space(),
        values: w.into_iter().map(|c| c.re).collect(),
    })
}
