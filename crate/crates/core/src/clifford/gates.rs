use num_complex::Complex64;

use super::gate::{extract_action, CliffordGate, UNITARY_TOL};
use crate::dense::{root_of_unity, unitarity_residual, CMatrix};
use crate::error::{contract, Error, Result};
use crate::modlinalg::inverse_mod;
use crate::pauli::{check_dim, pauli_matrix, Gauge, PauliOp, PauliPoint};

pub fn hadamard() -> CMatrix {
    fourier_matrix(2)
}

/// `d^{-1/2} sum_{k,l} omega^{kl} |k><l|`
pub fn fourier_matrix(d: u32) -> CMatrix {
    let du = d as usize;
    let norm = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(du, du, |k, l| root_of_unity((k * l) as i64, d) * norm)
}

/// Diagonal phase gate with `S X S^dagger` proportional to `Z X`:
/// `omega^{k^2/2}` for odd `d`, `sqrt(omega)^{k^2}` for even `d`.
pub fn phase_matrix(d: u32) -> CMatrix {
    let du = d as usize;
    let mut m = CMatrix::zeros(du, du);
    if d % 2 == 1 {
        let half = inverse_mod(2, d as u64).expect("odd d") as i64;
        for k in 0..du {
            let k = k as i64;
            m[(k as usize, k as usize)] = root_of_unity(half * k * k, d);
        }
    } else {
        for k in 0..du {
            m[(k, k)] = root_of_unity((k * k) as i64, 2 * d);
        }
    }
    m
}

/// `SUM |j, k> = |j, j + k>` on two qudits.
pub fn sum_matrix(d: u32) -> CMatrix {
    let du = d as usize;
    let mut m = CMatrix::zeros(du * du, du * du);
    for j in 0..du {
        for k in 0..du {
            m[(j * du + (j + k) % du, j * du + k)] = Complex64::new(1.0, 0.0);
        }
    }
    m
}

/// `d^{-1} sum_{k,l} omega^{m k^2} (sum_j omega^{m j^2 + (k-l) j}) |k><l|` with `m = d/4`.
pub fn quadratic_matrix(d: u32) -> CMatrix {
    let du = d as usize;
    let m = (d / 4) as i64;
    CMatrix::from_fn(du, du, |k, l| {
        let (k, l) = (k as i64, l as i64);
        let inner: Complex64 = (0..d as i64)
            .map(|j| root_of_unity(m * j * j + (k - l) * j, d))
            .sum();
        root_of_unity(m * k * k, d) * inner / d as f64
    })
}

/// `I_{d^q} (x) u (x) I`, where `u` acts on `width` consecutive qudits starting at `q`.
pub fn embed_block(u: &CMatrix, d: u32, n: usize, q: usize, width: usize) -> CMatrix {
    assert!(q + width <= n, "block exceeds the register");
    let du = d as usize;
    let left = CMatrix::identity(du.pow(q as u32), du.pow(q as u32));
    let rest = n - q - width;
    let right = CMatrix::identity(du.pow(rest as u32), du.pow(rest as u32));
    left.kronecker(u).kronecker(&right)
}

/// Single-qudit gate on qudit `q` of `n`.
pub fn embed(u: &CMatrix, d: u32, n: usize, q: usize) -> CMatrix {
    embed_block(u, d, n, q, 1)
}

/// Fourier gate for `d = 4m + 2`, on one qudit, in the standard gauge.
pub fn fourier_gate(d: u32) -> Result<CliffordGate> {
    if d % 4 != 2 {
        return contract(format!(
            "the Fourier obstruction gate needs d = 2 mod 4, got {d}"
        ));
    }
    let name = if d == 2 { "H" } else { "F" };
    extract_action(&Gauge::standard(d, 1)?, name, fourier_matrix(d))
}

/// Quadratic gate for `d = 4m`, on one qudit, in the standard gauge.
pub fn quadratic_gate(d: u32) -> Result<CliffordGate> {
    if !d.is_multiple_of(4) {
        return contract(format!(
            "the quadratic obstruction gate needs d = 0 mod 4, got {d}"
        ));
    }
    let u = quadratic_matrix(d);
    let r = unitarity_residual(&u);
    if r > UNITARY_TOL {
        return Err(Error::Internal(format!(
            "quadratic gate is not unitary (residual {r:e})"
        )));
    }
    extract_action(&Gauge::standard(d, 1)?, "Q", u)
}

/// The gate exhibiting a nonzero `Phi_cov` on a fixed boundary: Fourier for `d = 2 mod 4`,
/// quadratic for `d = 0 mod 4`.
pub fn obstruction_gate(d: u32) -> Result<CliffordGate> {
    match d % 4 {
        0 => quadratic_gate(d),
        2 => fourier_gate(d),
        _ => contract(format!("no obstruction gate for odd d = {d}")),
    }
}

/// Fourier and phase gates on every qudit, SUM on neighbours, the Pauli shifts and the identity.
pub fn generator_set(g: &Gauge) -> Result<Vec<CliffordGate>> {
    let (d, n) = (g.d(), g.n());
    check_dim(d, n)?;
    let label = |base: &str, q: usize| {
        if n == 1 {
            base.to_string()
        } else {
            format!("{base}{q}")
        }
    };
    let (f_name, p_name) = if d == 2 { ("H", "S") } else { ("F", "P") };
    let mut gates = Vec::new();
    for q in 0..n {
        gates.push(extract_action(
            g,
            label(f_name, q),
            embed(&fourier_matrix(d), d, n, q),
        )?);
        gates.push(extract_action(
            g,
            label(p_name, q),
            embed(&phase_matrix(d), d, n, q),
        )?);
        for (base, x_part) in [("X", true), ("Z", false)] {
            let u = pauli_matrix(&PauliOp::new(0, PauliPoint::unit(d, n, q, x_part)))?;
            gates.push(extract_action(g, label(base, q), u)?);
        }
    }
    for q in 0..n.saturating_sub(1) {
        let u = embed_block(&sum_matrix(d), d, n, q, 2);
        gates.push(extract_action(g, format!("SUM{q}{}", q + 1), u)?);
    }
    let dim = check_dim(d, n)?;
    gates.push(extract_action(g, "I", CMatrix::identity(dim, dim))?);
    Ok(gates)
}
