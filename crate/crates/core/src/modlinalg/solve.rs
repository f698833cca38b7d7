use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::ModMatrix;
use super::modint::{gcd, inverse_mod, ModInt};
use super::reduce::{ReducedRow, RowReducer};
use super::snf::{smith_normal_form, IntMatrix};
use crate::error::{contract, Error, Result};

/// Sparse linear system `A x = b` over `Z_modulus`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    modulus: u64,
    unknowns: usize,
    rows: Vec<(Vec<(usize, u64)>, u64)>,
}

/// Outcome of solving a [`LinearSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Canonical solution: back-substitution through the Smith diagonal, free variables zero.
    Consistent(Vec<u64>),
    /// Left combination `y` (row index, coefficient) with `y A = 0` and `y b != 0`.
    Inconsistent(Vec<(usize, u64)>),
}

impl LinearSystem {
    pub fn new(unknowns: usize, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self {
            modulus,
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Appends one equation; repeated unknowns are summed. Returns the row index.
    pub fn push(&mut self, terms: &[(usize, i64)], rhs: i64) -> usize {
        let m = self.modulus as i64;
        let mut acc: Vec<(usize, u64)> = Vec::with_capacity(terms.len());
        for &(var, c) in terms {
            assert!(var < self.unknowns, "unknown {var} out of range");
            let c = c.rem_euclid(m) as u64;
            match acc.iter_mut().find(|(v, _)| *v == var) {
                Some((_, x)) => *x = (*x + c) % self.modulus,
                None => acc.push((var, c)),
            }
        }
        acc.retain(|&(_, c)| c != 0);
        acc.sort_unstable();
        self.rows.push((acc, rhs.rem_euclid(m) as u64));
        self.rows.len() - 1
    }

    pub fn row(&self, i: usize) -> (&[(usize, u64)], u64) {
        let (terms, rhs) = &self.rows[i];
        (terms, *rhs)
    }

    pub fn residual_ok(&self, x: &[u64]) -> bool {
        let m = self.modulus;
        self.rows.iter().all(|(terms, rhs)| {
            terms.iter().fold(0u64, |acc, &(v, c)| (acc + c * x[v]) % m) == *rhs
        })
    }

    /// Checks that `y` is a genuine inconsistency witness.
    pub fn certifies_inconsistency(&self, y: &[(usize, u64)]) -> bool {
        let m = self.modulus;
        let mut lhs = vec![0u64; self.unknowns];
        let mut rhs = 0u64;
        for &(r, k) in y {
            let (terms, b) = &self.rows[r];
            for &(v, c) in terms {
                lhs[v] = (lhs[v] + k * c) % m;
            }
            rhs = (rhs + k * b) % m;
        }
        lhs.iter().all(|&x| x == 0) && rhs != 0
    }

    /// Decides consistency. Equations enter the echelon basis lazily: a candidate
    /// solution is checked against every row and only violated rows are added.
    pub fn solve(&self) -> SolveOutcome {
        let n = self.unknowns;
        let batch = (2 * n).max(64);
        let mut used: Vec<usize> = Vec::new();
        let mut reducer = RowReducer::new(n + 1, self.modulus, false);
        let mut pending: Vec<usize> = (0..self.rows.len().min(batch)).collect();
        loop {
            for &idx in &pending {
                reducer.insert(self.dense(idx), idx);
            }
            used.extend_from_slice(&pending);
            let rows = reducer.rows();
            let Some(x) = back_substitute(&rows, n, self.modulus) else {
                return SolveOutcome::Inconsistent(self.certificate(&used));
            };
            pending = (0..self.rows.len())
                .filter(|&i| !self.row_ok(i, &x))
                .take(batch)
                .collect();
            if pending.is_empty() {
                return SolveOutcome::Consistent(x);
            }
        }
    }

    fn dense(&self, idx: usize) -> Vec<u64> {
        let (terms, rhs) = &self.rows[idx];
        let mut dense = vec![0u64; self.unknowns + 1];
        for &(v, c) in terms {
            dense[v] = c;
        }
        dense[self.unknowns] = *rhs;
        dense
    }

    fn row_ok(&self, i: usize, x: &[u64]) -> bool {
        let (terms, rhs) = &self.rows[i];
        terms
            .iter()
            .fold(0u64, |acc, &(v, c)| (acc + c * x[v]) % self.modulus)
            == *rhs
    }

    fn certificate(&self, used: &[usize]) -> Vec<(usize, u64)> {
        let n = self.unknowns;
        let mut reducer = RowReducer::new(n + 1, self.modulus, true);
        for &idx in used {
            reducer.insert(self.dense(idx), idx);
        }
        let rows = reducer.rows();
        let bad = rows
            .iter()
            .find(|r| r.coeffs[..n].iter().all(|&c| c == 0))
            .expect("inconsistent system has a pure right-hand-side row");
        bad.origin.iter().map(|(&r, &k)| (r, k)).collect()
    }
}

/// Back-substitution through Howell-form rows; `None` if a row reads `0 = c` with `c != 0`.
fn back_substitute(rows: &[&ReducedRow], n: usize, m: u64) -> Option<Vec<u64>> {
    let mut x = vec![0u64; n];
    for row in rows.iter().rev() {
        let lead = row.coeffs.iter().position(|&c| c != 0)?;
        if lead == n {
            return None;
        }
        let rest = (lead + 1..n).fold(0u64, |acc, k| (acc + row.coeffs[k] * x[k]) % m);
        let r = (row.coeffs[n] + m - rest) % m;
        let p = row.coeffs[lead];
        let g = gcd(p, m);
        if !r.is_multiple_of(g) {
            return None;
        }
        let mg = m / g;
        let inv = inverse_mod((p / g) % mg, mg).expect("unit after removing gcd");
        x[lead] = (r / g) % mg * inv % mg;
    }
    Some(x)
}

fn residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue fits")
}

fn lift(rows: &[ReducedRow], cols: usize) -> IntMatrix {
    let data: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.coeffs[..cols].iter().map(|&x| x as i64).collect())
        .collect();
    if data.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(&data)
    }
}

/// Solves `A x = b (mod d)`; `None` when the system is inconsistent.
pub fn mod_solve(a: &ModMatrix, b: &[ModInt]) -> Result<Option<Vec<ModInt>>> {
    let m = a.modulus();
    if b.len() != a.rows() {
        return contract(format!(
            "right-hand side has {} entries for {} rows",
            b.len(),
            a.rows()
        ));
    }
    if let Some(bad) = b.iter().find(|x| x.modulus() != m) {
        return contract(format!("rhs modulus {} differs from {}", bad.modulus(), m));
    }
    let mut sys = LinearSystem::new(a.cols(), m);
    for i in 0..a.rows() {
        let terms: Vec<(usize, i64)> = a
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c as i64))
            .collect();
        sys.push(&terms, b[i].value() as i64);
    }
    match sys.solve() {
        SolveOutcome::Consistent(x) => {
            if !sys.residual_ok(&x) {
                return Err(Error::Internal("Smith-form solution fails A x = b".into()));
            }
            Ok(Some(
                x.into_iter().map(|v| ModInt::from_u64(v, m)).collect(),
            ))
        }
        SolveOutcome::Inconsistent(_) => Ok(None),
    }
}

/// Generators of `{x : A x = 0 (mod d)}`.
pub fn mod_kernel(a: &ModMatrix) -> Vec<Vec<ModInt>> {
    let m = a.modulus();
    let n = a.cols();
    let mut reducer = RowReducer::new(n, m, false);
    for i in 0..a.rows() {
        reducer.insert(a.row(i).to_vec(), i);
    }
    let rows = reducer.into_rows();
    let k = rows.len();
    let smith = smith_normal_form(&lift(&rows, n));
    let mut gens = Vec::new();
    for j in 0..n {
        let scale = if j < k {
            let dj = residue(&smith.d[(j, j)], m);
            m / gcd(dj, m)
        } else {
            1
        };
        if scale % m == 0 {
            continue;
        }
        let col: Vec<ModInt> = (0..n)
            .map(|i| ModInt::from_u64(residue(&smith.v[(i, j)], m) * scale, m))
            .collect();
        if col.iter().any(|x| !x.is_zero()) {
            gens.push(col);
        }
    }
    gens
}
