use serde::{Deserialize, Serialize};

use super::chain::{Chain, Tuple};
use super::cochain::{evaluate, BetaCochain};
use crate::error::{contract, Error, Result};
use crate::pauli::{beta, Gauge, PauliPoint};

/// One elementary face `sign * [u|v]` of the torus cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub label: &'static str,
    pub sign: i64,
    pub u: PauliPoint,
    pub v: PauliPoint,
}

/// The generalized Mermin square as a 2-cycle `F = f1 + ... + f6`.
#[derive(Clone, Debug)]
pub struct MerminCertificate {
    pub faces: Vec<Face>,
    pub chain: Chain,
    /// `beta(f_j)` in the table gauge.
    pub face_values: Vec<u32>,
    /// `beta(F)`, the same in every gauge.
    pub total: u32,
}

/// The labels `a, b, c, d` on the first two qudits:
/// `T_a = Z^-1 (x) I`, `T_b = I (x) Z`, `T_c = I (x) X^{d/2}`, `T_d = X^{-d/2} (x) I`.
pub fn mermin_labels(d: u32, n: usize) -> Result<[PauliPoint; 4]> {
    if !d.is_multiple_of(2) || n < 2 {
        return contract(format!(
            "the Mermin cycle needs even d and n >= 2, got d = {d}, n = {n}"
        ));
    }
    let h = (d / 2) as i64;
    let lift = |z: [i64; 2], x: [i64; 2]| {
        let mut zz = vec![0i64; n];
        let mut xx = vec![0i64; n];
        zz[..2].copy_from_slice(&z);
        xx[..2].copy_from_slice(&x);
        PauliPoint::new(d, &zz, &xx)
    };
    Ok([
        lift([-1, 0], [0, 0]),
        lift([0, 1], [0, 0]),
        lift([0, 0], [0, h]),
        lift([0, 0], [-h, 0]),
    ])
}

/// Standard even gauge with `T_{a+b+c+d}` re-phased to `Ytilde^-1 (x) Ytilde`, so that every
/// operator of the square is the one in the table.
pub fn table_gauge(d: u32, n: usize) -> Result<Gauge> {
    let [a, b, c, dd] = mermin_labels(d, n)?;
    let all = &(&(&a + &b) + &c) + &dd;
    Gauge::standard(d, n)?.with_value(&all, d)
}

pub fn mermin_certificate(d: u32, n: usize) -> Result<MerminCertificate> {
    let [a, b, c, dd] = mermin_labels(d, n)?;
    let g = table_gauge(d, n)?;
    let faces = vec![
        Face {
            label: "f1",
            sign: 1,
            u: c.clone(),
            v: dd.clone(),
        },
        Face {
            label: "f2",
            sign: 1,
            u: &a + &b,
            v: &c + &dd,
        },
        Face {
            label: "f3",
            sign: 1,
            u: a.clone(),
            v: b.clone(),
        },
        Face {
            label: "f4",
            sign: -1,
            u: b.clone(),
            v: dd.clone(),
        },
        Face {
            label: "f5",
            sign: -1,
            u: &a + &c,
            v: &b + &dd,
        },
        Face {
            label: "f6",
            sign: -1,
            u: a.clone(),
            v: c.clone(),
        },
    ];
    let chain = Chain::from_terms(
        g.space(),
        2,
        true,
        faces.iter().map(|f| (f.sign, Tuple::pair(&f.u, &f.v))),
    )?;
    let face_values = faces
        .iter()
        .map(|f| Ok((f.sign.rem_euclid(d as i64) as u32 * beta(&g, &f.u, &f.v)?) % d))
        .collect::<Result<Vec<u32>>>()?;
    let cert = MerminCertificate {
        faces,
        chain,
        face_values,
        total: 0,
    };
    let total = cert.verify(&g)?;
    if total != d / 2 {
        return Err(Error::Internal(format!(
            "Mermin cycle evaluates to {total}, expected {}",
            d / 2
        )));
    }
    Ok(MerminCertificate { total, ..cert })
}

impl MerminCertificate {
    /// Checks `boundary F = 0` and returns `beta(F)` under `g`.
    pub fn verify(&self, g: &Gauge) -> Result<u32> {
        verify_cycle(&self.chain, g)
    }

    pub fn record(&self) -> MerminRecord {
        MerminRecord {
            d: self.chain.space().d(),
            n: self.chain.space().n(),
            faces: self
                .faces
                .iter()
                .zip(&self.face_values)
                .map(|(f, &beta)| FaceRecord {
                    label: f.label.to_string(),
                    sign: f.sign,
                    u: f.u.coords(),
                    v: f.v.coords(),
                    beta,
                })
                .collect(),
            total: self.total,
        }
    }
}

/// Checks that `c` is a cycle and returns `beta(c)`.
pub fn verify_cycle(c: &Chain, g: &Gauge) -> Result<u32> {
    if c.degree() != 2 {
        return contract("a beta certificate must be a 2-chain");
    }
    if !c.boundary()?.is_zero() {
        return Err(Error::Internal("certificate chain is not a cycle".into()));
    }
    evaluate(&BetaCochain(g), c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub label: String,
    pub sign: i64,
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub beta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MerminRecord {
    pub d: u32,
    pub n: usize,
    pub faces: Vec<FaceRecord>,
    pub total: u32,
}

impl MerminRecord {
    /// Rebuilds the cycle from the recorded faces.
    pub fn chain(&self) -> Result<Chain> {
        let space = crate::pauli::Space::new(self.d, self.n)?;
        let pt = |c: &[u32]| {
            let v: Vec<i64> = c.iter().map(|&x| x as i64).collect();
            PauliPoint::from_coords(self.d, &v)
        };
        let mut chain = Chain::zero(space, 2, true);
        for f in &self.faces {
            chain.add_term(f.sign, Tuple::pair(&pt(&f.u)?, &pt(&f.v)?))?;
        }
        Ok(chain)
    }
}
