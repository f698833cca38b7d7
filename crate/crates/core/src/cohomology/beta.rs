use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain::{Chain, ChainRecord, Tuple};
use super::cochain::OneCochain;
use super::mermin::{mermin_certificate, verify_cycle, MerminCertificate, MerminRecord};
use crate::error::{Error, Result};
use crate::modlinalg::{LinearSystem, SolveOutcome};
use crate::pauli::{beta_unchecked, symplectic, Gauge, PauliPoint, Space};

/// Largest `|E|` handled by the linear-system route.
pub const MAX_LINEAR_POINTS: usize = 4096;

/// Above this `|E|` the cocycle check samples triples instead of enumerating them.
pub const EXHAUSTIVE_TRIPLES_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Trivial,
    Nontrivial,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Trivial => "TRIVIAL",
            Verdict::Nontrivial => "NONTRIVIAL",
        })
    }
}

/// Outcome of a class-triviality decision, with a witness either way.
#[derive(Clone, Debug)]
pub enum ClassDecision<W> {
    /// The cocycle is the coboundary of `nu`.
    Trivial {
        nu: OneCochain,
    },
    Nontrivial(W),
}

impl<W> ClassDecision<W> {
    pub fn verdict(&self) -> Verdict {
        match self {
            ClassDecision::Trivial { .. } => Verdict::Trivial,
            ClassDecision::Nontrivial(_) => Verdict::Nontrivial,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, ClassDecision::Trivial { .. })
    }
}

/// A 2-cycle on which `beta` does not vanish.
#[derive(Clone, Debug)]
pub enum BetaCertificate {
    Mermin(MerminCertificate),
    Cycle { chain: Chain, value: u32 },
}

impl BetaCertificate {
    pub fn chain(&self) -> &Chain {
        match self {
            BetaCertificate::Mermin(m) => &m.chain,
            BetaCertificate::Cycle { chain, .. } => chain,
        }
    }

    /// Re-checks the certificate under `g` and returns `beta(F)`.
    pub fn verify(&self, g: &Gauge) -> Result<u32> {
        verify_cycle(self.chain(), g)
    }

    pub fn record(&self, g: &Gauge) -> Result<CertificateRecord> {
        Ok(match self {
            BetaCertificate::Mermin(m) => CertificateRecord::Mermin(m.record()),
            BetaCertificate::Cycle { chain, .. } => CertificateRecord::Cycle {
                chain: ChainRecord::from(chain),
                value: self.verify(g)?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateRecord {
    Mermin(MerminRecord),
    Cycle { chain: ChainRecord, value: u32 },
}

impl CertificateRecord {
    pub fn chain(&self) -> Result<Chain> {
        match self {
            CertificateRecord::Mermin(m) => m.chain(),
            CertificateRecord::Cycle { chain, .. } => Chain::try_from(chain),
        }
    }
}

/// `(b,c) - (a+b,c) + (a,b+c) - (a,b)` evaluated on `beta`.
fn cocycle_defect(g: &Gauge, a: &PauliPoint, b: &PauliPoint, c: &PauliPoint) -> Result<u32> {
    let d = g.d();
    let ab = a + b;
    let bc = b + c;
    let plus = beta_unchecked(g, b, c)? + beta_unchecked(g, a, &bc)?;
    let minus = beta_unchecked(g, &ab, c)? + beta_unchecked(g, a, b)?;
    Ok((plus + 2 * d - minus) % d)
}

/// `d beta = 0` on every commuting triple (sampled above [`EXHAUSTIVE_TRIPLES_LIMIT`]).
pub fn check_beta_cocycle(g: &Gauge) -> bool {
    let s = g.space();
    let pts: Vec<PauliPoint> = s.points().collect();
    if s.size() <= EXHAUSTIVE_TRIPLES_LIMIT {
        pts.par_iter().all(|a| {
            let ca: Vec<&PauliPoint> = pts.iter().filter(|b| symplectic(a, b) == 0).collect();
            ca.iter().all(|b| {
                ca.iter()
                    .filter(|c| symplectic(b, c) == 0)
                    .all(|c| cocycle_defect(g, a, b, c).is_ok_and(|v| v == 0))
            })
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let pick_commuting = |rng: &mut ChaCha8Rng, with: &[&PauliPoint]| loop {
            let p = &pts[rng.random_range(0..pts.len())];
            if with.iter().all(|w| symplectic(w, p) == 0) {
                return p.clone();
            }
        };
        (0..SAMPLED_TRIPLES).all(|_| {
            let a = pick_commuting(&mut rng, &[]);
            let b = pick_commuting(&mut rng, &[&a]);
            let c = pick_commuting(&mut rng, &[&a, &b]);
            cocycle_defect(g, &a, &b, &c).is_ok_and(|v| v == 0)
        })
    }
}

const SAMPLE_SEED: u64 = 0x6265_7461;
const SAMPLED_TRIPLES: usize = 20_000;

/// Gauge `gamma - scale*nu`, in which `beta` vanishes when `nu` trivialises it.
pub fn trivializing_gauge(g: &Gauge, nu: &OneCochain) -> Result<Gauge> {
    let d = g.d();
    let neg: Vec<u32> = nu.values().iter().map(|&v| (d - v % d) % d).collect();
    g.shifted(&neg)
}

type PairEquations = Vec<(usize, usize, u32)>;

/// Pair equations `(i, j, beta(p_i, p_j))` and the system for `nu` on nonzero labels.
fn beta_system(g: &Gauge) -> Result<(Vec<PauliPoint>, PairEquations, LinearSystem)> {
    let s = g.space();
    let size = s.size();
    let pts: Vec<PauliPoint> = s.points().collect();

    // (i, j, beta) for ordered commuting pairs; both orientations only when they differ
    let equations: Vec<(usize, usize, u32)> = (0..size)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in i..size {
                if symplectic(&pts[i], &pts[j]) != 0 {
                    continue;
                }
                let bij = beta_unchecked(g, &pts[i], &pts[j])?;
                out.push((i, j, bij));
                if i != j {
                    let bji = beta_unchecked(g, &pts[j], &pts[i])?;
                    if bji != bij {
                        out.push((j, i, bji));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut sys = LinearSystem::new(size - 1, g.d() as u64);
    for &(i, j, b) in &equations {
        let k = s.index(&(&pts[i] + &pts[j]));
        let terms: Vec<(usize, i64)> = [(i, 1), (j, 1), (k, -1)]
            .into_iter()
            .filter(|&(p, _)| p != 0)
            .map(|(p, c)| (p - 1, c))
            .collect();
        sys.push(&terms, b as i64);
    }

    Ok((pts, equations, sys))
}

/// Decides whether `[beta] = 0` by solving `nu(a) + nu(b) - nu(a+b) = beta(a,b)` over `Z_d`.
pub fn decide_beta_trivial(g: &Gauge) -> Result<ClassDecision<BetaCertificate>> {
    let s = g.space();
    let size = s.size();
    if size > MAX_LINEAR_POINTS {
        return Err(Error::Resource(format!(
            "|E| = {size} exceeds {MAX_LINEAR_POINTS}; use the Mermin certificate route"
        )));
    }
    let d = g.d();
    let (pts, equations, sys) = beta_system(g)?;

    match sys.solve() {
        SolveOutcome::Consistent(x) => {
            let mut values = vec![0u32; size];
            for (i, v) in x.into_iter().enumerate() {
                values[i + 1] = v as u32;
            }
            let nu = OneCochain::new(s, values)?;
            let h = trivializing_gauge(g, &nu)?;
            for &(i, j, _) in &equations {
                if beta_unchecked(&h, &pts[i], &pts[j])? != 0 {
                    return Err(Error::Internal(format!(
                        "re-gauged beta does not vanish on ({}, {})",
                        pts[i], pts[j]
                    )));
                }
            }
            Ok(ClassDecision::Trivial { nu })
        }
        SolveOutcome::Inconsistent(y) => {
            if d.is_multiple_of(2) && s.n() >= 2 {
                let m = mermin_certificate(d, s.n())?;
                let value = m.verify(g)?;
                if value == 0 {
                    return Err(Error::Internal("Mermin cycle evaluates to 0".into()));
                }
                return Ok(ClassDecision::Nontrivial(BetaCertificate::Mermin(m)));
            }
            let chain = raw_cycle(s, &pts, &equations, &y)?;
            let value = verify_cycle(&chain, g)?;
            if value == 0 {
                return Err(Error::Internal(
                    "inconsistency certificate evaluates to 0".into(),
                ));
            }
            Ok(ClassDecision::Nontrivial(BetaCertificate::Cycle {
                chain,
                value,
            }))
        }
    }
}

/// Turns a left-kernel combination of pair equations into a 2-cycle.
fn raw_cycle(
    s: Space,
    pts: &[PauliPoint],
    equations: &[(usize, usize, u32)],
    y: &[(usize, u64)],
) -> Result<Chain> {
    let mut chain = Chain::zero(s, 2, true);
    for &(row, k) in y {
        let (i, j, _) = equations[row];
        chain.add_term(k as i64, Tuple::pair(&pts[i], &pts[j]))?;
    }
    // the zero label carries no unknown; cancel its boundary coefficient with [0|0]
    let zero = s.zero();
    let stray = chain.boundary()?.coefficient(&Tuple::single(&zero));
    chain.add_term(-(stray as i64), Tuple::pair(&zero, &zero))?;
    Ok(chain)
}
