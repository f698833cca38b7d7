use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use super::circuit::{Circuit, Step};
use super::compile::{Branches, MeasurementTree};
use crate::dense::CMatrix;
use crate::error::{contract, Error, Result};
use crate::pauli::{check_dim, projector, Gauge, PauliPoint};

/// Largest Hilbert-space dimension for the dense oracle.
pub const MAX_ORACLE_DIM: usize = 1024;
/// Most measurements the oracle will branch over.
pub const MAX_ORACLE_MEASUREMENTS: usize = 6;
/// Branches with smaller probability are dropped.
const PRUNE: f64 = 1e-14;

pub type Distribution = BTreeMap<String, f64>;

pub(crate) fn digit(s: u32) -> char {
    char::from_digit(s, 16).expect("d <= 16")
}

struct Projectors<'g> {
    gauge: &'g Gauge,
    cache: HashMap<(PauliPoint, u32), CMatrix>,
}

impl Projectors<'_> {
    fn get(&mut self, a: &PauliPoint, s: u32) -> Result<&CMatrix> {
        let key = (a.clone(), s);
        if !self.cache.contains_key(&key) {
            let p = projector(self.gauge, a, s)?;
            self.cache.insert(key.clone(), p);
        }
        Ok(&self.cache[&key])
    }
}

fn check_state(g: &Gauge, rho: &CMatrix, measurements: usize) -> Result<()> {
    let dim = check_dim(g.d(), g.n())?;
    if dim > MAX_ORACLE_DIM {
        return Err(Error::Resource(format!(
            "d^n = {dim} exceeds {MAX_ORACLE_DIM}"
        )));
    }
    if measurements > MAX_ORACLE_MEASUREMENTS {
        return Err(Error::Resource(format!(
            "{measurements} measurements exceed {MAX_ORACLE_MEASUREMENTS}"
        )));
    }
    if rho.shape() != (dim, dim) {
        return contract(format!("state must be {dim}x{dim}"));
    }
    Ok(())
}

/// Lüders branch: `(p, Pi rho Pi / p)`.
fn branch(p: &CMatrix, rho: &CMatrix) -> (f64, CMatrix) {
    let post = p * rho * p;
    let prob = post.trace().re;
    (prob, post / Complex64::new(prob, 0.0))
}

/// Exact outcome probabilities by the Born rule and Lüders updates.
pub fn exact_distribution(c: &Circuit, rho: &CMatrix) -> Result<Distribution> {
    check_state(c.gauge(), rho, c.measurement_count())?;
    let mut proj = Projectors {
        gauge: c.gauge(),
        cache: HashMap::new(),
    };
    let mut out = Distribution::new();
    walk_circuit(
        c,
        0,
        rho.clone(),
        1.0,
        String::new(),
        &mut BTreeMap::new(),
        &mut proj,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk_circuit(
    c: &Circuit,
    start: usize,
    mut rho: CMatrix,
    prob: f64,
    label: String,
    regs: &mut BTreeMap<usize, u32>,
    proj: &mut Projectors,
    out: &mut Distribution,
) -> Result<()> {
    let d = c.d();
    for (idx, step) in c.steps().iter().enumerate().skip(start) {
        match step {
            Step::Gate { gate, cond } => {
                if cond.is_none_or(|cd| regs.get(&cd.reg) == Some(&cd.value)) {
                    rho = gate.conjugate(&rho);
                }
            }
            Step::Measure { a, reg, shift } => {
                for s in 0..d {
                    let (p, post) = branch(proj.get(a, s)?, &rho);
                    if p <= PRUNE {
                        continue;
                    }
                    let reported = (s + d - shift) % d;
                    regs.insert(*reg, reported);
                    let mut l = label.clone();
                    l.push(digit(reported));
                    walk_circuit(c, idx + 1, post, prob * p, l, regs, proj, out)?;
                    regs.remove(reg);
                }
                return Ok(());
            }
        }
    }
    *out.entry(label).or_insert(0.0) += prob;
    Ok(())
}

/// Exact distribution of a compiled program on `rho`, with labels read in `g`.
pub fn tree_distribution(tree: &MeasurementTree, g: &Gauge, rho: &CMatrix) -> Result<Distribution> {
    check_state(g, rho, 0)?;
    let mut proj = Projectors {
        gauge: g,
        cache: HashMap::new(),
    };
    let mut out = Distribution::new();
    walk_tree(
        tree,
        g.d(),
        rho.clone(),
        1.0,
        String::new(),
        &mut proj,
        &mut out,
    )?;
    Ok(out)
}

fn walk_tree(
    tree: &MeasurementTree,
    d: u32,
    rho: CMatrix,
    prob: f64,
    label: String,
    proj: &mut Projectors,
    out: &mut Distribution,
) -> Result<()> {
    let MeasurementTree::Measure { a, shift, next, .. } = tree else {
        *out.entry(label).or_insert(0.0) += prob;
        return Ok(());
    };
    for s in 0..d {
        let (p, post) = branch(proj.get(a, s)?, &rho);
        if p <= PRUNE {
            continue;
        }
        let reported = (s + d - shift) % d;
        let child = match next {
            Branches::Same(t) => t.as_ref(),
            Branches::Split(ts) => &ts[reported as usize],
        };
        let mut l = label.clone();
        l.push(digit(reported));
        walk_tree(child, d, post, prob * p, l, proj, out)?;
    }
    Ok(())
}

/// `(1/2) sum |p - q|` over the union of outcomes.
pub fn total_variation(p: &Distribution, q: &Distribution) -> f64 {
    let keys: std::collections::BTreeSet<&String> = p.keys().chain(q.keys()).collect();
    keys.into_iter()
        .map(|k| (p.get(k).copied().unwrap_or(0.0) - q.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
        / 2.0
}
