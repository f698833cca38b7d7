use std::collections::BTreeMap;

use super::circuit::{Circuit, Step};
use crate::clifford::CliffordAction;
use crate::error::{Error, Result};
use crate::pauli::{Gauge, PauliPoint};

/// A measurement-only program; it branches where a later gate was conditioned on the outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasurementTree {
    Done,
    /// Measure `T_a` and report `s - shift`.
    Measure {
        a: PauliPoint,
        reg: usize,
        shift: u32,
        next: Branches,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branches {
    Same(Box<MeasurementTree>),
    /// Indexed by the reported outcome.
    Split(Vec<MeasurementTree>),
}

impl MeasurementTree {
    /// Labels measured along the branch that reports `outcomes`.
    pub fn path(&self, outcomes: &[u32]) -> Vec<(PauliPoint, u32)> {
        let mut out = Vec::new();
        let mut node = self;
        let mut it = outcomes.iter();
        while let MeasurementTree::Measure { a, shift, next, .. } = node {
            out.push((a.clone(), *shift));
            let Some(&s) = it.next() else { break };
            node = match next {
                Branches::Same(t) => t,
                Branches::Split(ts) => &ts[s as usize],
            };
        }
        out
    }

    pub fn is_linear(&self) -> bool {
        match self {
            MeasurementTree::Done => true,
            MeasurementTree::Measure {
                next: Branches::Same(t),
                ..
            } => t.is_linear(),
            MeasurementTree::Measure { .. } => false,
        }
    }

    /// The flat measurement-only circuit when no branch splits.
    pub fn as_circuit(&self, gauge: &Gauge) -> Result<Option<Circuit>> {
        if !self.is_linear() {
            return Ok(None);
        }
        let mut steps = Vec::new();
        let mut node = self;
        while let MeasurementTree::Measure {
            a,
            reg,
            shift,
            next,
        } = node
        {
            steps.push(Step::Measure {
                a: a.clone(),
                reg: *reg,
                shift: *shift,
            });
            let Branches::Same(t) = next else {
                unreachable!()
            };
            node = t;
        }
        Circuit::new(gauge.clone(), steps).map(Some)
    }
}

/// Pushes every Clifford gate through to the end: after gates `V`, measuring `T_a` with outcome
/// `s` equals measuring `T_b`, `b = S_V^{-1} a`, with outcome `s + Phi~_V(b)`.
pub fn compile_measurement_only(c: &Circuit) -> Result<MeasurementTree> {
    let identity = CliffordAction::identity(c.gauge().space());
    compile_from(c, 0, &identity, &BTreeMap::new())
}

fn compile_from(
    c: &Circuit,
    start: usize,
    acc: &CliffordAction,
    history: &BTreeMap<usize, u32>,
) -> Result<MeasurementTree> {
    let steps = c.steps();
    let d = c.d();
    let mut acc = acc.clone();
    for (idx, step) in steps.iter().enumerate().skip(start) {
        match step {
            Step::Gate { gate, cond } => {
                let apply = match cond {
                    None => true,
                    Some(cd) => {
                        let Some(&v) = history.get(&cd.reg) else {
                            return Err(Error::Internal(format!(
                                "register {} was not split before its use",
                                cd.reg
                            )));
                        };
                        v == cd.value
                    }
                };
                if apply {
                    acc = CliffordAction::compose(gate.action(), &acc)?;
                }
            }
            Step::Measure { a, reg, shift } => {
                let b = acc.inverse().apply(a);
                let total = (acc.phase(&b) + shift) % d;
                let read_later = steps[idx + 1..]
                    .iter()
                    .any(|st| matches!(st, Step::Gate { cond: Some(cd), .. } if cd.reg == *reg));
                let next = if read_later {
                    let mut kids = Vec::with_capacity(d as usize);
                    for s in 0..d {
                        let mut h = history.clone();
                        h.insert(*reg, s);
                        kids.push(compile_from(c, idx + 1, &acc, &h)?);
                    }
                    Branches::Split(kids)
                } else {
                    Branches::Same(Box::new(compile_from(c, idx + 1, &acc, history)?))
                };
                return Ok(MeasurementTree::Measure {
                    a: b,
                    reg: *reg,
                    shift: total,
                    next,
                });
            }
        }
    }
    Ok(MeasurementTree::Done)
}
