use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{extract_action, generator_set, CliffordGate};
use crate::dense::CMatrix;
use crate::error::{contract, Result};
use crate::pauli::{Gauge, PauliPoint};

/// Apply the gate only when register `reg` holds `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub reg: usize,
    pub value: u32,
}

#[derive(Clone, Debug)]
pub enum Step {
    Gate {
        gate: CliffordGate,
        cond: Option<Condition>,
    },
    /// Measures `T_a` and stores `s - shift` in register `reg`, where `omega^s` is the eigenvalue.
    Measure {
        a: PauliPoint,
        reg: usize,
        shift: u32,
    },
}

/// Clifford gates and Pauli measurements on `n` qudits, with labels read in `gauge`.
#[derive(Clone, Debug)]
pub struct Circuit {
    gauge: Gauge,
    steps: Vec<Step>,
}

impl Circuit {
    /// Checks spaces, register uniqueness, and that conditions only read earlier registers.
    pub fn new(gauge: Gauge, steps: Vec<Step>) -> Result<Self> {
        let s = gauge.space();
        let mut seen = BTreeSet::new();
        for (i, step) in steps.iter().enumerate() {
            match step {
                Step::Gate { gate, cond } => {
                    if gate.action().space() != s {
                        return contract(format!(
                            "step {i}: gate {} acts on a different space",
                            gate.name()
                        ));
                    }
                    if let Some(c) = cond {
                        if !seen.contains(&c.reg) {
                            return contract(format!(
                                "step {i}: condition reads register {} before it is written",
                                c.reg
                            ));
                        }
                        if c.value >= s.d() {
                            return contract(format!(
                                "step {i}: condition value {} is not below d",
                                c.value
                            ));
                        }
                    }
                }
                Step::Measure { a, reg, shift } => {
                    s.check(a)?;
                    if *shift >= s.d() {
                        return contract(format!("step {i}: outcome shift {shift} is not below d"));
                    }
                    if !seen.insert(*reg) {
                        return contract(format!("step {i}: register {reg} is written twice"));
                    }
                }
            }
        }
        if s.d() > 16 {
            return contract("outcome strings use one hex digit per measurement, so d <= 16");
        }
        Ok(Self { gauge, steps })
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn d(&self) -> u32 {
        self.gauge.d()
    }

    pub fn n(&self) -> usize {
        self.gauge.n()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn measurement_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Measure { .. }))
            .count()
    }

    pub fn is_measurement_only(&self) -> bool {
        self.measurement_count() == self.steps.len()
    }

    /// Parses the JSON circuit format, resolving gate names against [`generator_set`].
    pub fn from_json(text: &str, gauge: Option<Gauge>) -> Result<Self> {
        let file: CircuitFile = serde_json::from_str(text)?;
        let g = match gauge {
            Some(g) if g.d() == file.d && g.n() == file.n => g,
            Some(g) => {
                return contract(format!(
                    "gauge is for (d, n) = ({}, {}), circuit is ({}, {})",
                    g.d(),
                    g.n(),
                    file.d,
                    file.n
                ))
            }
            None => Gauge::standard(file.d, file.n)?,
        };
        let library = generator_set(&g)?;
        let steps = file
            .steps
            .into_iter()
            .enumerate()
            .map(|(i, st)| match st {
                StepFile::Gate { name, matrix, cond } => {
                    let gate = match (name, matrix) {
                        (Some(name), None) => library
                            .iter()
                            .find(|g| g.name() == name)
                            .cloned()
                            .ok_or_else(|| {
                                crate::Error::Contract(format!("step {i}: unknown gate {name}"))
                            })?,
                        (name, Some(m)) => extract_action(
                            &g,
                            name.unwrap_or_else(|| format!("U{i}")),
                            parse_matrix(&m)?,
                        )?,
                        (None, None) => {
                            return contract(format!("step {i}: gate needs a name or a matrix"))
                        }
                    };
                    Ok(Step::Gate { gate, cond })
                }
                StepFile::Measure { a, reg } => Ok(Step::Measure {
                    a: PauliPoint::from_coords(g.d(), &a)?,
                    reg,
                    shift: 0,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(g, steps)
    }

    /// The JSON form; gates are written by name, with the matrix when it is not a library gate.
    pub fn to_json(&self) -> Result<String> {
        let library = generator_set(&self.gauge)?;
        let steps = self
            .steps
            .iter()
            .map(|st| match st {
                Step::Gate { gate, cond } => {
                    let known = library
                        .iter()
                        .any(|l| l.name() == gate.name() && l.unitary() == gate.unitary());
                    StepFile::Gate {
                        name: Some(gate.name().to_string()),
                        matrix: (!known).then(|| {
                            gate.unitary()
                                .row_iter()
                                .map(|r| r.iter().map(|c| [c.re, c.im]).collect())
                                .collect()
                        }),
                        cond: *cond,
                    }
                }
                Step::Measure { a, reg, .. } => StepFile::Measure {
                    a: a.coords().into_iter().map(i64::from).collect(),
                    reg: *reg,
                },
            })
            .collect();
        Ok(serde_json::to_string(&CircuitFile {
            d: self.d(),
            n: self.n(),
            steps,
        })?)
    }
}

fn parse_matrix(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) {
        return contract("gate matrix must be square");
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

#[derive(Serialize, Deserialize)]
struct CircuitFile {
    d: u32,
    n: usize,
    steps: Vec<StepFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum StepFile {
    Gate {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<[f64; 2]>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cond: Option<Condition>,
    },
    Measure {
        a: Vec<i64>,
        reg: usize,
    },
}
