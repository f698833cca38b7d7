//! Clifford circuits with Pauli measurements: gate elimination, a dense oracle and phase-space sampling.

mod circuit;
mod compile;
mod oracle;
mod sample;

pub use circuit::{Circuit, Condition, Step};
pub use compile::{compile_measurement_only, Branches, MeasurementTree};
pub use oracle::{
    exact_distribution, total_variation, tree_distribution, Distribution, MAX_ORACLE_DIM,
    MAX_ORACLE_MEASUREMENTS,
};
pub use sample::{run_shot, simulate_sampling, SampleReport, SamplerState, NEGATIVITY_TOL};

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::clifford::CliffordGate;
use crate::error::Result;
use crate::pauli::Gauge;

/// Random circuit over `gates` with up to `max_gates` gates and `1..=max_measurements` nonzero
/// measurements; when `conditioned`, gates after a measurement are conditioned with probability 1/3.
pub fn random_circuit<R: Rng + ?Sized>(
    g: &Gauge,
    gates: &[CliffordGate],
    max_gates: usize,
    max_measurements: usize,
    conditioned: bool,
    rng: &mut R,
) -> Result<Circuit> {
    let s = g.space();
    let n_gates = rng.random_range(0..=max_gates);
    let n_meas = rng.random_range(1..=max_measurements.max(1));
    let mut kinds: Vec<bool> = std::iter::repeat_n(true, n_gates)
        .chain(std::iter::repeat_n(false, n_meas))
        .collect();
    for i in (1..kinds.len()).rev() {
        kinds.swap(i, rng.random_range(0..=i));
    }
    let mut steps = Vec::with_capacity(kinds.len());
    let mut regs = Vec::new();
    for is_gate in kinds {
        if is_gate {
            let gate = gates.choose(rng).expect("nonempty gate list").clone();
            let cond = (conditioned && !regs.is_empty() && rng.random_bool(1.0 / 3.0)).then(|| {
                Condition {
                    reg: *regs.choose(rng).expect("nonempty"),
                    value: rng.random_range(0..s.d()),
                }
            });
            steps.push(Step::Gate { gate, cond });
        } else {
            let a = s.point(rng.random_range(1..s.size()));
            let reg = regs.len();
            regs.push(reg);
            steps.push(Step::Measure { a, reg, shift: 0 });
        }
    }
    Circuit::new(g.clone(), steps)
}

#[cfg(test)]
mod tests;
