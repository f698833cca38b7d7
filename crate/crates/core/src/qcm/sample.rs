use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::compile::{Branches, MeasurementTree};
use super::oracle::{digit, Distribution};
use crate::error::{contract, Error, Result};
use crate::pauli::{symplectic, PauliPoint, Space};
use crate::wigner::{PhasePointBasis, PositiveRepWitness, WignerFunction};

/// Input Wigner values below `-NEGATIVITY_TOL` are rejected.
pub const NEGATIVITY_TOL: f64 = 1e-12;

/// Phase-space point and outcome record of one shot.
#[derive(Clone, Debug)]
pub struct SamplerState {
    pub point: PauliPoint,
    pub outcomes: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
}

impl SampleReport {
    pub fn distribution(&self) -> Distribution {
        self.counts
            .iter()
            .map(|(k, &c)| (k.clone(), c as f64 / self.shots as f64))
            .collect()
    }
}

/// Cumulative table for drawing `v ~ W`.
struct PointSampler {
    cumulative: Vec<f64>,
}

impl PointSampler {
    fn new(w: &WignerFunction) -> Self {
        let mut acc = 0.0;
        let cumulative = w
            .values
            .iter()
            .map(|&x| {
                acc += x.max(0.0);
                acc
            })
            .collect();
        Self { cumulative }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("nonempty");
        let u = rng.random::<f64>() * total;
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }
}

/// Runs one shot from phase-space point `v`.
pub fn run_shot<R: Rng>(
    tree: &MeasurementTree,
    space: Space,
    witness: &PositiveRepWitness,
    v: PauliPoint,
    rng: &mut R,
) -> SamplerState {
    let d = space.d();
    let mut state = SamplerState {
        point: v,
        outcomes: Vec::new(),
    };
    let mut node = tree;
    while let MeasurementTree::Measure { a, shift, next, .. } = node {
        // Theta = delta_{r_a, s + [v,a]}
        let s = (witness.r[space.index(a)] + symplectic(a, &state.point)) % d;
        let reported = (s + d - shift) % d;
        state.outcomes.push(reported);
        let k = rng.random_range(0..d) as i64;
        state.point = &state.point + &a.scaled(k);
        node = match next {
            Branches::Same(t) => t,
            Branches::Split(ts) => &ts[reported as usize],
        };
    }
    state
}

/// Samples a compiled program: `v ~ W_in`, outcomes read off the effects, `v <- v + k a` after
/// each measurement. Shot `i` uses the ChaCha stream `(seed, i)`.
pub fn simulate_sampling(
    basis: &PhasePointBasis,
    witness: &PositiveRepWitness,
    tree: &MeasurementTree,
    w_in: &WignerFunction,
    shots: u64,
    seed: u64,
) -> Result<SampleReport> {
    let space = basis.space();
    if space.d().is_multiple_of(2) {
        return contract("sampling simulation is restricted to odd d");
    }
    if w_in.space != space || witness.r.len() != space.size() {
        return contract("Wigner function, witness and basis must share a space");
    }
    let negative = w_in.negative_points(NEGATIVITY_TOL);
    if !negative.is_empty() {
        return Err(Error::Negativity {
            points: negative.into_iter().map(|(p, w)| (p.coords(), w)).collect(),
        });
    }
    let sampler = PointSampler::new(w_in);
    let counts = (0..shots)
        .into_par_iter()
        .fold(BTreeMap::<String, u64>::new, |mut acc, shot| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shot);
            let v = space.point(sampler.draw(&mut rng));
            let st = run_shot(tree, space, witness, v, &mut rng);
            *acc.entry(st.outcomes.iter().map(|&s| digit(s)).collect())
                .or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    Ok(SampleReport {
        shots,
        seed,
        counts,
    })
}
