use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gate::CliffordGate;
use crate::cohomology::{ClassDecision, OneCochain, Tuple, MAX_LINEAR_POINTS};
use crate::error::{contract, Error, Result};
use crate::modlinalg::{LinearSystem, SolveOutcome};
use crate::pauli::{Gauge, PauliPoint, Space};

/// `Phi~_g(a) + Phi~_g(b) - Phi~_g(a+b)` for `f = [a|b]`.
pub fn phi_cov_eval(gate: &CliffordGate, f: &Tuple) -> Result<u32> {
    match f.entries() {
        [a, b] => {
            let s = gate.action().space();
            s.check(a)?;
            s.check(b)?;
            Ok(gate.action().phi_cov(a, b))
        }
        _ => contract(format!("{f} is not a degree-2 tuple")),
    }
}

/// A gate and face with `g boundary(f) = boundary(f)` and `Phi~_g(boundary f) != 0`.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub gate: CliffordGate,
    pub u: PauliPoint,
    pub v: PauliPoint,
    pub value: u32,
}

impl Obstruction {
    /// Builds the obstruction for a given face, checking both defining conditions.
    pub fn at(gate: &CliffordGate, u: &PauliPoint, v: &PauliPoint) -> Result<Self> {
        let act = gate.action();
        let s = act.space();
        s.check(u)?;
        s.check(v)?;
        if !act.fixes_boundary(u, v) {
            return contract(format!(
                "{} does not fix the boundary of [{u}|{v}]",
                gate.name()
            ));
        }
        let value = act.phi_cov(u, v);
        if value == 0 {
            return contract(format!("Phi_cov of {} vanishes on [{u}|{v}]", gate.name()));
        }
        Ok(Self {
            gate: gate.clone(),
            u: u.clone(),
            v: v.clone(),
            value,
        })
    }

    /// The 2-chain `[u|v]`.
    pub fn face(&self) -> Tuple {
        Tuple::pair(&self.u, &self.v)
    }

    /// Re-checks the obstruction from the gate's extracted action.
    pub fn verify(&self) -> bool {
        let act = self.gate.action();
        act.fixes_boundary(&self.u, &self.v)
            && act.phi_cov(&self.u, &self.v) == self.value
            && self.value != 0
    }

    pub fn record(&self) -> ObstructionRecord {
        let act = self.gate.action();
        let uv = &self.u + &self.v;
        ObstructionRecord {
            gate: self.gate.name().to_string(),
            d: act.space().d(),
            n: act.space().n(),
            u: self.u.coords(),
            v: self.v.coords(),
            images: [
                act.apply(&self.u).coords(),
                act.apply(&self.v).coords(),
                act.apply(&uv).coords(),
            ],
            phases: [act.phase(&self.u), act.phase(&self.v), act.phase(&uv)],
            value: self.value,
        }
    }
}

/// JSON layout: the face `[u|v]`, where `S_g` sends `u, v, u+v`, and the three conjugation phases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionRecord {
    pub gate: String,
    pub d: u32,
    pub n: usize,
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    /// `S_g u`, `S_g v`, `S_g (u+v)`
    pub images: [Vec<u32>; 3],
    /// `Phi~_g(u)`, `Phi~_g(v)`, `Phi~_g(u+v)`
    pub phases: [u32; 3],
    pub value: u32,
}

impl ObstructionRecord {
    /// Recomputes the value from the recorded phases and images alone.
    pub fn is_consistent(&self) -> bool {
        let d = self.d;
        let value = (self.phases[0] + self.phases[1] + d - self.phases[2]) % d;
        let uv: Vec<u32> = self
            .u
            .iter()
            .zip(&self.v)
            .map(|(a, b)| (a + b) % d)
            .collect();
        let before = boundary_terms(d, [&self.u, &self.v, &uv]);
        let after = boundary_terms(d, [&self.images[0], &self.images[1], &self.images[2]]);
        value == self.value && value != 0 && before == after
    }
}

/// `[a] + [b] - [c]` as a normalised coefficient map.
fn boundary_terms(d: u32, [a, b, c]: [&Vec<u32>; 3]) -> BTreeMap<Vec<u32>, u32> {
    let mut out = BTreeMap::new();
    for (p, k) in [(a, 1), (b, 1), (c, d - 1)] {
        *out.entry(p.clone()).or_insert(0) += k;
    }
    out.retain(|_, k| {
        *k %= d;
        *k != 0
    });
    out
}

fn guard(s: Space) -> Result<()> {
    if s.size() > MAX_LINEAR_POINTS {
        return Err(Error::Resource(format!(
            "|E| = {} exceeds {MAX_LINEAR_POINTS} for face enumeration",
            s.size()
        )));
    }
    Ok(())
}

/// First `(gate, [a|b])` in gate order, then point-index order, that obstructs covariance.
pub fn find_obstruction(g: &Gauge, gates: &[CliffordGate]) -> Result<Option<Obstruction>> {
    let s = g.space();
    guard(s)?;
    for gate in gates {
        if gate.action().space() != s {
            return contract(format!("gate {} acts on a different space", gate.name()));
        }
        let act = gate.action();
        let hit = (0..s.size()).into_par_iter().find_map_first(|i| {
            let a = s.point(i);
            (0..s.size())
                .find_map(|j| {
                    let b = s.point(j);
                    (act.fixes_boundary(&a, &b) && act.phi_cov(&a, &b) != 0).then_some(b)
                })
                .map(|b| (a, b))
        });
        if let Some((u, v)) = hit {
            return Obstruction::at(gate, &u, &v).map(Some);
        }
    }
    Ok(None)
}

/// Witness that `[Phi_cov]` is nontrivial.
#[derive(Clone, Debug)]
pub enum PhiCovWitness {
    Obstruction(Obstruction),
    /// Left combination of face equations `(gate index, a, b, coefficient)` whose left side
    /// cancels while the right side equals `value`.
    Combination {
        terms: Vec<(usize, PauliPoint, PauliPoint, u32)>,
        value: u32,
    },
}

/// Decides `[Phi_cov] = 0` on a generating set by solving
/// `nu(a) + nu(b) - nu(a+b) - nu(Sa) - nu(Sb) + nu(S(a+b)) = Phi~_g(boundary [a|b])`.
pub fn decide_phi_cov_trivial(
    g: &Gauge,
    gates: &[CliffordGate],
) -> Result<ClassDecision<PhiCovWitness>> {
    let s = g.space();
    if s.size() > MAX_LINEAR_POINTS {
        return Err(Error::Resource(format!(
            "|E| = {} exceeds {MAX_LINEAR_POINTS}; use find_obstruction",
            s.size()
        )));
    }
    if let Some(gate) = gates.iter().find(|gate| gate.action().space() != s) {
        return contract(format!("gate {} acts on a different space", gate.name()));
    }
    let d = s.d() as i64;
    let size = s.size();

    // rows: (gate, i, j, terms, rhs)
    type Row = (usize, usize, usize, Vec<(usize, i64)>, u32);
    let rows: Vec<Row> = gates
        .iter()
        .enumerate()
        .flat_map(|(gi, gate)| {
            let act = gate.action();
            (0..size)
                .into_par_iter()
                .flat_map_iter(move |i| {
                    let a = s.point(i);
                    (i..size).filter_map(move |j| {
                        let b = s.point(j);
                        let k = s.index(&(&a + &b));
                        let mut coeffs: Vec<(usize, i64)> = vec![
                            (i, 1),
                            (j, 1),
                            (k, -1),
                            (act.apply_index(i), -1),
                            (act.apply_index(j), -1),
                            (act.apply_index(k), 1),
                        ];
                        coeffs.sort_unstable();
                        let mut terms: Vec<(usize, i64)> = Vec::new();
                        for (v, c) in coeffs {
                            match terms.last_mut() {
                                Some((lv, lc)) if *lv == v => *lc += c,
                                _ => terms.push((v, c)),
                            }
                        }
                        terms.retain(|&(v, c)| v != 0 && c.rem_euclid(d) != 0);
                        let rhs = act.phi_cov(&a, &b);
                        (!terms.is_empty() || rhs != 0).then(|| {
                            let terms = terms.into_iter().map(|(v, c)| (v - 1, c)).collect();
                            (gi, i, j, terms, rhs)
                        })
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut sys = LinearSystem::new(size - 1, d as u64);
    for (_, _, _, terms, rhs) in &rows {
        sys.push(terms, *rhs as i64);
    }
    match sys.solve() {
        SolveOutcome::Consistent(x) => {
            let mut values = vec![0u32; size];
            for (i, v) in x.into_iter().enumerate() {
                values[i + 1] = v as u32;
            }
            let nu = OneCochain::new(s, values)?;
            let neg: Vec<u32> = nu.values().iter().map(|&v| (s.d() - v) % s.d()).collect();
            let shift = OneCochain::new(s, neg)?;
            for gate in gates {
                let act = gate.action().regauged(&shift)?;
                let bad = (0..size).into_par_iter().any(|i| {
                    let a = s.point(i);
                    (0..size).any(|j| act.phi_cov(&a, &s.point(j)) != 0)
                });
                if bad {
                    return Err(Error::Internal(format!(
                        "Phi_cov of {} survives the re-gauge",
                        gate.name()
                    )));
                }
            }
            Ok(ClassDecision::Trivial { nu })
        }
        SolveOutcome::Inconsistent(y) => {
            if let Some(ob) = find_obstruction(g, gates)? {
                return Ok(ClassDecision::Nontrivial(PhiCovWitness::Obstruction(ob)));
            }
            let mut value = 0u64;
            let terms = y
                .iter()
                .map(|&(r, k)| {
                    let (gi, i, j, _, rhs) = &rows[r];
                    value += k * *rhs as u64;
                    (*gi, s.point(*i), s.point(*j), k as u32)
                })
                .collect();
            Ok(ClassDecision::Nontrivial(PhiCovWitness::Combination {
                terms,
                value: (value % d as u64) as u32,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::gate::extract_action;
    use crate::clifford::gates::{fourier_gate, generator_set, hadamard, obstruction_gate};
    use crate::clifford::CliffordAction;
    use crate::pauli::gauge_matrix;
    use proptest::prelude::*;

    fn p(d: u32, z: i64, x: i64) -> PauliPoint {
        PauliPoint::new(d, &[z], &[x])
    }

    /// Faces from the known hand computations.
    fn known_face(d: u32) -> (PauliPoint, PauliPoint) {
        let h = (d / 2) as i64;
        if d % 4 == 2 {
            (p(d, h, 0), p(d, 0, h))
        } else {
            (p(d, 1, 0), p(d, 1, h))
        }
    }

    #[test]
    fn hadamard_face_value() {
        let g = Gauge::standard(2, 1).unwrap();
        let h = extract_action(&g, "H", hadamard()).unwrap();
        let f = Tuple::pair(&p(2, 0, 1), &p(2, 1, 0));
        assert_eq!(phi_cov_eval(&h, &f).unwrap(), 1);
        assert!(phi_cov_eval(&h, &Tuple::single(&p(2, 1, 0))).is_err());
    }

    #[test]
    fn pauli_and_identity_gates_vanish_on_boundaries() {
        for d in [2u32, 3, 4] {
            let g = Gauge::standard(d, 1).unwrap();
            let s = g.space();
            for b in s.points() {
                let gate = extract_action(&g, "T", gauge_matrix(&g, &b).unwrap()).unwrap();
                for a in s.points() {
                    for c in s.points() {
                        assert_eq!(phi_cov_eval(&gate, &Tuple::pair(&a, &c)).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn hadamard_obstruction_is_first_face() {
        let g = Gauge::standard(2, 1).unwrap();
        let h = extract_action(&g, "H", hadamard()).unwrap();
        let ob = find_obstruction(&g, &[h]).unwrap().unwrap();
        assert_eq!(
            (ob.u.clone(), ob.v.clone(), ob.value),
            (p(2, 1, 0), p(2, 0, 1), 1)
        );
        assert!(ob.verify());
    }

    #[test]
    fn known_faces_carry_half_d() {
        for d in [2u32, 4, 6, 8] {
            let gate = obstruction_gate(d).unwrap();
            let (u, v) = known_face(d);
            let ob = Obstruction::at(&gate, &u, &v).unwrap();
            assert_eq!(ob.value, d / 2, "d={d}");
            let rec = ob.record();
            assert!(rec.is_consistent());
            let back: ObstructionRecord =
                serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
            assert_eq!(back, rec);
        }
    }

    #[test]
    fn known_edge_phases() {
        // Fourier: T_u -> T_v -> T_{-u} = T_u (u of order 2), phases 0, 2m+1, 0
        for d in [2u32, 6] {
            let act = fourier_gate(d).unwrap().action().clone();
            let (u, v) = known_face(d);
            assert_eq!(act.apply(&u), v);
            assert_eq!(act.apply(&v), u);
            assert_eq!(act.apply(&(&u + &v)), &u + &v);
            assert_eq!(
                (act.phase(&u) + act.phase(&v) + d - act.phase(&(&u + &v))) % d,
                d / 2
            );
        }
        // quadratic: g T_u g^dagger = T_v, g T_v g^dagger = omega^{2m} T_u, g T_{u+v} g^dagger = T_{u+v}
        for d in [4u32, 8] {
            let act = obstruction_gate(d).unwrap().action().clone();
            let (u, v) = known_face(d);
            let w = &u + &v;
            assert_eq!((act.apply(&u), act.phase(&u)), (v.clone(), 0));
            assert_eq!((act.apply(&v), act.phase(&v)), (u.clone(), d / 2));
            assert_eq!((act.apply(&w), act.phase(&w)), (w.clone(), 0));
        }
    }

    #[test]
    fn fourier_six_obstruction_found() {
        let g = Gauge::standard(6, 1).unwrap();
        let ob = find_obstruction(&g, &[fourier_gate(6).unwrap()])
            .unwrap()
            .unwrap();
        assert!(ob.verify());
        assert!(ob.record().is_consistent());
    }

    #[test]
    fn odd_generators_have_no_obstruction() {
        for (d, n) in [(3u32, 1usize), (5, 1), (3, 2)] {
            let g = Gauge::standard(d, n).unwrap();
            let gates = generator_set(&g).unwrap();
            assert!(find_obstruction(&g, &gates).unwrap().is_none());
            match decide_phi_cov_trivial(&g, &gates).unwrap() {
                ClassDecision::Trivial { nu } => assert!(nu.is_zero(), "d={d} n={n}"),
                ClassDecision::Nontrivial(_) => panic!("d={d} n={n} should be trivial"),
            }
        }
    }

    #[test]
    fn even_classes_are_nontrivial_in_two_gauges() {
        for d in [2u32, 4, 6] {
            let base = Gauge::standard(d, 1).unwrap();
            let s = base.space();
            let nu: Vec<u32> = (0..s.size())
                .map(|i| if i == 0 { 0 } else { (i as u32 * 7 + 3) % d })
                .collect();
            for g in [base.clone(), base.shifted(&nu).unwrap()] {
                let gates = generator_set(&g).unwrap();
                let dec = decide_phi_cov_trivial(&g, &gates).unwrap();
                assert!(!dec.is_trivial(), "d={d}");
                if let ClassDecision::Nontrivial(PhiCovWitness::Obstruction(ob)) = dec {
                    assert!(ob.verify());
                }
            }
        }
        let g = Gauge::standard(2, 1).unwrap();
        let h = extract_action(&g, "H", hadamard()).unwrap();
        assert!(!decide_phi_cov_trivial(&g, &[h]).unwrap().is_trivial());
    }

    #[test]
    fn shifted_odd_gauge_is_trivial_with_witness() {
        let base = Gauge::standard(3, 1).unwrap();
        let nu = vec![0, 1, 2, 2, 0, 1, 1, 1, 0];
        let g = base.shifted(&nu).unwrap();
        let gates = generator_set(&g).unwrap();
        let ClassDecision::Trivial { nu: w } = decide_phi_cov_trivial(&g, &gates).unwrap() else {
            panic!("expected trivial");
        };
        assert!(!w.is_zero());
    }

    #[test]
    fn odd_classes_trivial_in_shifted_gauges_and_composite_d() {
        for (d, n) in [(5u32, 1usize), (3, 2), (9, 1), (15, 1)] {
            let base = Gauge::standard(d, n).unwrap();
            let s = base.space();
            let nu: Vec<u32> = (0..s.size())
                .map(|i| if i == 0 { 0 } else { (i as u32 * 5 + 1) % d })
                .collect();
            for g in [base.clone(), base.shifted(&nu).unwrap()] {
                let gates = generator_set(&g).unwrap();
                assert!(
                    decide_phi_cov_trivial(&g, &gates).unwrap().is_trivial(),
                    "d={d} n={n}"
                );
            }
        }
    }

    #[test]
    fn oversize_is_a_resource_error() {
        let g = Gauge::standard(3, 4).unwrap();
        assert!(matches!(
            decide_phi_cov_trivial(&g, &[]),
            Err(Error::Resource(_))
        ));
        assert!(matches!(find_obstruction(&g, &[]), Err(Error::Resource(_))));
    }

    fn word_action(gates: &[crate::clifford::CliffordGate], word: &[usize]) -> CliffordAction {
        let s = gates[0].action().space();
        word.iter().fold(CliffordAction::identity(s), |acc, &i| {
            CliffordAction::compose(gates[i].action(), &acc).unwrap()
        })
    }

    fn word_unitary(
        gates: &[crate::clifford::CliffordGate],
        word: &[usize],
    ) -> crate::dense::CMatrix {
        let dim = gates[0].unitary().nrows();
        word.iter()
            .fold(crate::dense::CMatrix::identity(dim, dim), |acc, &i| {
                gates[i].unitary() * acc
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn composition_matches_extraction(d in prop::sample::select(vec![2u32, 3, 4]),
                                          word in prop::collection::vec(0usize..64, 1..=3)) {
            let g = Gauge::standard(d, 1).unwrap();
            let gates = generator_set(&g).unwrap();
            let word: Vec<usize> = word.into_iter().map(|i| i % gates.len()).collect();
            let direct = extract_action(&g, "w", word_unitary(&gates, &word)).unwrap();
            prop_assert_eq!(direct.action(), &word_action(&gates, &word));
        }

        #[test]
        fn pauli_factor_does_not_change_boundary_values(d in prop::sample::select(vec![2u32, 3, 4, 6]),
                                                        gi in 0usize..8, bi in 0usize..64) {
            let g = Gauge::standard(d, 1).unwrap();
            let gates = generator_set(&g).unwrap();
            let s = g.space();
            let gate = &gates[gi % gates.len()];
            let b = s.point(bi % s.size());
            let tb = extract_action(&g, "T", gauge_matrix(&g, &b).unwrap()).unwrap();
            let prod = CliffordAction::compose(tb.action(), gate.action()).unwrap();
            for a in s.points() {
                for c in s.points() {
                    prop_assert_eq!(prod.phi_cov(&a, &c), gate.action().phi_cov(&a, &c));
                }
            }
        }

        #[test]
        fn regauging_matches_extraction(d in prop::sample::select(vec![2u32, 3, 4]),
                                        seed in any::<u64>(), gi in 0usize..8) {
            let base = Gauge::standard(d, 1).unwrap();
            let s = base.space();
            let nu: Vec<u32> = (0..s.size() as u64)
                .map(|i| if i == 0 { 0 } else { (seed.wrapping_mul(i + 11) >> 7) as u32 % d })
                .collect();
            let shifted = base.shifted(&nu).unwrap();
            let gates = generator_set(&base).unwrap();
            let gate = &gates[gi % gates.len()];
            let again = extract_action(&shifted, "g", gate.unitary().clone()).unwrap();
            let expect = gate.action().regauged(&OneCochain::new(s, nu).unwrap()).unwrap();
            prop_assert_eq!(again.action(), &expect);
        }
    }
}
