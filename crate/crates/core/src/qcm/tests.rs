use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::{extract_action, fourier_matrix, generator_set};
use crate::dense::{random_density, CMatrix};
use crate::pauli::PauliPoint;
use crate::wigner::{construct_positive_rep, wigner_of, PositiveRep};
use crate::Error;

fn ket0(dim: usize) -> CMatrix {
    let mut rho = CMatrix::zeros(dim, dim);
    rho[(0, 0)] = Complex64::new(1.0, 0.0);
    rho
}

fn measure(a: PauliPoint, reg: usize) -> Step {
    Step::Measure { a, reg, shift: 0 }
}

fn assert_close(p: &Distribution, q: &Distribution, tol: f64) {
    assert!(total_variation(p, q) < tol, "{p:?} vs {q:?}");
}

#[test]
fn empty_circuit() {
    let g = Gauge::standard(3, 1).unwrap();
    let c = Circuit::new(g.clone(), vec![]).unwrap();
    let dist = exact_distribution(&c, &ket0(3)).unwrap();
    assert_eq!(dist.len(), 1);
    assert!((dist[""] - 1.0).abs() < 1e-15);
    assert_eq!(compile_measurement_only(&c).unwrap(), MeasurementTree::Done);
}

#[test]
fn eigenstate_and_conjugate_basis() {
    let g = Gauge::standard(3, 1).unwrap();
    let z = Circuit::new(g.clone(), vec![measure(PauliPoint::new(3, &[1], &[0]), 0)]).unwrap();
    let dz = exact_distribution(&z, &ket0(3)).unwrap();
    assert!((dz["0"] - 1.0).abs() < 1e-12);
    let x = Circuit::new(g, vec![measure(PauliPoint::new(3, &[0], &[1]), 0)]).unwrap();
    let dx = exact_distribution(&x, &ket0(3)).unwrap();
    for k in ["0", "1", "2"] {
        assert!((dx[k] - 1.0 / 3.0).abs() < 1e-12);
    }
}

#[test]
fn fourier_then_z_compiles_to_x() {
    let g = Gauge::standard(3, 1).unwrap();
    let f = extract_action(&g, "F", fourier_matrix(3)).unwrap();
    let c = Circuit::new(
        g.clone(),
        vec![
            Step::Gate {
                gate: f,
                cond: None,
            },
            measure(PauliPoint::new(3, &[1], &[0]), 0),
        ],
    )
    .unwrap();
    let tree = compile_measurement_only(&c).unwrap();
    let MeasurementTree::Measure { a, .. } = &tree else {
        panic!("expected a measurement")
    };
    assert_eq!(a, &PauliPoint::new(3, &[0], &[1]));
    let flat = tree.as_circuit(&g).unwrap().unwrap();
    assert!(flat.is_measurement_only());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let rho = random_density(3, &mut rng);
        assert_close(
            &exact_distribution(&c, &rho).unwrap(),
            &exact_distribution(&flat, &rho).unwrap(),
            1e-10,
        );
    }
}

#[test]
fn compiled_matches_oracle_on_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (d, n) in [(2u32, 2usize), (3, 1), (3, 2), (4, 1)] {
        let g = Gauge::standard(d, n).unwrap();
        let gates = generator_set(&g).unwrap();
        for _ in 0..15 {
            let c = random_circuit(&g, &gates, 6, 3, true, &mut rng).unwrap();
            let tree = compile_measurement_only(&c).unwrap();
            let rho = random_density(g.space().dim(), &mut rng);
            let exact = exact_distribution(&c, &rho).unwrap();
            let compiled = tree_distribution(&tree, &g, &rho).unwrap();
            assert_close(&exact, &compiled, 1e-10);
            assert!((exact.values().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn oracle_limits() {
    let g = Gauge::standard(3, 1).unwrap();
    let steps = (0..7)
        .map(|r| measure(PauliPoint::new(3, &[1], &[0]), r))
        .collect();
    let c = Circuit::new(g, steps).unwrap();
    assert!(matches!(
        exact_distribution(&c, &ket0(3)),
        Err(Error::Resource(_))
    ));
}

fn positive(
    g: &Gauge,
) -> (
    crate::wigner::PhasePointBasis,
    crate::wigner::PositiveRepWitness,
) {
    match construct_positive_rep(g).unwrap() {
        PositiveRep::Constructed { basis, witness } => (basis, witness),
        PositiveRep::Refused(_) => panic!("odd d is positively representable"),
    }
}

#[test]
fn sampling_eigenstate_and_repeat() {
    let g = Gauge::standard(3, 1).unwrap();
    let (basis, witness) = positive(&g);
    let w = wigner_of(&basis, &ket0(3)).unwrap();
    let z = Circuit::new(g.clone(), vec![measure(PauliPoint::new(3, &[1], &[0]), 0)]).unwrap();
    let tree = compile_measurement_only(&z).unwrap();
    let rep = simulate_sampling(&basis, &witness, &tree, &w, 100_000, 1).unwrap();
    assert_eq!(rep.counts.get("0"), Some(&100_000));

    let x = PauliPoint::new(3, &[0], &[1]);
    let xx = Circuit::new(g, vec![measure(x.clone(), 0), measure(x, 1)]).unwrap();
    let tree = compile_measurement_only(&xx).unwrap();
    let rep = simulate_sampling(&basis, &witness, &tree, &w, 30_000, 9).unwrap();
    assert!(rep
        .counts
        .keys()
        .all(|k| k.as_bytes()[0] == k.as_bytes()[1]));
    assert_eq!(rep.counts.len(), 3);
    let again = simulate_sampling(&basis, &witness, &tree, &w, 30_000, 9).unwrap();
    assert_eq!(rep.counts, again.counts);
}

#[test]
fn sampling_tracks_the_oracle() {
    let g = Gauge::standard(3, 2).unwrap();
    let (basis, witness) = positive(&g);
    let gates = generator_set(&g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..4 {
        let prep = random_circuit(&g, &gates, 6, 1, false, &mut rng).unwrap();
        // stabilizer input: Clifford image of |00>
        let mut rho = ket0(9);
        for st in prep.steps() {
            if let Step::Gate { gate, .. } = st {
                rho = gate.conjugate(&rho);
            }
        }
        let c = random_circuit(&g, &gates, 6, 3, true, &mut rng).unwrap();
        let tree = compile_measurement_only(&c).unwrap();
        let w = wigner_of(&basis, &rho).unwrap();
        let rep = simulate_sampling(&basis, &witness, &tree, &w, 40_000, i).unwrap();
        let tv = total_variation(&rep.distribution(), &exact_distribution(&c, &rho).unwrap());
        assert!(tv < 0.02, "circuit {i}: tv {tv}");
    }
}

#[test]
fn negative_input_is_refused() {
    let g = Gauge::standard(3, 1).unwrap();
    let (basis, witness) = positive(&g);
    // the strange state (|1> - |2>)/sqrt 2 has negative Gross Wigner entries
    let mut psi = nalgebra::DVector::<Complex64>::zeros(3);
    psi[1] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    psi[2] = Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let rho = &psi * psi.adjoint();
    let w = wigner_of(&basis, &rho).unwrap();
    let c = Circuit::new(g, vec![measure(PauliPoint::new(3, &[1], &[0]), 0)]).unwrap();
    let tree = compile_measurement_only(&c).unwrap();
    match simulate_sampling(&basis, &witness, &tree, &w, 10, 0) {
        Err(Error::Negativity { points }) => assert!(!points.is_empty()),
        other => panic!("expected negativity, got {other:?}"),
    }
}
