use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topogate::circuit::dense::{max_abs_diff, pauli_matrix};
use topogate::circuit::{random_local_clifford, t_matrix, Direction, GateKind, LayeredCircuit};
use topogate::classifier::{encoded_gate, hierarchy_level, EncodedGate};
use topogate::geometry::{Lattice, Region};
use topogate::library::{color_code_15, toric_code};
use topogate::symplectic::{BitVector, PauliOperator};

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n))
        .prop_map(|(x, z)| PauliOperator::hermitian(BitVector::from_bools(&x), BitVector::from_bools(&z)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn images_stay_in_the_light_cone(seed in any::<u64>(), h in 1usize..4, q in pauli(32)) {
        let lat = Lattice::toric_edges(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_local_clifford(&lat, h, 1, &mut rng);
        let image = u.conjugate_pauli(&q).unwrap();
        let cone = u.light_cone(&q.support(), Direction::Forward);
        prop_assert!(image.support().is_subset(&cone));
        prop_assert!(cone.is_subset(&lat.neighborhood(&q.support(), h * u.range(&lat))));
        prop_assert_eq!(u.restrict_to_cone(&q.support()).conjugate_pauli(&q).unwrap(), image);
    }

    #[test]
    fn pauli_and_dense_backends_agree(seed in any::<u64>(), q in pauli(6)) {
        let lat = Lattice::cubic(&[6], false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_local_clifford(&lat, 3, 1, &mut rng);
        let m = u.circuit_unitary().unwrap();
        let lhs = &m * pauli_matrix(&q).unwrap() * m.adjoint();
        let rhs = pauli_matrix(&u.conjugate_pauli(&q).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn hierarchy_level_ignores_paulis_and_phase(p in pauli(2), theta in 0.0f64..std::f64::consts::TAU, which in 0usize..4) {
        let mut ccz = topogate::circuit::CMatrix::identity(4, 4);
        ccz[(3, 3)] = -ccz[(3, 3)];
        let t2 = t_matrix(false).kronecker(&GateKind::H.matrix());
        let w = [GateKind::Cnot.matrix(), GateKind::Swap.matrix(), t2, ccz][which].clone();
        let base = hierarchy_level(&EncodedGate::from_matrix(&w).unwrap(), 4).unwrap().level;
        let phase = num_complex::Complex64::from_polar(1.0, theta);
        let moved = pauli_matrix(&p).unwrap() * &w * phase;
        let after = hierarchy_level(&EncodedGate::from_matrix(&moved).unwrap(), 4).unwrap().level;
        prop_assert_eq!(base, after);
    }
}

#[test]
fn encoded_gate_is_functorial_under_composition() {
    let code = toric_code(2).unwrap();
    let reps: Vec<PauliOperator> = PauliOperator::enumerate_all(2)
        .skip(1)
        .map(|c| code.logical_representative(&c).unwrap())
        .collect();
    let circuit = |p: &PauliOperator| topogate::demo::pauli_circuit(p).unwrap();
    for a in &reps {
        for b in reps.iter().step_by(4) {
            let (u, v) = (circuit(a), circuit(b));
            let whole = encoded_gate(&code, &code, &u.compose(&v).unwrap()).unwrap();
            let parts = encoded_gate(&code, &code, &u).unwrap().compose(&encoded_gate(&code, &code, &v).unwrap()).unwrap();
            assert!(whole.equivalent(&parts).unwrap());
        }
    }

    let cc = color_code_15().unwrap();
    let t = LayeredCircuit::transversal(GateKind::Dense(t_matrix(false)), &Region::full(15), 15).unwrap();
    let x = topogate::demo::pauli_circuit(&cc.logical_x()[0]).unwrap();
    let whole = encoded_gate(&cc, &cc, &t.compose(&x).unwrap()).unwrap();
    let parts = encoded_gate(&cc, &cc, &t).unwrap().compose(&encoded_gate(&cc, &cc, &x).unwrap()).unwrap();
    assert!(whole.equivalent(&parts).unwrap());
}
