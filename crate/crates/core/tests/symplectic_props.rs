use proptest::prelude::*;
use topogate::symplectic::{BitMatrix, BitVector, PauliOperator};

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n), 0u8..4)
        .prop_map(|(x, z, ph)| PauliOperator::from_parts(BitVector::from_bools(&x), BitVector::from_bools(&z), ph).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), cols), rows).prop_map(|r| BitMatrix::from_bools(&r).unwrap())
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in pauli(6), b in pauli(6), c in pauli(6)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutation_is_symmetric_and_bilinear(a in pauli(6), b in pauli(6), c in pauli(6)) {
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        let bc = b.mul(&c).unwrap();
        prop_assert_eq!(a.commutes(&bc).unwrap(), a.commutes(&b).unwrap() == a.commutes(&c).unwrap());
    }

    #[test]
    fn products_swap_by_the_commutation_sign(a in pauli(5), b in pauli(5)) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        let expected = if a.commutes(&b).unwrap() { ba.clone() } else { ba.negate() };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn dagger_reverses_products(a in pauli(5), b in pauli(5)) {
        let lhs = a.mul(&b).unwrap().dagger();
        let rhs = b.dagger().mul(&a.dagger()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.mul(&a.dagger()).unwrap() == PauliOperator::identity(5));
    }

    #[test]
    fn text_round_trip(a in pauli(7)) {
        let back: PauliOperator = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn solve_returns_a_true_solution(m in matrix(7, 9), x in prop::collection::vec(any::<bool>(), 9)) {
        let b = m.mul_vec(&BitVector::from_bools(&x)).unwrap();
        let sol = m.solve(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn kernel_has_the_rank_nullity_dimension(m in matrix(6, 10)) {
        let ker = m.kernel();
        prop_assert_eq!(ker.len() + m.rank(), 10);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        let span = BitMatrix::from_rows(10, ker.clone()).unwrap();
        prop_assert_eq!(span.rank(), ker.len());
    }
}
