use proptest::prelude::*;
use topogate::cleaning::{clean, is_correctable};
use topogate::code::distance;
use topogate::geometry::Region;
use topogate::library::{color_code_15, toric_code};
use topogate::symplectic::{BitVector, PauliOperator};

/// Random logical of the toric code L = 3: a class times a stabilizer.
fn toric_logical() -> impl Strategy<Value = (usize, Vec<bool>)> {
    (1usize..16, prop::collection::vec(any::<bool>(), 18))
}

fn build_logical(code: &topogate::code::StabilizerCode, class: usize, comb: &[bool]) -> PauliOperator {
    let class_op = PauliOperator::enumerate_all(code.k()).nth(class).unwrap();
    let rep = code.logical_representative(&class_op).unwrap();
    let s = code.generator_product(&BitVector::from_bools(&comb[..code.generators().len()]));
    rep.mul(&s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn logical_class_is_a_homomorphism((c1, s1) in toric_logical(), (c2, s2) in toric_logical()) {
        let code = toric_code(3).unwrap();
        let p = build_logical(&code, c1, &s1);
        let q = build_logical(&code, c2, &s2);
        let lhs = code.logical_class(&p.mul(&q).unwrap()).unwrap();
        let rhs = code.logical_class(&p).unwrap().mul(&code.logical_class(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs.x_bits(), rhs.x_bits());
        prop_assert_eq!(lhs.z_bits(), rhs.z_bits());
    }

    #[test]
    fn toric_code_is_translation_symmetric(dx in 0i64..3, dy in 0i64..3, (c, s) in toric_logical()) {
        let code = toric_code(3).unwrap();
        let t = code.geometry().unwrap().translation(&[2 * dx, 2 * dy]).unwrap();
        for g in code.generators() {
            prop_assert!(code.contains(&g.embed(code.n(), &t)).unwrap());
        }
        let p = build_logical(&code, c, &s);
        let moved = p.embed(code.n(), &t);
        prop_assert!(code.is_logical(&moved).unwrap());
        let (a, b) = (code.logical_class(&p).unwrap(), code.logical_class(&moved).unwrap());
        prop_assert_eq!(a.x_bits(), b.x_bits());
        prop_assert_eq!(a.z_bits(), b.z_bits());
    }

    #[test]
    fn correctability_is_monotone(sites in prop::collection::vec(0usize..18, 1..10), keep in prop::collection::vec(any::<bool>(), 10)) {
        let code = toric_code(3).unwrap();
        let big = Region::from_unsorted(sites);
        let small = Region::from_sorted(big.iter().zip(&keep).filter(|(_, &k)| k).map(|(q, _)| q).collect());
        if is_correctable(&code, &big).unwrap().correctable {
            prop_assert!(is_correctable(&code, &small).unwrap().correctable);
        }
    }

    #[test]
    fn cleaning_is_idempotent((c, s) in toric_logical(), sites in prop::collection::vec(0usize..18, 1..4)) {
        let code = toric_code(3).unwrap();
        let m = Region::from_unsorted(sites);
        prop_assume!(is_correctable(&code, &m).unwrap().correctable);
        let p = build_logical(&code, c, &s);
        let once = clean(&code, &p, &m).unwrap();
        let twice = clean(&code, &once.cleaned, &m).unwrap();
        prop_assert_eq!(&twice.cleaned, &once.cleaned);
        prop_assert!(twice.stabilizer_combination.is_empty());
    }
}

#[test]
fn distance_is_translation_invariant_and_witnessed() {
    let code = toric_code(3).unwrap();
    let res = distance(&code, 3).unwrap();
    assert_eq!(res.exact(), Some(3));
    let topogate::code::DistanceResult::Exact { witness, .. } = res else { unreachable!() };
    let t = code.geometry().unwrap().translation(&[2, 4]).unwrap();
    let moved = witness.embed(code.n(), &t);
    assert_eq!(moved.weight(), 3);
    assert!(code.is_logical(&moved).unwrap());
    assert!(!code.logical_class(&moved).unwrap().is_identity_up_to_phase());
}

#[test]
fn color_code_distance_and_weight_three_logical() {
    let code = color_code_15().unwrap();
    let res = distance(&code, 3).unwrap();
    assert_eq!(res.exact(), Some(3));
    assert!(distance(&code, 2).unwrap().exact().is_none());
}
