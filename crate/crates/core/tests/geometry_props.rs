use proptest::prelude::*;
use topogate::geometry::{Lattice, Region};

fn toric() -> Lattice {
    Lattice::toric_edges(5).unwrap()
}

fn region(n: usize) -> impl Strategy<Value = Region> {
    prop::collection::vec(0..n, 1..6).prop_map(Region::from_unsorted)
}

proptest! {
    #[test]
    fn metric_axioms(a in 0usize..50, b in 0usize..50, c in 0usize..50) {
        let lat = toric();
        prop_assert_eq!(lat.distance(a, b), lat.distance(b, a));
        prop_assert_eq!(lat.distance(a, a), 0);
        prop_assert!(lat.distance(a, c) <= lat.distance(a, b) + lat.distance(b, c));
        if a != b {
            prop_assert!(lat.distance(a, b) > 0);
        }
    }

    #[test]
    fn translations_are_isometries(a in 0usize..50, b in 0usize..50, dx in 0i64..5, dy in 0i64..5) {
        let lat = toric();
        let t = lat.translation(&[2 * dx, 2 * dy]).unwrap();
        prop_assert_eq!(lat.distance(t[a], t[b]), lat.distance(a, b));
    }

    #[test]
    fn neighbourhoods_grow_and_compose(m in region(50), r1 in 0usize..3, r2 in 0usize..3) {
        let lat = toric();
        let inner = lat.neighborhood(&m, r1);
        prop_assert!(m.is_subset(&inner));
        prop_assert!(inner.is_subset(&lat.neighborhood(&m, r1 + 1)));
        let twice = lat.neighborhood(&inner, r2);
        prop_assert!(twice.is_subset(&lat.neighborhood(&m, r1 + r2)));
        for q in inner.iter() {
            prop_assert!(m.iter().any(|p| lat.distance(p, q) <= r1));
        }
    }

    #[test]
    fn chunks_partition_the_region(m in region(50), gap in 1usize..3) {
        let lat = toric();
        let chunks = lat.chunks(&m, gap);
        let total: usize = chunks.iter().map(Region::len).sum();
        prop_assert_eq!(total, m.len());
        for i in 0..chunks.len() {
            for j in i + 1..chunks.len() {
                prop_assert!(lat.separation(&chunks[i], &chunks[j]).unwrap() > gap);
            }
        }
    }
}
