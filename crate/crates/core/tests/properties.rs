use blockset::blocking::{self, ScanOptions};
use blockset::format;
use blockset::gf::field_of_order;
use blockset::pg::gaussian_binomial;
use blockset::{PointSet, ProjSpace};
use proptest::prelude::*;

fn opts() -> ScanOptions {
    ScanOptions::default()
}

/// An ambient space with a blocked dimension, and a random point set in it.
fn instance() -> impl Strategy<Value = (PointSet, usize)> {
    prop_oneof![
        (Just(2usize), prop_oneof![Just(2u64), Just(3), Just(4), Just(5)], Just(1usize)),
        (Just(3usize), Just(2u64), 1usize..3),
        (Just(3usize), Just(3u64), Just(2usize)),
    ]
    .prop_flat_map(|(m, q, d)| {
        let space = ProjSpace::new(m, field_of_order(q).unwrap()).unwrap();
        let n = space.point_count() as usize;
        (Just(space), proptest::collection::vec(any::<bool>(), n), 0.0f64..1.0, Just(d))
    })
    .prop_map(|(space, mask, density, d)| {
        let all = space.points_of(&space.full());
        let keep = mask.len() as f64 * density;
        let pts = all.iter().zip(mask.iter().enumerate()).filter(|(_, (i, &b))| b || (*i as f64) < keep);
        (PointSet::from_points(space.clone(), pts.map(|(p, _)| p)), d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn supersets_of_blocking_sets_block((set, d) in instance(), extra in any::<u64>()) {
        let space = set.space().clone();
        let all = space.points_of(&space.full());
        let mut bigger = set.clone();
        for (i, p) in all.iter().enumerate() {
            if (extra >> (i % 64)) & 1 == 1 {
                bigger.insert(&p);
            }
        }
        if blocking::is_blocking(&set, d, &opts()).unwrap().blocking {
            prop_assert!(blocking::is_blocking(&bigger, d, &opts()).unwrap().blocking);
        }
    }

    #[test]
    fn minimize_gives_a_minimal_blocking_subset((set, d) in instance()) {
        if blocking::is_blocking(&set, d, &opts()).unwrap().blocking {
            let m = blocking::minimize(&set, d, &opts()).unwrap();
            prop_assert!(m.is_subset(&set));
            prop_assert!(blocking::is_blocking(&m, d, &opts()).unwrap().blocking);
            prop_assert!(blocking::is_minimal(&m, d, &opts()).unwrap().minimal);
        }
    }

    #[test]
    fn spectrum_double_counts((set, d) in instance()) {
        let r = blocking::classify(&set, d, &opts()).unwrap();
        let m = set.space().dim();
        let q = set.space().q() as u64;
        let count: u128 = r.spectrum.values().map(|&c| c as u128).sum();
        let incidences: u128 = r.spectrum.iter().map(|(&v, &c)| v as u128 * c as u128).sum();
        prop_assert_eq!(count, gaussian_binomial(m + 1, d + 1, q));
        prop_assert_eq!(incidences, set.len() as u128 * gaussian_binomial(m, d, q));
        prop_assert_eq!(r.blocking, !r.spectrum.contains_key(&0));
    }

    #[test]
    fn witnesses_re_verify((set, d) in instance()) {
        let r = blocking::classify(&set, d, &opts()).unwrap();
        let space = set.space();
        if let Some(w) = &r.unblocked {
            prop_assert_eq!(w.rank(), d + 1);
            prop_assert_eq!(set.count_in(w), 0);
        }
        if let Some(p) = &r.non_essential {
            prop_assert!(set.contains(p));
            let through = space.point_subspace(p);
            for s in space.subspaces(d as isize, Some(&through), u128::MAX).unwrap() {
                prop_assert!(set.count_in(&s) > 1);
            }
        }
        if let Some(w) = &r.trivial_witness {
            prop_assert!(set.contains_subspace(w));
        }
    }

    #[test]
    fn point_sets_round_trip((set, _) in instance()) {
        let text = format::write_point_set(&set);
        let back = format::read_point_set(&text).unwrap();
        prop_assert_eq!(&back, &set);
        prop_assert_eq!(format::write_point_set(&back), text);
    }
}
