mod common;

use common::{random_class, rng};
use limitfiber::building::{
    convex_hull, convex_hull_bruteforce, incident, is_convex, relative_position, simplex_of, LatticeClass,
};
use limitfiber::scalar::{ScalarK, VectorK};
use proptest::prelude::*;

fn normalize(mut v: Vec<i64>) -> Vec<i64> {
    v.sort();
    let s = v[0];
    v.into_iter().map(|x| x - s).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hull_matches_enumeration(seed in any::<u64>(), r in 2usize..=3, k in 1usize..=3) {
        let mut g = rng(seed);
        let cs: Vec<LatticeClass> = (0..k).map(|_| random_class(&mut g, r, 2)).collect();
        let h = convex_hull(&cs);
        prop_assert!(is_convex(&h));
        prop_assert!(cs.iter().all(|c| h.contains(c)));
        prop_assert_eq!(h, convex_hull_bruteforce(&cs));
    }

    #[test]
    fn canonical_form_round_trip(seed in any::<u64>(), r in 1usize..=3, shift in -4i64..=4) {
        let c = random_class(&mut rng(seed), r, 3);
        let cols = c.rep().columns().to_vec();
        prop_assert_eq!(&LatticeClass::from_generators(r, &cols).unwrap(), &c);
        let scaled: Vec<VectorK> = cols.iter().map(|v| v.iter().map(|x| x.shifted(shift)).collect()).collect();
        prop_assert_eq!(&LatticeClass::from_generators(r, &scaled).unwrap(), &c);
        let strs = c.to_strings();
        let parsed: Vec<VectorK> = (0..r)
            .map(|j| strs.iter().map(|row| row[j].parse::<ScalarK>().unwrap()).collect())
            .collect();
        prop_assert_eq!(LatticeClass::from_generators(r, &parsed).unwrap(), c);
    }

    #[test]
    fn relative_position_reverses(seed in any::<u64>(), r in 2usize..=3) {
        let mut g = rng(seed);
        let (a, b) = (random_class(&mut g, r, 3), random_class(&mut g, r, 3));
        let ab = relative_position(&a, &b).unwrap();
        let ba = relative_position(&b, &a).unwrap();
        prop_assert_eq!(normalize(ab.iter().map(|x| -x).collect()), ba);
        prop_assert_eq!(ab.iter().all(|&x| x == 0), a == b);
        if a != b {
            prop_assert_eq!(incident(&a, &b).unwrap(), *ab.last().unwrap() <= 1);
        }
    }

    #[test]
    fn hull_of_incident_pair_is_the_pair(seed in any::<u64>(), r in 2usize..=3) {
        let mut g = rng(seed);
        let (a, b) = (random_class(&mut g, r, 2), random_class(&mut g, r, 2));
        if a != b && incident(&a, &b).unwrap() {
            let h = convex_hull(&[a.clone(), b.clone()]);
            prop_assert!(h.len() <= 2);
            prop_assert!(simplex_of(&[a, b]).is_some());
        }
    }
}
