mod common;

use common::{five_lines, random_arrangement, rng};
use limitfiber::building::{convex_hull, incident, LatticeClass};
use limitfiber::membrane::{git_stable_classes, is_git_stable, is_stable, limit_configuration, stable_lattices};
use limitfiber::specialfiber::{enlarge_off_boundary, fiber_complex, limit_surface, GermKind};
use std::collections::BTreeSet;

#[test]
fn example_stable_pair() {
    let f = five_lines();
    let s: Vec<LatticeClass> = stable_lattices(&f).unwrap().into_iter().collect();
    assert_eq!(s.len(), 2);
    assert!(incident(&s[0], &s[1]).unwrap());
    for c in &s {
        assert!(is_stable(&f, c).unwrap());
        assert!(is_git_stable(&f, c).unwrap());
    }
}

#[test]
fn stable_and_git_stable_agree_in_rank_three() {
    for seed in 0..6 {
        let f = random_arrangement(&mut rng(seed), 3, 5, 2);
        let Ok(stab) = stable_lattices(&f) else { continue };
        let hull = convex_hull(&stab.iter().cloned().collect::<Vec<_>>());
        for c in &hull {
            let lc = limit_configuration(&f, c).unwrap();
            assert_eq!(lc.is_stable(), lc.is_git_stable(), "seed {seed}");
        }
        let git = git_stable_classes(&f, 3).unwrap();
        assert!(stab.is_subset(&git), "seed {seed}");
    }
}

#[test]
fn enlargement_clears_boundary() {
    for seed in 0..4 {
        let f = random_arrangement(&mut rng(100 + seed), 3, 5, 1);
        let Ok(stab) = stable_lattices(&f) else { continue };
        let y: BTreeSet<LatticeClass> = convex_hull(&stab.iter().cloned().collect::<Vec<_>>());
        let fc = fiber_complex(&f, &y).unwrap();
        for m in &fc.vertices {
            let y2 = enlarge_off_boundary(&f, &y, m).unwrap();
            assert!(y.is_subset(&y2));
            let fc2 = fiber_complex(&f, &y2).unwrap();
            let v = fc2.vertex_of(m).unwrap();
            assert!(fc2.boundary.iter().all(|b| !b.contains(&v)));
        }
    }
}

#[test]
fn surfaces_are_deterministic_and_classified() {
    for seed in 0..3 {
        let f = random_arrangement(&mut rng(200 + seed), 3, 5, 2);
        let a = limit_surface(&f, None).unwrap();
        assert_eq!(a, limit_surface(&f, None).unwrap());
        assert!(a.germs.iter().all(|g| g.kind != GermKind::Other), "seed {seed}");
    }
}
