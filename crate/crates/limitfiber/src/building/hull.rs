use super::{relative_position, Lattice, LatticeClass};
use itertools::Itertools;
use std::collections::BTreeSet;

/// Scalings a for which [z^a M + N] differs from both [M] and [N]:
/// exactly the integers strictly between beta and alpha, where
/// z^a M is inside N for a >= alpha and contains N for a <= beta.
fn transition_range(m: &Lattice, n: &Lattice) -> std::ops::Range<i64> {
    let alpha = -n.min_coord_val(m);
    let beta = m.min_coord_val(n);
    (beta + 1)..alpha
}

fn pair_sums(m: &Lattice, n: &Lattice) -> Vec<LatticeClass> {
    transition_range(m, n).map(|a| m.scaled(a).sum(n).class()).collect()
}

/// Smallest set containing the input and closed under [z^a M + N].
pub fn convex_hull(classes: &[LatticeClass]) -> BTreeSet<LatticeClass> {
    let mut set: BTreeSet<LatticeClass> = classes.iter().cloned().collect();
    let mut list: Vec<LatticeClass> = set.iter().cloned().collect();
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            for c in pair_sums(list[i].rep(), list[j].rep()) {
                if set.insert(c.clone()) {
                    list.push(c);
                }
            }
        }
        i += 1;
    }
    set
}

/// Closed under all scaled pairwise sums.
pub fn is_convex(set: &BTreeSet<LatticeClass>) -> bool {
    let v: Vec<&LatticeClass> = set.iter().collect();
    v.iter().tuple_combinations().all(|(a, b)| pair_sums(a.rep(), b.rep()).iter().all(|c| set.contains(c)))
}

/// Classes [sum_alpha z^{a_alpha} M_alpha] over a_1 = 0 and
/// a_alpha in [-window, window].
pub fn convex_hull_window(classes: &[LatticeClass], window: i64) -> BTreeSet<LatticeClass> {
    let mut out = BTreeSet::new();
    if classes.is_empty() {
        return out;
    }
    let k = classes.len();
    // every nonempty subset, the first member unscaled
    for mask in 1u32..(1 << k) {
        let members: Vec<&LatticeClass> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &classes[i]).collect();
        let ranges = (1..members.len()).map(|_| -window..=window).multi_cartesian_product();
        if members.len() == 1 {
            out.insert(members[0].clone());
            continue;
        }
        for a in ranges {
            let mut l = members[0].rep().clone();
            for (m, e) in members[1..].iter().zip(a.iter()) {
                l = l.sum(&m.rep().scaled(*e));
            }
            out.insert(l.class());
        }
    }
    out
}

/// Brute-force hull: windowed enumeration, widened until two consecutive
/// windows agree.
pub fn convex_hull_bruteforce(classes: &[LatticeClass]) -> BTreeSet<LatticeClass> {
    let mut w = classes
        .iter()
        .tuple_combinations()
        .map(|(a, b)| *relative_position(a, b).unwrap().last().unwrap())
        .max()
        .unwrap_or(0);
    let mut prev = convex_hull_window(classes, w);
    loop {
        w += 1;
        let next = convex_hull_window(classes, w);
        if next == prev {
            return next;
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::lattice_from_generators;
    use crate::scalar::parse_vector;

    fn v(xs: &[&str]) -> Vec<crate::scalar::ScalarK> {
        parse_vector(xs).unwrap()
    }

    #[test]
    fn incident_pair_is_convex() {
        let m1 = LatticeClass::standard(3);
        let m2 =
            lattice_from_generators(3, &[v(&["z^-1", "0", "0"]), v(&["0", "1", "0"]), v(&["0", "0", "1"])]).unwrap();
        let h = convex_hull(&[m1.clone(), m2.clone()]);
        assert_eq!(h.into_iter().collect::<Vec<_>>(), {
            let mut x = vec![m1, m2];
            x.sort();
            x
        });
    }

    #[test]
    fn segment_of_length_two() {
        let a = LatticeClass::standard(2);
        let b = lattice_from_generators(2, &[v(&["z^-2", "0"]), v(&["0", "1"])]).unwrap();
        let mid = lattice_from_generators(2, &[v(&["z^-1", "0"]), v(&["0", "1"])]).unwrap();
        let h = convex_hull(&[a.clone(), b.clone()]);
        assert_eq!(h.len(), 3);
        assert!(h.contains(&mid));
        assert!(is_convex(&h));
        assert_eq!(convex_hull_bruteforce(&[a, b]), h);
        assert_eq!(convex_hull(std::slice::from_ref(&mid)).len(), 1);
    }
}
