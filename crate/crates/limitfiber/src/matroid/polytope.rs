use super::{members, Matroid};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// x_set <= rhs, or x_set >= rhs when `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub set: Vec<usize>,
    pub rhs: usize,
    pub lower: bool,
}

impl Inequality {
    pub fn holds(&self, x: &[i64]) -> bool {
        let s: i64 = self.set.iter().map(|&i| x[i]).sum();
        if self.lower {
            s >= self.rhs as i64
        } else {
            s <= self.rhs as i64
        }
    }

    pub fn tight(&self, x: &[i64]) -> bool {
        self.set.iter().map(|&i| x[i]).sum::<i64>() == self.rhs as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidPolytope {
    pub matroid: Matroid,
    pub vertices: Vec<Vec<i64>>,
    /// x_F <= rank(F) for proper nonempty flats F, plus 0 <= x_i <= 1.
    pub inequalities: Vec<Inequality>,
}

impl MatroidPolytope {
    pub fn dim(&self) -> usize {
        self.matroid.polytope_dim()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.iter().sum::<i64>() == self.matroid.rank() as i64 && self.inequalities.iter().all(|q| q.holds(x))
    }
}

pub fn polytope_of(m: &Matroid) -> MatroidPolytope {
    let n = m.n();
    let vertices = m.bases().iter().map(|&b| (0..n).map(|i| (b >> i & 1) as i64).collect()).collect();
    let mut inequalities = Vec::new();
    for fl in m.flats() {
        if fl != 0 && fl != m.ground() {
            inequalities.push(Inequality { set: members(fl), rhs: m.rank_of(fl), lower: false });
        }
    }
    for i in members(m.ground()) {
        inequalities.push(Inequality { set: vec![i], rhs: 0, lower: true });
        inequalities.push(Inequality { set: vec![i], rhs: 1, lower: false });
    }
    MatroidPolytope { matroid: m.clone(), vertices, inequalities }
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Subsets S of the ground set whose faces x_S = rank(S) are facets of a
/// connected matroid's polytope.
fn connected_facets(m: &Matroid) -> Vec<u64> {
    let e = m.ground();
    let els = members(e);
    let mut out = Vec::new();
    for sub in 1..(1u64 << els.len()) - 1 {
        let s = els.iter().enumerate().filter(|(k, _)| sub >> k & 1 == 1).fold(0u64, |a, (_, &x)| a | 1 << x);
        if m.restrict(s).is_connected() && m.contract(s).is_connected() {
            out.push(s);
        }
    }
    out
}

/// Facets of the matroid polytope, as matroids on the same ground set.
pub(crate) fn facets(m: &Matroid) -> Vec<Matroid> {
    let mut out = Vec::new();
    for c in m.components() {
        if c.count_ones() < 2 {
            continue;
        }
        for s in connected_facets(&m.restrict(c)) {
            out.push(m.face(s));
        }
    }
    out
}

#[derive(Default)]
pub(crate) struct VolumeCache {
    memo: HashMap<(u64, Vec<u64>), BigInt>,
}

impl VolumeCache {
    pub(crate) fn volume(&mut self, m: &Matroid) -> BigInt {
        let comps = m.components();
        let mut dims = Vec::new();
        let mut acc = BigInt::one();
        for c in comps {
            let k = c.count_ones() as usize;
            if k < 2 {
                continue;
            }
            dims.push(k - 1);
            acc *= self.connected(&m.restrict(c));
        }
        let mut total = 0;
        for d in dims {
            total += d;
            acc *= binom(total, d);
        }
        acc
    }

    /// Pulling at the first basis: sum of lattice heights times facet volumes.
    fn connected(&mut self, m: &Matroid) -> BigInt {
        let key = (m.ground(), m.bases().to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let p = m.bases()[0];
        let mut vol = BigInt::zero();
        for s in connected_facets(m) {
            let rk = m.rank_of(s);
            let at = (p & s).count_ones() as usize;
            if at < rk {
                let (a, b) = (m.restrict(s), m.contract(s));
                let d1 = s.count_ones() as usize - 1;
                let d2 = (m.ground() & !s).count_ones() as usize - 1;
                vol += BigInt::from(rk - at) * binom(d1 + d2, d1) * self.connected(&a) * self.connected(&b);
            }
        }
        if m.ground().count_ones() < 2 {
            vol = BigInt::one();
        }
        self.memo.insert(key, vol.clone());
        vol
    }
}

/// Normalized lattice volume in the affine span.
pub fn normalized_volume(p: &MatroidPolytope) -> BigInt {
    VolumeCache::default().volume(&p.matroid)
}

/// Permutations of 1..n with k descents; the normalized volume of
/// the hypersimplex Δ(k+1, n+1).
pub fn eulerian(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m];
        for (j, slot) in next.iter_mut().enumerate() {
            let a = if j < row.len() { &row[j] * (j + 1) } else { BigInt::zero() };
            let b = if j >= 1 && j - 1 < row.len() { &row[j - 1] * (m - j) } else { BigInt::zero() };
            *slot = a + b;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::bits;
    use itertools::Itertools;

    #[test]
    fn hypersimplex_volumes() {
        assert_eq!(normalized_volume(&polytope_of(&Matroid::uniform(2, 4))), BigInt::from(4));
        assert_eq!(normalized_volume(&polytope_of(&Matroid::uniform(1, 2))), BigInt::from(1));
        assert_eq!(normalized_volume(&polytope_of(&Matroid::uniform(1, 5))), BigInt::from(1));
        for (r, n) in [(2, 5), (3, 6), (3, 7), (4, 8), (3, 9)] {
            assert_eq!(normalized_volume(&polytope_of(&Matroid::uniform(r, n))), eulerian(n - 1, r - 1), "{r} {n}");
        }
        assert_eq!(eulerian(3, 1), BigInt::from(4));
        assert_eq!(eulerian(8, 2), BigInt::from(4293));
    }

    #[test]
    fn single_cut_polytope() {
        // {x_1 + x_2 <= 1} in Δ(2,4): a pyramid over a square
        let bases = (0..4).combinations(2).filter(|c| !(c.contains(&0) && c.contains(&1))).map(|c| bits(&c));
        let m = Matroid::from_bases(4, bases).unwrap();
        let p = polytope_of(&m);
        assert_eq!(normalized_volume(&p), BigInt::from(2));
        assert!(p.inequalities.iter().any(|q| q.set == vec![0, 1] && q.rhs == 1));
        for v in &p.vertices {
            assert!(p.contains(v));
        }
        assert!(!p.contains(&[1, 1, 0, 0]));
        assert_eq!(facets(&m).len(), 5);
    }
}
