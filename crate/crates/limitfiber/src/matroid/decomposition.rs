use super::intmat::{from_i64, is_saturated, rank as int_rank};
use super::lp::strictly_feasible;
use super::polytope::{eulerian, facets, polytope_of, VolumeCache};
use super::{bits, matroid_of, members, Matroid, MatroidError, MatroidPolytope};
use crate::building::LatticeClass;
use crate::membrane::{git_stable_classes, limit_configuration, Arrangement};
use crate::scalar::rat;
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingWitness {
    VolumeMismatch { expected: BigInt, found: BigInt },
    NotFullDimensional(usize),
    WrongHypersimplex(usize),
    OutsideAmbient(usize),
    ImproperIntersection(usize, usize),
    NotUnimodular(usize),
}

impl fmt::Display for TilingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingWitness::VolumeMismatch { expected, found } => {
                write!(f, "volumes sum to {found}, the ambient polytope has {expected}")
            }
            TilingWitness::NotFullDimensional(i) => write!(f, "polytope {} is not full-dimensional", i + 1),
            TilingWitness::WrongHypersimplex(i) => write!(f, "polytope {} lies in another hypersimplex", i + 1),
            TilingWitness::OutsideAmbient(i) => write!(f, "polytope {} leaves the ambient polytope", i + 1),
            TilingWitness::ImproperIntersection(i, j) => {
                write!(f, "polytopes {} and {} do not meet in a common face", i + 1, j + 1)
            }
            TilingWitness::NotUnimodular(i) => write!(f, "polytope {} is not unimodular", i + 1),
        }
    }
}

/// Matroid polytopes in P_ambient ⊆ Δ(r, n), with pairs sharing a facet.
/// The ambient matroid is uniform unless the family is itself degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidDecomposition {
    pub r: usize,
    pub n: usize,
    pub ambient: Matroid,
    pub polytopes: Vec<MatroidPolytope>,
    pub adjacency: Vec<(usize, usize)>,
}

fn diffs(vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    vs[1..].iter().map(|v| v.iter().zip(&vs[0]).map(|(a, b)| a - b).collect()).collect()
}

fn affine_dim(vs: &[Vec<i64>]) -> Option<usize> {
    if vs.is_empty() {
        return None;
    }
    Some(int_rank(&from_i64(&diffs(vs))))
}

fn common_vertices(p: &MatroidPolytope, q: &MatroidPolytope) -> Vec<Vec<i64>> {
    let qs: BTreeSet<&Vec<i64>> = q.vertices.iter().collect();
    p.vertices.iter().filter(|v| qs.contains(v)).cloned().collect()
}

impl MatroidDecomposition {
    pub fn new(r: usize, n: usize, matroids: Vec<Matroid>) -> Self {
        Self::within(Matroid::uniform(r, n), matroids)
    }

    pub fn within(ambient: Matroid, matroids: Vec<Matroid>) -> Self {
        let (r, n) = (ambient.rank(), ambient.n());
        let polytopes: Vec<MatroidPolytope> = matroids.iter().map(polytope_of).collect();
        let facet_dim = ambient.polytope_dim().checked_sub(1);
        let mut adjacency = Vec::new();
        for (i, j) in (0..polytopes.len()).tuple_combinations() {
            if facet_dim.is_some() && affine_dim(&common_vertices(&polytopes[i], &polytopes[j])) == facet_dim {
                adjacency.push((i, j));
            }
        }
        MatroidDecomposition { r, n, ambient, polytopes, adjacency }
    }

    pub fn is_hypersimplex(&self) -> bool {
        self.ambient == Matroid::uniform(self.r, self.n)
    }

    pub fn trivial(r: usize, n: usize) -> Self {
        Self::new(r, n, vec![Matroid::uniform(r, n)])
    }

    pub fn len(&self) -> usize {
        self.polytopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polytopes.is_empty()
    }

    pub fn volumes(&self) -> Vec<BigInt> {
        let mut cache = VolumeCache::default();
        self.polytopes.iter().map(|p| cache.volume(&p.matroid)).collect()
    }
}

fn separated(p: &MatroidPolytope, q: &MatroidPolytope) -> bool {
    let common: BTreeSet<&Vec<i64>> = p.vertices.iter().filter(|v| q.vertices.contains(v)).collect();
    let to_q = |v: &Vec<i64>, s: i64| v.iter().map(|&x| rat(s * x)).collect::<Vec<BigRational>>();
    let mut ineq = Vec::new();
    for v in p.vertices.iter().filter(|v| !common.contains(v)) {
        ineq.push(to_q(v, 1));
    }
    for v in q.vertices.iter().filter(|v| !common.contains(v)) {
        ineq.push(to_q(v, -1));
    }
    let eq: Vec<Vec<BigRational>> = common.iter().map(|v| to_q(v, 1)).collect();
    strictly_feasible(&ineq, &eq)
}

/// First failure of: full dimension in the ambient polytope, volumes
/// summing to it, every pair meeting in a common face.
pub fn tiling_witness(d: &MatroidDecomposition) -> Option<TilingWitness> {
    for (i, p) in d.polytopes.iter().enumerate() {
        if p.matroid.rank() != d.r || p.matroid.n() != d.n {
            return Some(TilingWitness::WrongHypersimplex(i));
        }
        if p.matroid.bases().iter().any(|&b| !d.ambient.is_basis(b)) {
            return Some(TilingWitness::OutsideAmbient(i));
        }
        if p.dim() != d.ambient.polytope_dim() {
            return Some(TilingWitness::NotFullDimensional(i));
        }
    }
    let found: BigInt = d.volumes().into_iter().sum();
    let expected =
        if d.is_hypersimplex() { eulerian(d.n - 1, d.r - 1) } else { VolumeCache::default().volume(&d.ambient) };
    if found != expected {
        return Some(TilingWitness::VolumeMismatch { expected, found });
    }
    (0..d.len())
        .tuple_combinations()
        .find(|&(i, j)| !separated(&d.polytopes[i], &d.polytopes[j]))
        .map(|(i, j)| TilingWitness::ImproperIntersection(i, j))
}

pub fn verify_tiling(d: &MatroidDecomposition) -> bool {
    tiling_witness(d).is_none()
}

fn saturated_face(vs: &[Vec<i64>]) -> bool {
    vs.len() < 2 || is_saturated(&from_i64(&diffs(vs)))
}

fn unimodular_witness(d: &MatroidDecomposition) -> Option<TilingWitness> {
    for (i, p) in d.polytopes.iter().enumerate() {
        if !saturated_face(&p.vertices) {
            return Some(TilingWitness::NotUnimodular(i));
        }
        for fct in facets(&p.matroid) {
            if !saturated_face(&polytope_of(&fct).vertices) {
                return Some(TilingWitness::NotUnimodular(i));
            }
        }
    }
    for (i, j) in (0..d.len()).tuple_combinations() {
        if !saturated_face(&common_vertices(&d.polytopes[i], &d.polytopes[j])) {
            return Some(TilingWitness::NotUnimodular(i));
        }
    }
    None
}

/// Vertex-difference lattices of every polytope, its facets and every
/// pairwise common face are saturated.
pub fn is_unimodular(d: &MatroidDecomposition) -> bool {
    unimodular_witness(d).is_none()
}

/// Bases are the r-subsets independent over K.
pub fn family_matroid(f: &Arrangement) -> Result<Matroid, MatroidError> {
    Matroid::from_bases(f.n(), (0..f.n()).combinations(f.r).filter(|t| f.is_independent(t)).map(|t| bits(&t)))
}

/// Polytopes P_M of the GIT-stable classes, checked to tile P_F and to be
/// unimodular; P_F = Δ(r,n) unless some r of the f_i are dependent.
pub fn decomposition_from_limits(
    f: &Arrangement,
    window: i64,
) -> Result<(Vec<LatticeClass>, MatroidDecomposition), MatroidError> {
    let ambient = family_matroid(f)?;
    if !ambient.is_connected() {
        return Err(MatroidError::DisconnectedFamily);
    }
    let classes: Vec<LatticeClass> = git_stable_classes(f, window)?.into_iter().collect();
    let mut ms = Vec::with_capacity(classes.len());
    for c in &classes {
        ms.push(matroid_of(&limit_configuration(f, c)?)?);
    }
    let d = MatroidDecomposition::within(ambient, ms);
    if let Some(w) = tiling_witness(&d).or_else(|| unimodular_witness(&d)) {
        return Err(MatroidError::TilingFailure(w));
    }
    Ok((classes, d))
}

fn check_central(sets: &[Vec<usize>], r: usize, n: usize) -> Result<(), MatroidError> {
    for (a, s) in sets.iter().enumerate() {
        if s.len() < r {
            return Err(MatroidError::SmallIndexSet(a + 1));
        }
        if s.iter().any(|&i| i >= n) {
            return Err(MatroidError::Invalid(format!("index set {} leaves the ground set", a + 1)));
        }
    }
    for (a, b) in (0..sets.len()).tuple_combinations() {
        if (bits(&sets[a]) & bits(&sets[b])).count_ones() as usize > r.saturating_sub(2) {
            return Err(MatroidError::OverlapViolation(a + 1, b + 1));
        }
    }
    Ok(())
}

/// The central matroid: bases meet every I_alpha in at most r-1 elements.
pub fn central_matroid(sets: &[Vec<usize>], r: usize, n: usize) -> Result<Matroid, MatroidError> {
    let masks: Vec<u64> = sets.iter().map(|s| bits(s)).collect();
    let bases =
        (0..n).combinations(r).map(|c| bits(&c)).filter(|b| masks.iter().all(|m| ((b & m).count_ones() as usize) < r));
    Matroid::from_bases(n, bases)
}

fn cap_matroid(set: &[usize], r: usize, n: usize) -> Result<Matroid, MatroidError> {
    let m = bits(set);
    let bases = (0..n).combinations(r).map(|c| bits(&c)).filter(|b| (b & m).count_ones() as usize + 1 >= r);
    Matroid::from_bases(n, bases)
}

/// P_C = ∩ {x_{I_alpha} <= r-1} followed by P_alpha = {x_{I_alpha} >= r-1}.
pub fn central_decomposition(sets: &[Vec<usize>], r: usize, n: usize) -> Result<MatroidDecomposition, MatroidError> {
    check_central(sets, r, n)?;
    let mut ms = vec![central_matroid(sets, r, n)?];
    for s in sets {
        ms.push(cap_matroid(s, r, n)?);
    }
    Ok(MatroidDecomposition::new(r, n, ms))
}

/// Central decompositions for every subfamily of the index sets, keyed by
/// the chosen positions.
pub fn coarsenings(
    sets: &[Vec<usize>],
    r: usize,
    n: usize,
) -> Result<Vec<(Vec<usize>, MatroidDecomposition)>, MatroidError> {
    check_central(sets, r, n)?;
    let k = sets.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u64..(1 << k) {
        let pick = members(mask);
        let sub: Vec<Vec<usize>> = pick.iter().map(|&a| sets[a].clone()).collect();
        out.push((pick, central_decomposition(&sub, r, n)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_pyramids(pair: [usize; 2]) -> MatroidDecomposition {
        let (a, b) = (bits(&pair), bits(&(0..4).filter(|i| !pair.contains(i)).collect::<Vec<_>>()));
        let lo = Matroid::from_bases(4, (0..4).combinations(2).map(|c| bits(&c)).filter(|&x| x != a)).unwrap();
        let hi = Matroid::from_bases(4, (0..4).combinations(2).map(|c| bits(&c)).filter(|&x| x != b)).unwrap();
        MatroidDecomposition::new(2, 4, vec![lo, hi])
    }

    #[test]
    fn octahedron_splits() {
        for pair in [[0, 1], [0, 2], [0, 3]] {
            let d = two_pyramids(pair);
            assert!(verify_tiling(&d));
            assert!(is_unimodular(&d));
            assert_eq!(d.adjacency, vec![(0, 1)]);
        }
        let t = MatroidDecomposition::trivial(2, 4);
        assert!(verify_tiling(&t) && is_unimodular(&t));
        let dup = MatroidDecomposition::new(2, 4, vec![Matroid::uniform(2, 4), Matroid::uniform(2, 4)]);
        assert!(!verify_tiling(&dup));
    }

    #[test]
    fn crossing_pyramids_fail() {
        // halves from two different splits overlap with the right total volume
        let a = two_pyramids([0, 1]).polytopes[0].matroid.clone();
        let b = two_pyramids([0, 2]).polytopes[1].matroid.clone();
        let d = MatroidDecomposition::new(2, 4, vec![a, b]);
        assert_eq!(tiling_witness(&d), Some(TilingWitness::ImproperIntersection(0, 1)));
    }

    #[test]
    fn example_central_split() {
        let d = central_decomposition(&[vec![1, 2, 3]], 3, 5).unwrap();
        assert_eq!(d.len(), 2);
        assert!(verify_tiling(&d) && is_unimodular(&d));
        assert!(d.polytopes[0].inequalities.iter().any(|q| q.set == vec![1, 2, 3] && q.rhs == 2 && !q.lower));
        assert_eq!(central_decomposition(&[], 3, 5).unwrap(), MatroidDecomposition::trivial(3, 5));
        assert!(matches!(
            central_decomposition(&[vec![0, 1, 2], vec![1, 2, 3]], 3, 5),
            Err(MatroidError::OverlapViolation(1, 2))
        ));
        assert_eq!(coarsenings(&[vec![1, 2, 3]], 3, 5).unwrap().len(), 2);
    }
}
