//! Matroids, matroid polytopes and their decompositions, central and lax
//! configurations, affine cochain cohomology, cross-ratios and
//! configuration-space dimension counts.

mod audit;
mod cohomology;
mod crossratio;
mod decomposition;
pub mod intmat;
mod lax;
pub mod lp;
mod polytope;

pub use audit::{dimension_audit, AuditReport, CentralWitness};
pub use cohomology::{aff_cohomology, AffCohomology};
pub use crossratio::{cross_ratio, cross_ratio_limit, CrossRatioLimit};
pub use decomposition::{
    central_decomposition, central_matroid, coarsenings, decomposition_from_limits, family_matroid, is_unimodular,
    tiling_witness, verify_tiling, MatroidDecomposition, TilingWitness,
};
pub use lax::{find_lax_order, is_lax, multiple_points, PointConfiguration};
pub use polytope::{eulerian, normalized_volume, polytope_of, Inequality, MatroidPolytope};

use crate::membrane::{LimitConfiguration, MembraneError};
use crate::scalar::{BaseField, ScalarError};
use itertools::Itertools;
use num_rational::BigRational;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("configuration has no basis")]
    RankDeficient,
    #[error("basis exchange fails for {0:?} and {1:?}")]
    ExchangeViolation(Vec<usize>, Vec<usize>),
    #[error("ground set of size {0} is too large")]
    TooLarge(usize),
    #[error("index sets {0} and {1} share more than r-2 elements")]
    OverlapViolation(usize, usize),
    #[error("index set {0} has fewer than r elements")]
    SmallIndexSet(usize),
    #[error("the family matroid is disconnected, so no class is GIT-stable")]
    DisconnectedFamily,
    #[error("tiling fails: {0}")]
    TilingFailure(TilingWitness),
    #[error("witness does not realize the stated incidences: {0}")]
    WitnessInvalid(String),
    #[error("cross-ratio is 0/0")]
    IndeterminateCR,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Membrane(#[from] MembraneError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub(crate) fn bits(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

pub(crate) fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// A matroid on a subset `ground` of {0..n-1}; bases are bit sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    n: usize,
    ground: u64,
    rank: usize,
    bases: Vec<u64>,
}

impl Matroid {
    /// Checks the exchange axiom.
    pub fn from_bases(n: usize, bases: impl IntoIterator<Item = u64>) -> Result<Self, MatroidError> {
        let m = Self::from_bases_unchecked(n, (1u64 << n) - 1, bases)?;
        m.check_exchange()?;
        Ok(m)
    }

    pub(crate) fn from_bases_unchecked(
        n: usize,
        ground: u64,
        bases: impl IntoIterator<Item = u64>,
    ) -> Result<Self, MatroidError> {
        if n > 63 {
            return Err(MatroidError::TooLarge(n));
        }
        let mut bases: Vec<u64> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(&b0) = bases.first() else { return Err(MatroidError::RankDeficient) };
        let rank = b0.count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != rank || b & !ground != 0) {
            return Err(MatroidError::Invalid("bases of unequal size".into()));
        }
        Ok(Matroid { n, ground, rank, bases })
    }

    pub fn uniform(r: usize, n: usize) -> Self {
        let bases = (0..n).combinations(r).map(|c| bits(&c));
        Self::from_bases_unchecked(n, (1u64 << n) - 1, bases).expect("r <= n")
    }

    /// Bases are the r-subsets of independent vectors, r the rank.
    pub fn from_vectors(field: BaseField, vecs: &[Vec<BigRational>]) -> Result<Self, MatroidError> {
        let n = vecs.len();
        let r = field.rank(vecs);
        if r == 0 {
            return Err(MatroidError::RankDeficient);
        }
        let bases = (0..n).combinations(r).filter(|c| {
            let m: Vec<Vec<BigRational>> = c.iter().map(|&i| vecs[i].clone()).collect();
            field.rank(&m) == r
        });
        Self::from_bases_unchecked(n, (1u64 << n) - 1, bases.map(|c| bits(&c)).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn basis_lists(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| members(b)).collect()
    }

    pub fn is_basis(&self, b: u64) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    pub fn rank_of(&self, s: u64) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn check_exchange(&self) -> Result<(), MatroidError> {
        let set: HashSet<u64> = self.bases.iter().copied().collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in members(b1 & !b2) {
                    let ok = members(b2 & !b1).into_iter().any(|y| set.contains(&((b1 & !(1 << x)) | 1 << y)));
                    if !ok {
                        return Err(MatroidError::ExchangeViolation(members(b1), members(b2)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components of the ground set, via fundamental circuits
    /// of the first basis.
    pub fn components(&self) -> Vec<u64> {
        let b0 = self.bases[0];
        let els = members(self.ground);
        let mut parent: Vec<usize> = (0..64).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in members(b0) {
            for j in members(self.ground & !b0) {
                if self.is_basis((b0 & !(1 << i)) | 1 << j) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut comps: Vec<u64> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for &e in &els {
            let r = find(&mut parent, e);
            match roots.iter().position(|&x| x == r) {
                Some(k) => comps[k] |= 1 << e,
                None => {
                    roots.push(r);
                    comps.push(1 << e);
                }
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Restriction to s (a subset of the ground set).
    pub fn restrict(&self, s: u64) -> Matroid {
        let k = self.rank_of(s);
        let bases: Vec<u64> = self.bases.iter().map(|b| b & s).filter(|b| b.count_ones() as usize == k).collect();
        Self::from_bases_unchecked(self.n, s, bases).expect("nonempty")
    }

    /// Contraction of s, on the ground set minus s.
    pub fn contract(&self, s: u64) -> Matroid {
        let k = self.rank_of(s);
        let bases: Vec<u64> =
            self.bases.iter().filter(|b| (*b & s).count_ones() as usize == k).map(|b| b & !s).collect();
        Self::from_bases_unchecked(self.n, self.ground & !s, bases).expect("nonempty")
    }

    /// Bases B with |B ∩ s| = rank(s): the face of the polytope on x_s = rank(s).
    pub fn face(&self, s: u64) -> Matroid {
        let k = self.rank_of(s);
        let bases: Vec<u64> = self.bases.iter().copied().filter(|b| (b & s).count_ones() as usize == k).collect();
        Self::from_bases_unchecked(self.n, self.ground, bases).expect("nonempty")
    }

    /// Flats: subsets closed under adding elements without raising rank.
    pub fn flats(&self) -> Vec<u64> {
        let els = members(self.ground);
        let mut out = Vec::new();
        for sub in 0..(1u64 << els.len()) {
            let s: u64 = els.iter().enumerate().filter(|(k, _)| sub >> k & 1 == 1).fold(0, |m, (_, &e)| m | 1 << e);
            let rk = self.rank_of(s);
            if els.iter().all(|&e| s >> e & 1 == 1 || self.rank_of(s | 1 << e) > rk) {
                out.push(s);
            }
        }
        out
    }

    /// Dimension of the matroid polytope.
    pub fn polytope_dim(&self) -> usize {
        self.ground.count_ones() as usize - self.components().len()
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> =
            self.bases.iter().map(|&b| members(b).iter().map(|i| (i + 1).to_string()).collect::<String>()).collect();
        write!(f, "M(r={}, n={}; {})", self.rank, self.n, bs.join(" "))
    }
}

pub fn matroid_of(c: &LimitConfiguration) -> Result<Matroid, MatroidError> {
    let m = Matroid::from_vectors(c.field, &c.covectors)?;
    m.check_exchange()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn example_m1_matroid() {
        let c = LimitConfiguration::new(
            BaseField::Rationals,
            ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 0, 0]]),
        );
        let m = matroid_of(&c).unwrap();
        let non: Vec<Vec<usize>> = (0..5).combinations(3).filter(|t| !m.is_basis(bits(t))).collect();
        assert_eq!(non, vec![vec![0, 1, 4], vec![0, 2, 4], vec![0, 3, 4]]);
        assert!(m.is_connected());
    }

    #[test]
    fn uniform_and_fano() {
        let g = ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, 3], &[1, -1, 5]]);
        let m = Matroid::from_vectors(BaseField::Rationals, &g).unwrap();
        assert_eq!(m, Matroid::uniform(3, 5));
        let fano = ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let f2 = BaseField::prime(2).unwrap();
        let m = matroid_of(&LimitConfiguration::new(f2, fano)).unwrap();
        assert_eq!(m.bases().len(), 28);
    }

    #[test]
    fn exchange_violation_detected() {
        // {12, 34} is not a matroid
        assert!(Matroid::from_bases(4, [0b0011, 0b1100]).is_err());
        assert!(Matroid::from_bases(2, [0b01, 0b10]).is_ok());
    }

    #[test]
    fn minors_and_components() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(u.restrict(0b0011).bases(), &[0b0011]);
        assert_eq!(u.contract(0b0001).rank(), 1);
        assert_eq!(u.face(0b0011).components().len(), 4);
        assert_eq!(u.face(0b0001).components().len(), 2);
        assert_eq!(u.polytope_dim(), 3);
        assert_eq!(u.flats().len(), 1 + 4 + 1);
    }
}
