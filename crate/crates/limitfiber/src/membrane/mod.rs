//! The membrane of a family f_1..f_n in K^r: stable and GIT-stable
//! lattices, limit configurations, the Psi map and apartment strata.

mod strata;

pub use strata::{apartment_stratification, Cell, StratumComplex};

use crate::building::{residue_of_vector, BuildingError, Lattice, LatticeClass};
use crate::scalar::{BaseField, MatrixK, ScalarError, ScalarK, Val, VectorK};
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MembraneError {
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("every (r+1)-subset is degenerate")]
    NoStableLattice,
    #[error("GIT-stable classes change between window {window} and {}", window + 1)]
    WindowUnstable { window: i64 },
    #[error("not implemented: {0}")]
    NotImplemented(String),
    #[error("residue of f_{index} does not reduce into {field}")]
    Reduction { index: usize, field: BaseField },
    #[error(transparent)]
    Building(#[from] BuildingError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The family f_1..f_n spanning K^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub r: usize,
    pub vectors: Vec<VectorK>,
    pub base_field: BaseField,
}

impl Arrangement {
    pub fn new(r: usize, vectors: Vec<VectorK>, base_field: BaseField) -> Result<Self, MembraneError> {
        if r == 0 {
            return Err(MembraneError::InvalidArrangement("r must be positive".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != r {
                return Err(MembraneError::InvalidArrangement(format!("vector {} has length {}", i + 1, v.len())));
            }
            if v.iter().all(|x| x.is_zero()) {
                return Err(MembraneError::InvalidArrangement(format!("vector {} is zero", i + 1)));
            }
        }
        if vectors.is_empty() || MatrixK::from_columns(&vectors).rank() < r {
            return Err(MembraneError::InvalidArrangement("vectors do not span".into()));
        }
        Ok(Arrangement { r, vectors, base_field })
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_independent(&self, idx: &[usize]) -> bool {
        let cols: Vec<VectorK> = idx.iter().map(|&i| self.vectors[i].clone()).collect();
        MatrixK::from_columns(&cols).rank() == idx.len()
    }

    /// Coefficients of f_i in the basis f_T.
    pub fn coefficients(&self, t: &[usize], i: usize) -> Result<VectorK, MembraneError> {
        let cols: Vec<VectorK> = t.iter().map(|&j| self.vectors[j].clone()).collect();
        Ok(MatrixK::from_columns(&cols).solve(&self.vectors[i])?)
    }

    /// (r+1)-subsets containing a K-dependent r-subset.
    pub fn degenerate_subsets(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .combinations(self.r + 1)
            .filter(|z| !z.iter().copied().combinations(self.r).all(|t| self.is_independent(&t)))
            .collect()
    }

    /// Class of <z^{b_j} f_{t_j}>.
    pub fn apartment_class(&self, t: &[usize], b: &[i64]) -> LatticeClass {
        let gens: Vec<VectorK> =
            t.iter().zip(b).map(|(&j, &e)| self.vectors[j].iter().map(|x| x.shifted(e)).collect()).collect();
        LatticeClass::from_generators(self.r, &gens).expect("independent subset")
    }
}

/// Solve on a non-degenerate (r+1)-subset: exponents b with
/// Lambda_Z = <z^{b_j} f_{z_j}> for the last r members.
fn stable_exponents(f: &Arrangement, z: &[usize]) -> Result<Option<(Vec<usize>, Vec<i64>)>, MembraneError> {
    if !z.iter().copied().combinations(f.r).all(|t| f.is_independent(&t)) {
        return Ok(None);
    }
    let t = z[1..].to_vec();
    let c = f.coefficients(&t, z[0])?;
    let b = c.iter().map(|x| x.val().finite().expect("general position")).collect();
    Ok(Some((t, b)))
}

pub fn stable_lattices(f: &Arrangement) -> Result<BTreeSet<LatticeClass>, MembraneError> {
    let subsets: Vec<Vec<usize>> = (0..f.n()).combinations(f.r + 1).collect();
    let found: Vec<Option<LatticeClass>> = subsets
        .par_iter()
        .map(|z| Ok(stable_exponents(f, z)?.map(|(t, b)| f.apartment_class(&t, &b))))
        .collect::<Result<_, MembraneError>>()?;
    let out: BTreeSet<LatticeClass> = found.into_iter().flatten().collect();
    if out.is_empty() {
        return Err(MembraneError::NoStableLattice);
    }
    Ok(out)
}

/// Residues f_i^Λ in Λ/zΛ, projectively normalized over the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitConfiguration {
    pub field: BaseField,
    pub covectors: Vec<Vec<BigRational>>,
}

impl LimitConfiguration {
    pub fn new(field: BaseField, covectors: Vec<Vec<BigRational>>) -> Self {
        let covectors = covectors.iter().map(|v| field.projective_normalize(v)).collect();
        LimitConfiguration { field, covectors }
    }

    pub fn r(&self) -> usize {
        self.covectors.first().map_or(0, |v| v.len())
    }

    pub fn rank(&self) -> usize {
        self.field.rank(&self.covectors)
    }

    pub fn rank_of(&self, idx: &[usize]) -> usize {
        let m: Vec<Vec<BigRational>> = idx.iter().map(|&i| self.covectors[i].clone()).collect();
        self.field.rank(&m)
    }

    /// Classes of coincident covectors, each sorted, in order of first index.
    pub fn coincidences(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<&Vec<BigRational>, Vec<usize>> = BTreeMap::new();
        for (i, v) in self.covectors.iter().enumerate() {
            groups.entry(v).or_default().push(i);
        }
        let mut g: Vec<Vec<usize>> = groups.into_values().collect();
        g.sort();
        g
    }

    /// r+1 covectors with every r of them independent.
    pub fn is_stable(&self) -> bool {
        let r = self.r();
        (0..self.covectors.len())
            .combinations(r + 1)
            .any(|z| z.iter().copied().combinations(r).all(|t| self.rank_of(&t) == r))
    }

    /// Dimension of {A in gl_r : A^T v_i in span(v_i) for all i}.
    pub fn stabilizer_dim(&self) -> usize {
        let r = self.r();
        let n = self.covectors.len();
        let cols = r * r + n;
        let mut rows = Vec::with_capacity(n * r);
        for (i, v) in self.covectors.iter().enumerate() {
            for k in 0..r {
                let mut row = vec![BigRational::zero(); cols];
                for (j, vj) in v.iter().enumerate() {
                    row[j * r + k] = vj.clone();
                }
                row[r * r + i] = self.field.neg(&v[k]);
                rows.push(row);
            }
        }
        cols - self.field.rank(&rows)
    }

    pub fn is_git_stable(&self) -> bool {
        self.stabilizer_dim() == 1
    }
}

pub fn limit_configuration(f: &Arrangement, lambda: &LatticeClass) -> Result<LimitConfiguration, MembraneError> {
    let field = f.base_field;
    let mut cov = Vec::with_capacity(f.n());
    for (i, v) in f.vectors.iter().enumerate() {
        let res = residue_of_vector(lambda, v);
        let row = &res.basis()[0];
        let red: Option<Vec<BigRational>> = row.iter().map(|x| field.reduce(x)).collect();
        match red {
            Some(x) if x.iter().any(|e| !e.is_zero()) => cov.push(x),
            _ => return Err(MembraneError::Reduction { index: i + 1, field }),
        }
    }
    Ok(LimitConfiguration::new(field, cov))
}

pub fn is_stable(f: &Arrangement, lambda: &LatticeClass) -> Result<bool, MembraneError> {
    Ok(limit_configuration(f, lambda)?.is_stable())
}

pub fn is_git_stable(f: &Arrangement, lambda: &LatticeClass) -> Result<bool, MembraneError> {
    Ok(limit_configuration(f, lambda)?.is_git_stable())
}

pub fn in_membrane(f: &Arrangement, lambda: &LatticeClass) -> Result<bool, MembraneError> {
    Ok(limit_configuration(f, lambda)?.rank() == f.r)
}

/// (N_Λ(f_1), ..., N_Λ(f_n)) shifted so the first coordinate is 0.
pub fn psi(f: &Arrangement, lambda: &Lattice) -> Vec<i64> {
    let v: Vec<i64> = f
        .vectors
        .iter()
        .map(|x| match lambda.norm(x) {
            Val::Fin(a) => a,
            Val::Inf => unreachable!("nonzero vector"),
        })
        .collect();
    let s = v[0];
    v.into_iter().map(|x| x - s).collect()
}

/// Spread of the exponents of all stable solves, plus one.
pub fn default_window(f: &Arrangement) -> Result<i64, MembraneError> {
    let mut w = 0;
    for z in (0..f.n()).combinations(f.r + 1) {
        if let Some((_, b)) = stable_exponents(f, &z)? {
            w = w.max(b.iter().max().unwrap() - b.iter().min().unwrap());
        }
    }
    Ok(w + 1)
}

/// Limit covectors at <z^{b_j} f_{t_j}> in the basis z^{b_j} f_{t_j}, read
/// off from the coefficient table; None when a lead does not reduce.
fn apartment_covectors(
    field: BaseField,
    t: &[usize],
    table: &[(usize, Vec<Option<(i64, BigRational)>>)],
    n: usize,
    b: &[i64],
) -> Option<Vec<Vec<BigRational>>> {
    let r = t.len();
    let mut out = vec![Vec::new(); n];
    for (j, &tj) in t.iter().enumerate() {
        out[tj] =
            (0..r).map(|k| if k == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }).collect();
    }
    for (i, row) in table {
        let m = row.iter().zip(b).filter_map(|(c, bj)| c.as_ref().map(|c| c.0 - bj)).min()?;
        let mut v = Vec::with_capacity(r);
        for (c, bj) in row.iter().zip(b) {
            match c {
                Some((val, lead)) if val - bj == m => v.push(field.reduce(lead)?),
                _ => v.push(BigRational::zero()),
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        out[*i] = v;
    }
    Some(out)
}

/// The stabilizer is one scalar per connected component of the matroid,
/// and with the f_T a basis the fundamental circuits are read off from
/// the supports of the other covectors.
fn support_connected(t: &[usize], cov: &[Vec<BigRational>]) -> bool {
    let n = cov.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, v) in cov.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, t[j]));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..n).all(|i| find(&mut parent, i) == root)
}

/// GIT-stable classes with b in [-2w, 2w], b_1 = 0, spread at most 2w,
/// for w = window + 1; each with the least spread that reaches it.
fn git_classes_in_window(f: &Arrangement, window: i64) -> Result<BTreeMap<LatticeClass, i64>, MembraneError> {
    let bases: Vec<Vec<usize>> = (0..f.n()).combinations(f.r).filter(|t| f.is_independent(t)).collect();
    let w2 = 2 * window;
    let per_basis: Vec<BTreeMap<LatticeClass, i64>> = bases
        .par_iter()
        .map(|t| {
            let mut table = Vec::new();
            for i in (0..f.n()).filter(|i| !t.contains(i)) {
                let c = f.coefficients(t, i)?;
                table.push((i, c.iter().map(|x| x.val().finite().map(|v| (v, x.lead_coeff()))).collect::<Vec<_>>()));
            }
            let mut seen: BTreeMap<LatticeClass, i64> = BTreeMap::new();
            for rest in (1..f.r).map(|_| -w2..=w2).multi_cartesian_product() {
                let mut b = vec![0];
                b.extend(rest);
                let spread = b.iter().max().unwrap() - b.iter().min().unwrap();
                if spread > w2 {
                    continue;
                }
                let stable = match apartment_covectors(f.base_field, t, &table, f.n(), &b) {
                    Some(cov) => {
                        support_connected(t, &cov) && LimitConfiguration::new(f.base_field, cov).is_git_stable()
                    }
                    None => limit_configuration(f, &f.apartment_class(t, &b))?.is_git_stable(),
                };
                if stable {
                    let e = seen.entry(f.apartment_class(t, &b)).or_insert(spread);
                    *e = (*e).min(spread);
                }
            }
            Ok(seen)
        })
        .collect::<Result<_, MembraneError>>()?;
    let mut out: BTreeMap<LatticeClass, i64> = BTreeMap::new();
    for m in per_basis {
        for (c, s) in m {
            let e = out.entry(c).or_insert(s);
            *e = (*e).min(s);
        }
    }
    Ok(out)
}

/// GIT-stable classes over all apartments, re-checked at window + 1.
pub fn git_stable_classes(f: &Arrangement, window: i64) -> Result<BTreeSet<LatticeClass>, MembraneError> {
    let wide = git_classes_in_window(f, window + 1)?;
    if wide.values().any(|&s| s > 2 * window) {
        return Err(MembraneError::WindowUnstable { window });
    }
    Ok(wide.into_keys().collect())
}

pub(crate) fn lead_or_zero(x: &ScalarK) -> BigRational {
    if x.is_zero() {
        BigRational::zero()
    } else {
        x.lead_coeff()
    }
}
