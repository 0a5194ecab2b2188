//! Dual complexes of special fibers: flags of pairwise incident lattices,
//! blowup centers from residues, boundary divisors, quotient membranes,
//! and the r = 3 limit surface.

mod surface;

pub use surface::{limit_surface, ComponentModel, GermKind, GermReport, LimitSurface, SurfaceKind};

use crate::building::{
    convex_hull, incident, is_convex, residue, residue_of_vector, theta_limit_vector, BuildingError, LatticeClass,
    ResidueSubspace,
};
use crate::membrane::{psi, stable_lattices, Arrangement, MembraneError};
use crate::scalar::{MatrixK, ScalarError, ScalarK, VectorK};
use itertools::Itertools;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error("lattice set is not convex")]
    NotConvex,
    #[error("stable lattice {0} is missing")]
    MissingStable(String),
    #[error("the index set spans everything")]
    TrivialQuotient,
    #[error("empty lattice set")]
    Empty,
    #[error("check failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Membrane(#[from] MembraneError),
    #[error(transparent)]
    Building(#[from] BuildingError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A member of Res_M(Y) other than the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCenter {
    pub subspace: ResidueSubspace,
    /// Length of the longest chain of strictly larger members up to M̄.
    pub depth: usize,
}

impl ResidueCenter {
    /// Lines give divisors, whose blowup changes nothing.
    pub fn is_blown_up(&self) -> bool {
        self.subspace.dim() >= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRecord {
    pub class: LatticeClass,
    pub family: Vec<ResidueCenter>,
    /// Distinct members of equal depth sum to a member of smaller depth.
    pub centers_disjoint: bool,
}

impl ComponentRecord {
    pub fn centers(&self) -> impl Iterator<Item = &ResidueCenter> {
        self.family.iter().filter(|c| c.is_blown_up())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComplex {
    pub arrangement: Arrangement,
    /// Original index of each vector of `arrangement`.
    pub indices: Vec<usize>,
    pub vertices: Vec<LatticeClass>,
    /// Every nonempty set of pairwise incident vertices, sorted.
    pub simplices: Vec<Vec<usize>>,
    pub components: Vec<ComponentRecord>,
    /// For each vector, the vertices carrying a component of its boundary divisor.
    pub boundary: Vec<Vec<usize>>,
}

impl FiberComplex {
    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.len()).max().unwrap_or(1) - 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices.iter().filter(|s| s.len() == 2).map(|s| (s[0], s[1])).collect()
    }

    pub fn vertex_of(&self, c: &LatticeClass) -> Option<usize> {
        self.vertices.iter().position(|v| v == c)
    }

    /// Coordinate-free description: vertices by their Psi values on the
    /// surviving original indices, simplices as sets of those.
    pub fn signature(&self) -> (Vec<usize>, BTreeSet<Vec<Vec<i64>>>) {
        let ps: Vec<Vec<i64>> = self.vertices.iter().map(|v| psi(&self.arrangement, v.rep())).collect();
        let simp = self.simplices.iter().map(|s| s.iter().map(|&i| ps[i].clone()).sorted().collect()).collect();
        (self.indices.clone(), simp)
    }
}

fn stable_or_empty(f: &Arrangement) -> Result<BTreeSet<LatticeClass>, FiberError> {
    match stable_lattices(f) {
        Ok(s) => Ok(s),
        Err(MembraneError::NoStableLattice) => Ok(BTreeSet::new()),
        Err(e) => Err(e.into()),
    }
}

/// Class of M + z^{-1} f^M R.
fn boundary_neighbor(m: &LatticeClass, v: &[ScalarK]) -> LatticeClass {
    let (_, w) = theta_limit_vector(m.rep(), v);
    let mut gens: Vec<VectorK> = m.rep().columns().to_vec();
    gens.push(w.iter().map(|x| x.shifted(-1)).collect());
    LatticeClass::from_generators(m.rank(), &gens).expect("contains a lattice")
}

/// For each i, the members M of Y with [M + z^{-1} f_i^M R] outside Y.
pub fn boundary_incidence(f: &Arrangement, y: &BTreeSet<LatticeClass>) -> Vec<Vec<LatticeClass>> {
    f.vectors.iter().map(|v| y.iter().filter(|m| !y.contains(&boundary_neighbor(m, v))).cloned().collect()).collect()
}

fn family(m: &LatticeClass, y: &[LatticeClass]) -> (Vec<ResidueCenter>, bool) {
    let mut subs: Vec<ResidueSubspace> = Vec::new();
    for n in y.iter().filter(|n| *n != m) {
        let s = residue(m, n.rep());
        if !subs.contains(&s) {
            subs.push(s);
        }
    }
    // larger first, so every strict superset precedes
    subs.sort_by_key(|s| std::cmp::Reverse(s.dim()));
    let mut depth = vec![0usize; subs.len()];
    for i in 0..subs.len() {
        depth[i] = 1
            + (0..i)
                .filter(|&j| subs[j].dim() > subs[i].dim() && subs[j].contains(&subs[i]))
                .map(|j| depth[j])
                .max()
                .unwrap_or(0);
    }
    let full = m.rank();
    let mut disjoint = true;
    for (i, j) in (0..subs.len()).tuple_combinations() {
        if depth[i] != depth[j] || subs[i].dim() < 2 || subs[j].dim() < 2 {
            continue;
        }
        let s = subs[i].sum(&subs[j]);
        let ok = s.dim() == full || (0..subs.len()).any(|k| subs[k] == s && depth[k] < depth[i]);
        disjoint &= ok;
    }
    let fam = subs.into_iter().zip(depth).map(|(subspace, depth)| ResidueCenter { subspace, depth }).collect();
    (fam, disjoint)
}

fn cliques(vertices: &[LatticeClass]) -> Result<Vec<Vec<usize>>, FiberError> {
    let n = vertices.len();
    let mut adj = vec![vec![false; n]; n];
    for (i, j) in (0..n).tuple_combinations() {
        let inc = incident(&vertices[i], &vertices[j])?;
        adj[i][j] = inc;
        adj[j][i] = inc;
    }
    let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let last = *s.last().unwrap();
            for v in last + 1..n {
                if s.iter().all(|&u| adj[u][v]) {
                    let mut t = s.clone();
                    t.push(v);
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn build(f: &Arrangement, indices: Vec<usize>, y: &BTreeSet<LatticeClass>) -> Result<FiberComplex, FiberError> {
    if y.is_empty() {
        return Err(FiberError::Empty);
    }
    let vertices: Vec<LatticeClass> = y.iter().cloned().collect();
    let simplices = cliques(&vertices)?;
    if simplices.iter().any(|s| s.len() > f.r) {
        return Err(FiberError::Invariant("a simplex has more than r vertices".into()));
    }
    let components = vertices
        .iter()
        .map(|m| {
            let (family, centers_disjoint) = family(m, &vertices);
            ComponentRecord { class: m.clone(), family, centers_disjoint }
        })
        .collect();
    let boundary = boundary_incidence(f, y)
        .into_iter()
        .map(|ms| ms.iter().map(|m| vertices.iter().position(|v| v == m).unwrap()).collect())
        .collect();
    Ok(FiberComplex { arrangement: f.clone(), indices, vertices, simplices, components, boundary })
}

pub fn fiber_complex(f: &Arrangement, y: &BTreeSet<LatticeClass>) -> Result<FiberComplex, FiberError> {
    if y.is_empty() {
        return Err(FiberError::Empty);
    }
    if !is_convex(y) {
        return Err(FiberError::NotConvex);
    }
    if let Some(s) = stable_or_empty(f)?.iter().find(|s| !y.contains(s)) {
        return Err(FiberError::MissingStable(s.to_string()));
    }
    build(f, (0..f.n()).collect(), y)
}

/// Y together with the hull of all [M + z^{-1} f^M R]; afterwards M
/// carries no boundary.
pub fn enlarge_off_boundary(
    f: &Arrangement,
    y: &BTreeSet<LatticeClass>,
    m: &LatticeClass,
) -> Result<BTreeSet<LatticeClass>, FiberError> {
    if !y.contains(m) {
        return Err(FiberError::Invariant("lattice is not in the set".into()));
    }
    let mut gens: Vec<LatticeClass> = y.iter().cloned().collect();
    gens.extend(f.vectors.iter().map(|v| boundary_neighbor(m, v)));
    let out = convex_hull(&gens);
    if boundary_incidence(f, &out).iter().any(|ms| ms.contains(m)) {
        return Err(FiberError::Invariant("boundary survives enlargement".into()));
    }
    Ok(out)
}

/// Projection K^r -> K^r / V_I as a matrix, and the dimension of V_I.
fn quotient_map(f: &Arrangement, idx: &[usize]) -> Result<(MatrixK, usize), FiberError> {
    let r = f.r;
    let mut basis: Vec<VectorK> = Vec::new();
    for &i in idx {
        let mut t = basis.clone();
        t.push(f.vectors[i].clone());
        if MatrixK::from_columns(&t).rank() == t.len() {
            basis = t;
        }
    }
    let d = basis.len();
    if d == r {
        return Err(FiberError::TrivialQuotient);
    }
    for j in 0..r {
        let e: VectorK = (0..r).map(|k| if k == j { ScalarK::one() } else { ScalarK::zero() }).collect();
        let mut t = basis.clone();
        t.push(e);
        if MatrixK::from_columns(&t).rank() == t.len() {
            basis = t;
        }
    }
    let inv = MatrixK::from_columns(&basis).inverse()?;
    let rows: Vec<Vec<ScalarK>> = (d..r).map(|i| inv.row(i)).collect();
    Ok((MatrixK::from_rows(rows), d))
}

/// The complex of Y^I = {[M / (M ∩ V_I)]} for the arrangement of the
/// nonzero images of f_j, j outside I.
pub fn quotient_membrane(fc: &FiberComplex, idx: &[usize]) -> Result<FiberComplex, FiberError> {
    if idx.is_empty() {
        return Ok(fc.clone());
    }
    let f = &fc.arrangement;
    let local: Vec<usize> = idx
        .iter()
        .map(|i| fc.indices.iter().position(|j| j == i).ok_or(FiberError::TrivialQuotient))
        .collect::<Result<_, _>>()?;
    let (p, d) = quotient_map(f, &local)?;
    let q = f.r - d;
    let mut vecs = Vec::new();
    let mut indices = Vec::new();
    for (k, v) in f.vectors.iter().enumerate() {
        let w = p.mul_vec(v);
        if !local.contains(&k) && w.iter().any(|x| !x.is_zero()) {
            vecs.push(w);
            indices.push(fc.indices[k]);
        }
    }
    let g = Arrangement::new(q, vecs, f.base_field)?;
    let y: BTreeSet<LatticeClass> = fc
        .vertices
        .iter()
        .map(|m| {
            let gens: Vec<VectorK> = m.rep().columns().iter().map(|c| p.mul_vec(c)).collect();
            LatticeClass::from_generators(q, &gens)
        })
        .collect::<Result<_, _>>()?;
    build(&g, indices, &y)
}

/// Where the boundary divisors of an R-independent set of indices meet on
/// a component (no blown-up center inside the span of their residues),
/// the residues are independent. Returns the violations as (vertex, I).
pub fn boundary_residue_violations(fc: &FiberComplex) -> Vec<(usize, Vec<usize>)> {
    let f = &fc.arrangement;
    let mut out = Vec::new();
    for (vi, comp) in fc.components.iter().enumerate() {
        let on: Vec<usize> = (0..f.n()).filter(|&i| fc.boundary[i].contains(&vi)).collect();
        for k in 2..=f.r.min(on.len()) {
            for set in on.iter().copied().combinations(k) {
                if !f.is_independent(&set) {
                    continue;
                }
                let res: Vec<ResidueSubspace> =
                    set.iter().map(|&i| residue_of_vector(&comp.class, &f.vectors[i])).collect();
                let span = res.iter().skip(1).fold(res[0].clone(), |a, b| a.sum(b));
                if comp.centers().any(|c| span.contains(&c.subspace)) {
                    continue;
                }
                if span.dim() != k {
                    out.push((vi, set.iter().map(|&i| fc.indices[i]).collect()));
                }
            }
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::building::convex_hull;
    use crate::scalar::{parse_vector, BaseField};

    pub(crate) fn arr(r: usize, vs: &[&[&str]]) -> Arrangement {
        Arrangement::new(r, vs.iter().map(|v| parse_vector(v).unwrap()).collect(), BaseField::Rationals).unwrap()
    }

    pub(crate) fn example() -> Arrangement {
        arr(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["1", "1", "1"], &["z^-1", "1", "1"]])
    }

    fn class(r: usize, gens: &[&[&str]]) -> LatticeClass {
        LatticeClass::from_generators(r, &gens.iter().map(|v| parse_vector(v).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn example_complex() {
        let f = example();
        let m1 = LatticeClass::standard(3);
        let m2 = class(3, &[&["z^-1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        let y: BTreeSet<LatticeClass> = [m1.clone(), m2.clone()].into();
        let fc = fiber_complex(&f, &y).unwrap();
        assert_eq!(fc.vertices.len(), 2);
        assert_eq!(fc.edges().len(), 1);
        let i1 = fc.vertex_of(&m1).unwrap();
        let i2 = fc.vertex_of(&m2).unwrap();
        assert_eq!(fc.components[i1].family.len(), 1);
        assert_eq!(fc.components[i1].family[0].subspace.dim(), 1);
        assert_eq!(fc.components[i1].centers().count(), 0);
        let c2: Vec<&ResidueCenter> = fc.components[i2].centers().collect();
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].subspace.dim(), 2);
        assert_eq!(fc.boundary[0], vec![i2]);
        assert_eq!(fc.boundary[4], vec![i2]);
        assert!(fc.boundary[1].contains(&i1) && fc.boundary[1].contains(&i2));
        assert!(fc.components.iter().all(|c| c.centers_disjoint));
    }

    #[test]
    fn errors() {
        let f = example();
        let y: BTreeSet<LatticeClass> = [LatticeClass::standard(3)].into();
        assert!(matches!(fiber_complex(&f, &y), Err(FiberError::MissingStable(_))));
        let far = class(3, &[&["z^-2", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        let y: BTreeSet<LatticeClass> = [LatticeClass::standard(3), far].into();
        assert_eq!(fiber_complex(&f, &y), Err(FiberError::NotConvex));
    }

    #[test]
    fn single_vertex_and_generic_boundary() {
        let f = arr(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["1", "1", "1"]]);
        let y: BTreeSet<LatticeClass> = [LatticeClass::standard(3)].into();
        let fc = fiber_complex(&f, &y).unwrap();
        assert_eq!(fc.simplices, vec![vec![0]]);
        assert!(fc.components[0].family.is_empty());
        assert!(fc.boundary.iter().all(|b| b == &vec![0]));
        let g = arr(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        let fc = fiber_complex(&g, &y).unwrap();
        assert!(fc.boundary.iter().all(|b| b == &vec![0]));
    }

    #[test]
    fn path_of_three() {
        let f = arr(2, &[&["1", "0"], &["0", "1"], &["1", "1"], &["1", "z^2"]]);
        let a = LatticeClass::standard(2);
        let b = class(2, &[&["z^-2", "0"], &["0", "1"]]);
        let y = convex_hull(&[a, b]);
        let fc = fiber_complex(&f, &y).unwrap();
        assert_eq!(fc.vertices.len(), 3);
        assert_eq!(fc.edges().len(), 2);
        assert_eq!(fc.dim(), 1);
        assert!(fc.components.iter().all(|c| c.centers().count() == 0));
        let mid = fc
            .vertices
            .iter()
            .find(|v| fc.edges().iter().filter(|e| fc.vertices[e.0] == **v || fc.vertices[e.1] == **v).count() == 2)
            .unwrap();
        assert_eq!(&enlarge_off_boundary(&f, &y, mid).unwrap(), &y);
        let end = fc.vertices.iter().find(|v| *v != mid).unwrap();
        let y2 = enlarge_off_boundary(&f, &y, end).unwrap();
        assert!(y2.len() > y.len());
        assert!(y.is_subset(&y2));
    }

    #[test]
    fn enlarging_example() {
        let f = example();
        let y = stable_lattices(&f).unwrap();
        let m2 = class(3, &[&["z^-1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        let y2 = enlarge_off_boundary(&f, &y, &m2).unwrap();
        assert!(y2.len() > y.len());
        let before = boundary_incidence(&f, &y);
        let after = boundary_incidence(&f, &y2);
        for (b, a) in before.iter().zip(&after) {
            for m in &y {
                if !b.contains(m) {
                    assert!(!a.contains(m));
                }
            }
        }
        let m1 = LatticeClass::standard(3);
        assert_eq!(enlarge_off_boundary(&f, &y2, &m1).map(|_| ()), Ok(()));
    }

    #[test]
    fn quotients() {
        let f = example();
        let fc = fiber_complex(&f, &stable_lattices(&f).unwrap()).unwrap();
        let q = quotient_membrane(&fc, &[0]).unwrap();
        assert_eq!(q.arrangement.r, 2);
        assert_eq!(q.indices, vec![1, 2, 3, 4]);
        assert_eq!(q.vertices.len(), 1);
        assert_eq!(quotient_membrane(&fc, &[]).unwrap(), fc);
        let line = quotient_membrane(&fc, &[1, 2]).unwrap();
        assert_eq!(line.arrangement.r, 1);
        assert_eq!(line.vertices.len(), 1);
        let two = quotient_membrane(&q, &[1]).unwrap();
        assert_eq!(two.signature(), quotient_membrane(&fc, &[0, 1]).unwrap().signature());
        assert_eq!(quotient_membrane(&fc, &[0, 1, 2]), Err(FiberError::TrivialQuotient));
        assert!(boundary_residue_violations(&fc).iter().all(|(_, s)| !f.is_independent(s)));
    }
}
