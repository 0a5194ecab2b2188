use super::{boundary_incidence, FiberError};
use crate::building::{convex_hull, LatticeClass};
use crate::membrane::{
    apartment_stratification, default_window, git_stable_classes, limit_configuration, Arrangement, Cell,
    MembraneError, StratumComplex,
};
use crate::scalar::{BaseField, MatrixK, VectorK};
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceKind {
    /// P^2 blown up at the blowup points.
    BlowupP2,
    /// The exceptional case: contracting the special line gives P1 x P1
    /// (blown up at the remaining points).
    P1xP1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentModel {
    pub class: LatticeClass,
    pub blowup_points: Vec<Vec<BigRational>>,
    pub special_flag: bool,
    pub kind: SurfaceKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GermKind {
    NormalCrossing,
    Chain,
    Cycle(usize),
    Other,
}

impl fmt::Display for GermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermKind::NormalCrossing => write!(f, "normal_crossing"),
            GermKind::Chain => write!(f, "chain"),
            GermKind::Cycle(n) => write!(f, "cycle_{n}"),
            GermKind::Other => write!(f, "other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermReport {
    pub id: usize,
    pub kind: GermKind,
    /// Components through the point, cyclically ordered for cycles.
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitSurface {
    pub window: i64,
    pub components: Vec<ComponentModel>,
    pub edges: Vec<(usize, usize)>,
    pub germs: Vec<GermReport>,
    /// For each index i, the components meeting B_i.
    pub boundary: Vec<Vec<usize>>,
}

fn dot(k: BaseField, a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |s, (x, y)| k.add(&s, &k.mul(x, y)))
}

/// Blowup points and the special flag of a component, from C_M: points
/// where at least three distinct limit lines meet, unless the f_i through
/// the point already fail to span K^3.
pub(crate) fn component_model(f: &Arrangement, m: &LatticeClass) -> Result<ComponentModel, FiberError> {
    let c = limit_configuration(f, m)?;
    let k = c.field;
    let mut lines: Vec<(Vec<BigRational>, Vec<usize>)> = Vec::new();
    for (i, v) in c.covectors.iter().enumerate() {
        let v = k.projective_normalize(v);
        match lines.iter_mut().find(|l| l.0 == v) {
            Some(l) => l.1.push(i),
            None => lines.push((v, vec![i])),
        }
    }
    let mut points: Vec<Vec<BigRational>> = Vec::new();
    for (a, b) in (0..lines.len()).tuple_combinations() {
        let ker = k.kernel(&[lines[a].0.clone(), lines[b].0.clone()], 3);
        let p = k.projective_normalize(&ker[0]);
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let through =
        |p: &[BigRational]| -> Vec<usize> { (0..lines.len()).filter(|&l| dot(k, &lines[l].0, p).is_zero()).collect() };
    let blowup: Vec<Vec<BigRational>> = points
        .iter()
        .filter(|p| {
            let ls = through(p);
            if ls.len() < 3 {
                return false;
            }
            let cols: Vec<VectorK> =
                ls.iter().flat_map(|&l| lines[l].1.iter().map(|&i| f.vectors[i].clone())).collect();
            MatrixK::from_columns(&cols).rank() >= 3
        })
        .cloned()
        .sorted()
        .collect();
    let special = (0..lines.len()).any(|l| {
        let on: Vec<&Vec<BigRational>> = points.iter().filter(|p| dot(k, &lines[l].0, p).is_zero()).collect();
        on.len() == 2 && on.iter().all(|p| blowup.contains(p))
    });
    let kind = if special { SurfaceKind::P1xP1 } else { SurfaceKind::BlowupP2 };
    Ok(ComponentModel { class: m.clone(), blowup_points: blowup, special_flag: special, kind })
}

fn closure_contains(big: &Cell, small: &Cell) -> bool {
    small.label.iter().zip(&big.label).all(|(a, b)| b.iter().all(|x| a.contains(x)))
}

fn cyclic_order(s: &StratumComplex, verts: &[usize], ids: &[usize]) -> Vec<usize> {
    let pts: Vec<(f64, f64)> =
        verts.iter().map(|&v| (s.cells[v].sample[1] as f64, s.cells[v].sample[2] as f64)).collect();
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by(|&a, &b| {
        let ta = (pts[a].1 - cy).atan2(pts[a].0 - cx);
        let tb = (pts[b].1 - cy).atan2(pts[b].0 - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    let cyc: Vec<usize> = order.iter().map(|&i| ids[i]).collect();
    canonical_cycle(&cyc)
}

/// Rotate to start at the minimum, then pick the smaller direction.
fn canonical_cycle(c: &[usize]) -> Vec<usize> {
    let n = c.len();
    let start = (0..n).min_by_key(|&i| c[i]).unwrap();
    let fwd: Vec<usize> = (0..n).map(|k| c[(start + k) % n]).collect();
    let bwd: Vec<usize> = (0..n).map(|k| c[(start + n - k) % n]).collect();
    fwd.min(bwd)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum GermKey {
    Bounded(Vec<usize>),
    Unbounded(Vec<usize>, Vec<Vec<i64>>),
}

/// The limit surface for r = 3: components are the GIT-stable classes
/// (the 0-strata of the apartment stratifications), glued along bounded
/// 1-strata; every 2-stratum with a vertex is a point of the special
/// fiber, classified by its shape.
pub fn limit_surface(f: &Arrangement, window: Option<i64>) -> Result<LimitSurface, FiberError> {
    if f.r != 3 {
        return Err(MembraneError::NotImplemented(format!("limit surface for r = {}", f.r)).into());
    }
    let window = window.unwrap_or(0).max(default_window(f)?);
    let git = git_stable_classes(f, window)?;
    let bases: Vec<Vec<usize>> = (0..f.n()).combinations(3).filter(|t| f.is_independent(t)).collect();
    let strata: Vec<StratumComplex> =
        bases.par_iter().map(|t| apartment_stratification(f, t, window)).collect::<Result<_, MembraneError>>()?;

    let mut found: BTreeSet<LatticeClass> = BTreeSet::new();
    for s in &strata {
        for (_, c) in s.cells_of_dim(0) {
            let cl = c.class.clone().ok_or_else(|| FiberError::Invariant("vertex off the lattice".into()))?;
            found.insert(cl);
        }
    }
    if found != git {
        return Err(FiberError::Invariant("stratification vertices differ from GIT-stable classes".into()));
    }
    let comps: Vec<LatticeClass> = git.iter().cloned().collect();
    let id = |c: &Cell| comps.iter().position(|x| Some(x) == c.class.as_ref()).unwrap();

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut germs: BTreeMap<GermKey, GermKind> = BTreeMap::new();
    for s in &strata {
        for (_, c) in s.cells_of_dim(1) {
            if c.bounded && c.vertices.len() == 2 {
                let (a, b) = (id(&s.cells[c.vertices[0]]), id(&s.cells[c.vertices[1]]));
                edges.insert((a.min(b), a.max(b)));
            }
        }
        for (_, c) in s.cells_of_dim(2) {
            if c.vertices.is_empty() {
                continue;
            }
            let ids: Vec<usize> = c.vertices.iter().map(|&v| id(&s.cells[v])).collect();
            if c.bounded {
                let cyc = cyclic_order(s, &c.vertices, &ids);
                let kind = if (3..=6).contains(&cyc.len()) { GermKind::Cycle(cyc.len()) } else { GermKind::Other };
                germs.insert(GermKey::Bounded(cyc), kind);
                continue;
            }
            let rays: Vec<Vec<i64>> = s
                .cells_of_dim(1)
                .filter(|(_, e)| !e.bounded && closure_contains(c, e))
                .filter_map(|(_, e)| e.recession.clone())
                .sorted()
                .collect();
            let kind = match ids.len() {
                1 | 2 => GermKind::NormalCrossing,
                3 if rays.len() == 2 && rays[0] == rays[1] => GermKind::Chain,
                _ => GermKind::Other,
            };
            germs.insert(GermKey::Unbounded(ids.iter().copied().sorted().collect(), rays), kind);
        }
    }
    let germs = germs
        .into_iter()
        .enumerate()
        .map(|(i, (k, kind))| GermReport {
            id: i,
            kind,
            components: match k {
                GermKey::Bounded(c) => c,
                GermKey::Unbounded(c, _) => c,
            },
        })
        .collect();
    let components = comps.iter().map(|m| component_model(f, m)).collect::<Result<_, _>>()?;
    let y = convex_hull(&comps);
    let boundary = boundary_incidence(f, &y)
        .into_iter()
        .map(|ms| ms.iter().filter_map(|m| comps.iter().position(|c| c == m)).collect())
        .collect();
    Ok(LimitSurface { window, components, edges: edges.into_iter().collect(), germs, boundary })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{arr, example};
    use super::*;

    #[test]
    fn example_surface() {
        let f = example();
        let s = limit_surface(&f, None).unwrap();
        assert_eq!(s.components.len(), 2);
        let counts: Vec<usize> = s.components.iter().map(|c| c.blowup_points.len()).sorted().collect();
        assert_eq!(counts, vec![0, 1]);
        assert!(s.components.iter().all(|c| !c.special_flag && c.kind == SurfaceKind::BlowupP2));
        assert_eq!(s.edges, vec![(0, 1)]);
        assert!(s.germs.iter().all(|g| g.kind == GermKind::NormalCrossing));
    }

    #[test]
    fn constant_arrangement() {
        let f = arr(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["1", "1", "1"], &["1", "2", "3"]]);
        let s = limit_surface(&f, None).unwrap();
        assert_eq!(s.components.len(), 1);
        assert!(s.edges.is_empty());
        assert!(s.components[0].blowup_points.is_empty());
        assert!(s.boundary.iter().all(|b| b == &vec![0]));
    }

    #[test]
    fn special_component() {
        // limit lines x, y, z, x+y, x+z: triple points (0,0,1) and (0,1,0)
        // on x = 0, which meets the others nowhere else
        let f = arr(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["1", "1", "z"], &["1", "z", "1"]]);
        let m = component_model(&f, &LatticeClass::standard(3)).unwrap();
        assert_eq!(m.blowup_points.len(), 2);
        assert!(m.special_flag);
        assert_eq!(m.kind, SurfaceKind::P1xP1);
    }
}
