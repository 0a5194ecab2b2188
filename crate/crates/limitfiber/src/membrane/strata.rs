use super::{lead_or_zero, Arrangement, MembraneError};
use crate::building::LatticeClass;
use crate::matroid::Matroid;
use crate::scalar::VectorK;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Grid refinement: every cell of the fan refinement contains a point
/// with coordinates in (1/SCALE)Z.
const SCALE: i64 = 6;

/// A relatively open cell of the refinement inside one apartment.
#[derive(Clone, Debug)]
pub struct Cell {
    pub dim: usize,
    /// Per index i outside T (in increasing order): positions j in T
    /// where val(c_ij) - a_j is minimal.
    pub label: Vec<Vec<usize>>,
    /// A point of the cell in units of 1/6, first coordinate 0.
    pub sample: Vec<i64>,
    pub bounded: bool,
    /// Indices of the 0-cells in the closure.
    pub vertices: Vec<usize>,
    /// Class of an integral point of the cell, when there is one.
    pub class: Option<LatticeClass>,
    pub matroid: Matroid,
    /// Primitive direction of Psi along an unbounded 1-cell with a
    /// vertex, normalized to have minimum 0.
    pub recession: Option<Vec<i64>>,
}

/// Common refinement of the fans S(c_i) in the apartment of f_T.
#[derive(Clone, Debug)]
pub struct StratumComplex {
    pub t: Vec<usize>,
    /// Half-width of the sampled box, in units of a.
    pub window: i64,
    pub cells: Vec<Cell>,
}

impl StratumComplex {
    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = (usize, &Cell)> {
        self.cells.iter().enumerate().filter(move |(_, c)| c.dim == d)
    }
}

struct Table {
    /// val(c_ij) for i outside T, None when c_ij = 0.
    vals: Vec<Vec<Option<i64>>>,
    leads: Vec<Vec<BigRational>>,
    others: Vec<usize>,
}

impl Table {
    fn label(&self, p: &[i64]) -> Vec<Vec<usize>> {
        self.vals
            .iter()
            .map(|row| {
                let vs: Vec<Option<i64>> = row.iter().zip(p).map(|(v, a)| v.map(|v| SCALE * v - a)).collect();
                let m = vs.iter().flatten().min().copied();
                (0..row.len()).filter(|&j| vs[j].is_some() && vs[j] == m).collect()
            })
            .collect()
    }

    /// 6 * N_Λ(a)(f_i) for all i, in the original order.
    fn psi(&self, t: &[usize], n: usize, p: &[i64]) -> Vec<i64> {
        let mut out = vec![0; n];
        for (j, &tj) in t.iter().enumerate() {
            out[tj] = -p[j];
        }
        for (row, &i) in self.vals.iter().zip(&self.others) {
            out[i] = row.iter().zip(p).filter_map(|(v, a)| v.map(|v| SCALE * v - a)).min().unwrap();
        }
        out
    }

    /// Initial covectors at a point with the given label.
    fn covectors(&self, t: &[usize], n: usize, label: &[Vec<usize>]) -> Vec<Vec<BigRational>> {
        let r = t.len();
        let mut out = vec![Vec::new(); n];
        for (j, &tj) in t.iter().enumerate() {
            out[tj] = (0..r).map(|k| if k == j { BigRational::one() } else { BigRational::zero() }).collect();
        }
        for ((lab, lead), &i) in label.iter().zip(&self.leads).zip(&self.others) {
            out[i] = (0..r).map(|j| if lab.contains(&j) { lead[j].clone() } else { BigRational::zero() }).collect();
        }
        out
    }
}

/// Points have first coordinate 0 and at most two more.
fn affine_dim(points: &[Vec<i64>]) -> usize {
    let p0 = &points[0];
    let d = |p: &Vec<i64>| -> (i64, i64) { (p[1] - p0[1], p.get(2).map_or(0, |y| y - p0[2])) };
    let Some(u) = points.iter().map(d).find(|v| *v != (0, 0)) else {
        return 0;
    };
    if points.iter().map(d).any(|v| u.0 * v.1 - u.1 * v.0 != 0) {
        2
    } else {
        1
    }
}

fn primitive_min_zero(v: &[i64]) -> Vec<i64> {
    let m = *v.iter().min().unwrap();
    let w: Vec<i64> = v.iter().map(|x| x - m).collect();
    let g = w.iter().fold(0i64, |g, x| g.gcd(x));
    if g == 0 {
        w
    } else {
        w.into_iter().map(|x| x / g).collect()
    }
}

/// Cells of the refinement of the fans S(c_i), i outside T, sampled on a
/// box of half-width at least `window` and at least twice the valuation
/// spread plus two (so that bounded cells sit strictly inside).
pub fn apartment_stratification(f: &Arrangement, t: &[usize], window: i64) -> Result<StratumComplex, MembraneError> {
    let r = f.r;
    if !(2..=3).contains(&r) {
        return Err(MembraneError::NotImplemented(format!("apartment stratification for r = {r}")));
    }
    if t.len() != r || !f.is_independent(t) {
        return Err(MembraneError::InvalidArrangement("apartment basis is not independent".into()));
    }
    let n = f.n();
    let others: Vec<usize> = (0..n).filter(|i| !t.contains(i)).collect();
    let mut vals = Vec::new();
    let mut leads = Vec::new();
    for &i in &others {
        let c: VectorK = f.coefficients(t, i)?;
        vals.push(c.iter().map(|x| x.val().finite()).collect::<Vec<_>>());
        leads.push(
            c.iter()
                .map(|x| f.base_field.reduce(&lead_or_zero(x)).unwrap_or_else(BigRational::zero))
                .collect::<Vec<_>>(),
        );
    }
    let table = Table { vals, leads, others };
    let all: Vec<i64> = table.vals.iter().flatten().flatten().copied().collect();
    let spread = match (all.iter().min(), all.iter().max()) {
        (Some(a), Some(b)) => b - a,
        _ => 0,
    };
    let w = window.max(2 * spread + 2);
    let half = SCALE * w;
    let points: Vec<Vec<i64>> = if r == 2 {
        (-half..=half).map(|x| vec![0, x]).collect()
    } else {
        (-half..=half).flat_map(|x| (-half..=half).map(move |y| vec![0, x, y])).collect()
    };
    let labelled: Vec<(Vec<Vec<usize>>, Vec<i64>)> = points.into_par_iter().map(|p| (table.label(&p), p)).collect();
    let mut groups: BTreeMap<Vec<Vec<usize>>, Vec<Vec<i64>>> = BTreeMap::new();
    for (l, p) in labelled {
        groups.entry(l).or_default().push(p);
    }
    let mut cells: Vec<Cell> = Vec::with_capacity(groups.len());
    for (label, pts) in groups {
        let dim = affine_dim(&pts);
        let bounded = pts.iter().all(|p| p.iter().all(|x| x.abs() < half));
        let integral = pts.iter().find(|p| p.iter().all(|x| x % SCALE == 0));
        let class = integral.map(|p| {
            let b: Vec<i64> = p.iter().map(|x| x / SCALE).collect();
            f.apartment_class(t, &b)
        });
        let cov = table.covectors(t, n, &label);
        let matroid = Matroid::from_vectors(f.base_field, &cov)
            .map_err(|_| MembraneError::InvalidArrangement("initial covectors have deficient rank".into()))?;
        let recession = if dim == 1 && !bounded {
            let far = pts.iter().max_by_key(|p| p.iter().map(|x| x.abs()).max()).unwrap();
            let near = pts.iter().min_by_key(|p| p.iter().map(|x| x.abs()).max()).unwrap();
            let d: Vec<i64> = table.psi(t, n, far).iter().zip(table.psi(t, n, near)).map(|(a, b)| a - b).collect();
            Some(primitive_min_zero(&d))
        } else {
            None
        };
        cells.push(Cell {
            dim,
            label,
            sample: pts[pts.len() / 2].clone(),
            bounded,
            vertices: Vec::new(),
            class,
            matroid,
            recession,
        });
    }
    let zero: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].dim == 0).collect();
    for k in 0..cells.len() {
        let vs: Vec<usize> = zero
            .iter()
            .copied()
            .filter(|&z| cells[z].label.iter().zip(&cells[k].label).all(|(a, b)| b.iter().all(|x| a.contains(x))))
            .collect();
        cells[k].vertices = vs;
    }
    // a ray with no vertex is a full line: no recession direction
    for c in cells.iter_mut() {
        if c.dim == 1 && c.vertices.is_empty() {
            c.recession = None;
        }
    }
    Ok(StratumComplex { t: t.to_vec(), window: w, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membrane::{default_window, git_stable_classes};
    use crate::scalar::{parse_vector, BaseField};

    fn arr(r: usize, vs: &[&[&str]]) -> Arrangement {
        Arrangement::new(r, vs.iter().map(|v| parse_vector(v).unwrap()).collect(), BaseField::Rationals).unwrap()
    }

    fn example() -> Arrangement {
        arr(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["1", "1", "1"], &["z^-1", "1", "1"]])
    }

    #[test]
    fn example_two_vertices_one_bounded_edge() {
        let f = example();
        let s = apartment_stratification(&f, &[0, 1, 2], 2).unwrap();
        let zero: Vec<&Cell> = s.cells_of_dim(0).map(|c| c.1).collect();
        assert_eq!(zero.len(), 2);
        let classes: std::collections::BTreeSet<_> = zero.iter().map(|c| c.class.clone().unwrap()).collect();
        assert_eq!(classes, git_stable_classes(&f, default_window(&f).unwrap()).unwrap());
        let bounded_edges: Vec<&Cell> = s.cells_of_dim(1).map(|c| c.1).filter(|c| c.bounded).collect();
        assert_eq!(bounded_edges.len(), 1);
        assert_eq!(bounded_edges[0].vertices.len(), 2);
    }

    #[test]
    fn one_extra_vector() {
        let f = arr(3, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["1", "1", "1"]]);
        let s = apartment_stratification(&f, &[0, 1, 2], 1).unwrap();
        assert_eq!(s.cells_of_dim(0).count(), 1);
        assert!(s.cells_of_dim(1).all(|(_, c)| !c.bounded));
        assert_eq!(s.cells_of_dim(1).count(), 3);
        assert_eq!(s.cells_of_dim(2).count(), 3);
    }

    #[test]
    fn line_with_bounded_edge() {
        let f = arr(2, &[&["1", "0"], &["0", "1"], &["1", "1"], &["1", "z"]]);
        let s = apartment_stratification(&f, &[0, 1], 1).unwrap();
        assert_eq!(s.cells_of_dim(0).count(), 2);
        let b: Vec<&Cell> = s.cells_of_dim(1).map(|c| c.1).filter(|c| c.bounded).collect();
        assert_eq!(b.len(), 1);
        // lattice length one: the two vertices are adjacent integer points
        let v: Vec<i64> = b[0].vertices.iter().map(|&i| s.cells[i].sample[1]).collect();
        assert_eq!((v[0] - v[1]).abs(), SCALE);
    }
}
