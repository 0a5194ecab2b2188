use super::BuildingError;
use crate::scalar::{min_val, MatrixK, ScalarK, Val, VectorK};
use std::cmp::Ordering;
use std::fmt;

/// A lattice (not a class): an R-submodule of K^r of full rank, held in
/// column Hermite form. Column j has zeros above row j, z^{d_j} on the
/// diagonal and entries below reduced modulo the pivot power of their row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    cols: Vec<VectorK>,
    diag: Vec<i64>,
}

impl Lattice {
    /// R-span of the given vectors.
    pub fn from_generators(r: usize, gens: &[VectorK]) -> Result<Self, BuildingError> {
        hermite(r, gens)
    }

    /// The standard lattice R^r.
    pub fn standard(r: usize) -> Self {
        let cols =
            (0..r).map(|j| (0..r).map(|i| if i == j { ScalarK::one() } else { ScalarK::zero() }).collect()).collect();
        Lattice { cols, diag: vec![0; r] }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn columns(&self) -> &[VectorK] {
        &self.cols
    }

    pub fn diag_exponents(&self) -> &[i64] {
        &self.diag
    }

    pub fn basis_matrix(&self) -> MatrixK {
        MatrixK::from_columns(&self.cols)
    }

    /// Entry in row i, column j.
    pub fn entry(&self, i: usize, j: usize) -> &ScalarK {
        &self.cols[j][i]
    }

    /// z^e times the lattice.
    pub fn scaled(&self, e: i64) -> Self {
        if e == 0 {
            return self.clone();
        }
        Lattice {
            cols: self.cols.iter().map(|c| c.iter().map(|x| x.shifted(e)).collect()).collect(),
            diag: self.diag.iter().map(|d| d + e).collect(),
        }
    }

    /// Coordinates of v in the Hermite basis (forward substitution).
    pub fn coords(&self, v: &[ScalarK]) -> VectorK {
        let r = self.rank();
        let mut x: VectorK = Vec::with_capacity(r);
        for k in 0..r {
            let mut acc = v[k].clone();
            for (j, xj) in x.iter().enumerate() {
                let h = &self.cols[j][k];
                if !h.is_zero() && !xj.is_zero() {
                    acc = acc - h * xj;
                }
            }
            x.push(acc.shifted(-self.diag[k]));
        }
        x
    }

    /// N_Lambda(v): the minimal valuation of the coordinates of v.
    pub fn norm(&self, v: &[ScalarK]) -> Val {
        min_val(&self.coords(v))
    }

    pub fn contains_vector(&self, v: &[ScalarK]) -> bool {
        self.norm(v) >= Val::Fin(0)
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        other.cols.iter().all(|c| self.contains_vector(c))
    }

    /// Minimal valuation of the coordinates of other's basis in self.
    pub fn min_coord_val(&self, other: &Lattice) -> i64 {
        other.cols.iter().map(|c| self.norm(c)).min().and_then(|v| v.finite()).expect("nonzero lattice")
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.cols.clone();
        gens.extend(other.cols.iter().cloned());
        hermite(self.rank(), &gens).expect("sum of full-rank lattices spans")
    }

    /// Matrix of coordinates of other's basis in self (self^{-1} other).
    pub fn transition(&self, other: &Lattice) -> Vec<VectorK> {
        other.cols.iter().map(|c| self.coords(c)).collect()
    }

    /// Valuation of det, i.e. the index exponent relative to R^r.
    pub fn det_val(&self) -> i64 {
        self.diag.iter().sum()
    }

    pub fn class(&self) -> LatticeClass {
        LatticeClass::from_lattice(self)
    }
}

fn hermite(r: usize, gens: &[VectorK]) -> Result<Lattice, BuildingError> {
    let mut cols: Vec<VectorK> = gens
        .iter()
        .filter(|g| {
            assert_eq!(g.len(), r, "generator has wrong length");
            g.iter().any(|x| !x.is_zero())
        })
        .cloned()
        .collect();
    let mut diag = Vec::with_capacity(r);
    for i in 0..r {
        let pivot = (i..cols.len())
            .filter(|&j| !cols[j][i].is_zero())
            .min_by_key(|&j| (cols[j][i].val(), !cols[j][i].is_monomial(), !cols[j][i].is_laurent()));
        let Some(p) = pivot else { return Err(BuildingError::DegenerateSpan) };
        cols.swap(i, p);
        let d = cols[i][i].val().finite().unwrap();
        let u = cols[i][i].unit_part();
        if !u.is_one() {
            let ui = u.inv();
            for x in cols[i][i + 1..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &ui;
                }
            }
        }
        cols[i][i] = ScalarK::z_pow(d);
        let (head, tail) = cols.split_at_mut(i + 1);
        let piv = &head[i];
        for c in tail.iter_mut() {
            if c[i].is_zero() {
                continue;
            }
            let q = c[i].shifted(-d);
            for k in i + 1..r {
                if !piv[k].is_zero() {
                    c[k] = &c[k] - &(&q * &piv[k]);
                }
            }
            c[i] = ScalarK::zero();
        }
        diag.push(d);
    }
    cols.truncate(r);
    for i in 0..r {
        for k in i + 1..r {
            let e = cols[i][k].clone();
            if e.is_zero() {
                continue;
            }
            let t = e.truncate_below(diag[k]);
            if t == e {
                continue;
            }
            let q = (&e - &t).shifted(-diag[k]);
            let (lo, hi) = cols.split_at_mut(k);
            let ci = &mut lo[i];
            let ck = &hi[0];
            for l in k + 1..r {
                if !ck[l].is_zero() {
                    ci[l] = &ci[l] - &(&q * &ck[l]);
                }
            }
            ci[k] = t;
        }
    }
    Ok(Lattice { cols, diag })
}

/// A lattice class [M]: the Hermite representative scaled so that the
/// smallest pivot exponent is zero. Equality is syntactic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeClass {
    rep: Lattice,
}

impl LatticeClass {
    pub fn from_lattice(l: &Lattice) -> Self {
        let m = *l.diag.iter().min().expect("rank >= 1");
        LatticeClass { rep: l.scaled(-m) }
    }

    pub fn from_generators(r: usize, gens: &[VectorK]) -> Result<Self, BuildingError> {
        Ok(Self::from_lattice(&Lattice::from_generators(r, gens)?))
    }

    pub fn standard(r: usize) -> Self {
        LatticeClass { rep: Lattice::standard(r) }
    }

    /// The canonical representative.
    pub fn rep(&self) -> &Lattice {
        &self.rep
    }

    pub fn rank(&self) -> usize {
        self.rep.rank()
    }

    pub fn basis_matrix(&self) -> MatrixK {
        self.rep.basis_matrix()
    }

    /// Canonical matrix as row-major strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|j| self.rep.entry(i, j).to_string()).collect()).collect()
    }
}

impl Ord for LatticeClass {
    fn cmp(&self, o: &Self) -> Ordering {
        let r = self.rank();
        r.cmp(&o.rank()).then_with(|| {
            for i in 0..r {
                for j in 0..r {
                    let c = self.rep.entry(i, j).cmp(o.rep.entry(i, j));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for LatticeClass {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
