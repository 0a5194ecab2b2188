//! Lattice classes in the affine building of K^r.

mod hull;
mod lattice;
mod residue;
mod simplex;

pub use hull::{convex_hull, convex_hull_bruteforce, is_convex};
pub use lattice::{Lattice, LatticeClass};
pub use residue::{residue, residue_of_vector, star_residues, ResidueSubspace, StarResidue};
pub use simplex::{extend_uniformizer, simplex_of, BuildingSimplex, UniformizerExtension};

use crate::scalar::{ScalarError, ScalarK, VectorK};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildingError {
    #[error("generators do not span K^r")]
    DegenerateSpan,
    #[error("the two classes coincide")]
    SameClass,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("uniformizer degree {m} is smaller than rank {r}")]
    DegreeTooSmall { m: usize, r: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub fn lattice_from_generators(r: usize, vectors: &[VectorK]) -> Result<LatticeClass, BuildingError> {
    LatticeClass::from_generators(r, vectors)
}

/// Elementary-divisor exponents of N^{-1} M, sorted and shifted so the
/// first is zero.
pub fn relative_position(m: &LatticeClass, n: &LatticeClass) -> Result<Vec<i64>, BuildingError> {
    if m.rank() != n.rank() {
        return Err(BuildingError::RankMismatch(m.rank(), n.rank()));
    }
    let mut e: Vec<i64> = elementary_divisors(m.rep().transition(n.rep())).into_iter().map(|x| -x).collect();
    e.sort_unstable();
    let lo = e[0];
    Ok(e.into_iter().map(|x| x - lo).collect())
}

/// Valuations of the Smith form over R of a square nonsingular matrix
/// given by columns.
pub(crate) fn elementary_divisors(mut cols: Vec<VectorK>) -> Vec<i64> {
    let r = cols.len();
    let mut out = Vec::with_capacity(r);
    let mut rows: Vec<usize> = (0..r).collect();
    let mut cidx: Vec<usize> = (0..r).collect();
    for k in 0..r {
        let mut best: Option<(usize, usize, i64)> = None;
        for ii in k..r {
            for jj in k..r {
                if let Some(v) = cols[cidx[jj]][rows[ii]].val().finite() {
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((ii, jj, v));
                    }
                }
            }
        }
        let (ii, jj, v) = best.expect("nonsingular matrix");
        rows.swap(k, ii);
        cidx.swap(k, jj);
        out.push(v);
        let (pr, pc) = (rows[k], cidx[k]);
        let pinv = cols[pc][pr].inv();
        // clear row pr in the remaining columns
        for jj in k + 1..r {
            let c = cidx[jj];
            if cols[c][pr].is_zero() {
                continue;
            }
            let f = &cols[c][pr] * &pinv;
            for ii in k + 1..r {
                let i = rows[ii];
                if !cols[pc][i].is_zero() {
                    let t = &f * &cols[pc][i];
                    cols[c][i] = &cols[c][i] - &t;
                }
            }
            cols[c][pr] = ScalarK::zero();
        }
    }
    out
}

pub fn equivalent(m: &LatticeClass, n: &LatticeClass) -> bool {
    m == n
}

/// Incidence: relative position in {0,1}^r, not all equal.
pub fn incident(m: &LatticeClass, n: &LatticeClass) -> Result<bool, BuildingError> {
    if m == n {
        return Err(BuildingError::SameClass);
    }
    let e = relative_position(m, n)?;
    Ok(e.iter().all(|&x| x <= 1))
}

/// Exponent a with z^a v in M but not in zM, and the scaled vector.
pub fn theta_limit_vector(m: &Lattice, v: &[ScalarK]) -> (i64, VectorK) {
    let a = -m.norm(v).finite().expect("nonzero vector");
    (a, v.iter().map(|x| x.shifted(a)).collect())
}

/// Exponent a with z^a N in M but not in zM, and the scaled lattice.
pub fn theta_limit_lattice(m: &Lattice, n: &Lattice) -> (i64, Lattice) {
    let a = -m.min_coord_val(n);
    (a, n.scaled(a))
}

/// Class of M + N on the representatives given.
pub fn lattice_sum(m: &Lattice, n: &Lattice) -> LatticeClass {
    m.sum(n).class()
}
