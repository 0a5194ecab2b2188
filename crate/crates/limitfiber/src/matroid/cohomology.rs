use super::intmat::{coords_in, hnf_basis, smith_invariants, IntMatrix};
use super::polytope::{facets, polytope_of};
use super::{Matroid, MatroidDecomposition};
use crate::scalar::{rat, BaseField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Ranks of H^0 and H^1 of the affine cochain complex on interior faces
/// of codimension 0, 1, 2; torsion of H^1 as invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffCohomology {
    pub h0: usize,
    pub h1_rank: usize,
    pub h1_torsion: Vec<BigInt>,
    pub faces: [usize; 3],
}

impl AffCohomology {
    pub fn h1_vanishes(&self) -> bool {
        self.h1_rank == 0 && self.h1_torsion.is_empty()
    }
}

struct Face {
    verts: Vec<Vec<i64>>,
    aff: IntMatrix,
}

impl Face {
    fn new(m: &Matroid) -> Self {
        let verts = polytope_of(m).vertices;
        let n = verts[0].len();
        let mut gens: Vec<Vec<BigInt>> = (0..n).map(|i| verts.iter().map(|v| BigInt::from(v[i])).collect()).collect();
        gens.push(vec![BigInt::one(); verts.len()]);
        Face { aff: hnf_basis(&gens), verts }
    }

    fn interior(&self) -> bool {
        let n = self.verts[0].len();
        (0..n).all(|i| {
            let first = self.verts[0][i];
            self.verts.iter().any(|v| v[i] != first)
        })
    }

    /// Greedy independent vertex differences, last coordinate dropped.
    fn orientation(&self) -> Vec<Vec<BigRational>> {
        let f = BaseField::Rationals;
        let mut out: Vec<Vec<BigRational>> = Vec::new();
        for v in &self.verts[1..] {
            let d: Vec<BigRational> = v.iter().zip(&self.verts[0]).map(|(a, b)| rat(a - b)).collect();
            let mut trial = out.clone();
            trial.push(d[..d.len() - 1].to_vec());
            if f.rank(&trial) == trial.len() {
                out = trial;
            }
        }
        out
    }

    /// Restriction of this face's affine basis to a subface, as a block
    /// with one column per basis element here.
    fn restriction(&self, sub: &Face) -> Vec<Vec<BigInt>> {
        let idx: Vec<usize> =
            sub.verts.iter().map(|v| self.verts.iter().position(|w| w == v).expect("subface")).collect();
        let cols: Vec<Vec<BigInt>> = self
            .aff
            .iter()
            .map(|row| {
                let vals: Vec<BigInt> = idx.iter().map(|&i| row[i].clone()).collect();
                coords_in(&sub.aff, &vals).expect("restrictions of coordinates generate")
            })
            .collect();
        (0..sub.aff.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }
}

fn sign_of(x: &BigRational) -> i64 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Incidence sign of a codimension-one subface: orientation of
/// (outward vector, sub orientation) against the face orientation.
fn incidence(face: &Face, face_or: &[Vec<BigRational>], sub: &Face, sub_or: &[Vec<BigRational>]) -> i64 {
    let f = BaseField::Rationals;
    let out = face.verts.iter().find(|v| !sub.verts.contains(v)).expect("proper subface");
    let w: Vec<BigRational> = sub.verts[0].iter().zip(out).map(|(a, b)| rat(a - b)).collect();
    let mut rows = vec![w[..w.len() - 1].to_vec()];
    rows.extend(sub_or.iter().cloned());
    // restrict to columns where the face orientation is nonsingular
    let k = face_or.len();
    let mut cols = Vec::new();
    for j in 0..face_or[0].len() {
        let mut trial: Vec<Vec<BigRational>> =
            cols.iter().map(|&c: &usize| face_or.iter().map(|r| r[c].clone()).collect()).collect();
        trial.push(face_or.iter().map(|r| r[j].clone()).collect());
        if f.rank(&trial) == trial.len() {
            cols.push(j);
        }
        if cols.len() == k {
            break;
        }
    }
    let pick = |m: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        m.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect()
    };
    sign_of(&f.det(&pick(&rows))) * sign_of(&f.det(&pick(face_or)))
}

fn key(m: &Matroid) -> Vec<u64> {
    m.bases().to_vec()
}

/// Cohomology of C^0 -> C^1 -> C^2 with C^i the affine functions on
/// interior faces of codimension i, differentials signed restrictions.
/// Interior means not inside a facet of Δ(r,n).
pub fn aff_cohomology(d: &MatroidDecomposition) -> AffCohomology {
    let tops: Vec<Face> = d.polytopes.iter().map(|p| Face::new(&p.matroid)).collect();
    let top_or: Vec<Vec<BigRational>> = {
        let dim = d.n - 1;
        (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect()
    };
    let mut f1: BTreeMap<Vec<u64>, (Matroid, Vec<usize>)> = BTreeMap::new();
    for (k, p) in d.polytopes.iter().enumerate() {
        for q in facets(&p.matroid) {
            f1.entry(key(&q)).or_insert_with(|| (q.clone(), Vec::new())).1.push(k);
        }
    }
    let f1: Vec<(Face, Vec<usize>, Matroid)> =
        f1.into_values().map(|(m, ps)| (Face::new(&m), ps, m)).filter(|(f, _, _)| f.interior()).collect();
    let f1_or: Vec<Vec<Vec<BigRational>>> = f1.iter().map(|(f, _, _)| f.orientation()).collect();
    let mut f2: BTreeMap<Vec<u64>, (Matroid, Vec<usize>)> = BTreeMap::new();
    for (k, (_, _, m)) in f1.iter().enumerate() {
        for r in facets(m) {
            f2.entry(key(&r)).or_insert_with(|| (r.clone(), Vec::new())).1.push(k);
        }
    }
    let f2: Vec<(Face, Vec<usize>)> =
        f2.into_values().map(|(m, qs)| (Face::new(&m), qs)).filter(|(f, _)| f.interior()).collect();

    let offsets = |sizes: Vec<usize>| -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for s in sizes {
            off.push(acc);
            acc += s;
        }
        (off, acc)
    };
    let (o0, n0) = offsets(tops.iter().map(|f| f.aff.len()).collect());
    let (o1, n1) = offsets(f1.iter().map(|f| f.0.aff.len()).collect());
    let (o2, n2) = offsets(f2.iter().map(|f| f.0.aff.len()).collect());

    let mut d0: IntMatrix = vec![vec![BigInt::zero(); n0]; n1];
    for (qi, (q, ps, _)) in f1.iter().enumerate() {
        for &p in ps {
            let s = incidence(&tops[p], &top_or, q, &f1_or[qi]);
            let block = tops[p].restriction(q);
            for (a, row) in block.iter().enumerate() {
                for (b, x) in row.iter().enumerate() {
                    d0[o1[qi] + a][o0[p] + b] += x * s;
                }
            }
        }
    }
    let mut d1: IntMatrix = vec![vec![BigInt::zero(); n1]; n2];
    for (ri, (r, qs)) in f2.iter().enumerate() {
        let r_or = r.orientation();
        for &qi in qs {
            let q = &f1[qi].0;
            let s = incidence(q, &f1_or[qi], r, &r_or);
            let block = q.restriction(r);
            for (a, row) in block.iter().enumerate() {
                for (b, x) in row.iter().enumerate() {
                    d1[o2[ri] + a][o1[qi] + b] += x * s;
                }
            }
        }
    }
    debug_assert!(compose_is_zero(&d1, &d0));
    let inv0 = if n1 == 0 { Vec::new() } else { smith_invariants(&d0) };
    let rank1 = if n2 == 0 { 0 } else { smith_invariants(&d1).len() };
    AffCohomology {
        h0: n0 - inv0.len(),
        h1_rank: n1 - rank1 - inv0.len(),
        h1_torsion: inv0.into_iter().filter(|x| !x.is_one()).collect(),
        faces: [tops.len(), f1.len(), f2.len()],
    }
}

fn compose_is_zero(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.iter().all(|row| {
        (0..b.first().map_or(0, |r| r.len()))
            .all(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum::<BigInt>().is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{bits, central_decomposition};
    use itertools::Itertools;

    #[test]
    fn trivial_and_octahedron_splits() {
        let t = aff_cohomology(&MatroidDecomposition::trivial(2, 4));
        assert!(t.h1_vanishes());
        assert_eq!(t.faces, [1, 0, 0]);
        assert_eq!(t.h0, 4);
        for pair in [[0usize, 1], [0, 2], [0, 3]] {
            let a = bits(&pair);
            let b = bits(&(0..4).filter(|i| !pair.contains(i)).collect::<Vec<_>>());
            let lo = Matroid::from_bases(4, (0..4).combinations(2).map(|c| bits(&c)).filter(|&x| x != a)).unwrap();
            let hi = Matroid::from_bases(4, (0..4).combinations(2).map(|c| bits(&c)).filter(|&x| x != b)).unwrap();
            let h = aff_cohomology(&MatroidDecomposition::new(2, 4, vec![lo, hi]));
            assert!(h.h1_vanishes());
            assert_eq!(h.h0, 5);
            assert_eq!(h.faces, [2, 1, 0]);
        }
    }

    #[test]
    fn central_examples_vanish() {
        let d = central_decomposition(&[vec![1, 2, 3]], 3, 5).unwrap();
        assert!(aff_cohomology(&d).h1_vanishes());
        let d = central_decomposition(&[vec![0, 1, 2], vec![2, 3, 4]], 3, 6).unwrap();
        assert!(aff_cohomology(&d).h1_vanishes());
    }
}
