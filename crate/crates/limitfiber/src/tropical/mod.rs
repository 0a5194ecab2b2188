//! Tropical linear spaces from valuated circuits, and the check that the
//! membrane maps onto the integer points of the tropicalized row space.

use crate::building::{incident, LatticeClass};
use crate::membrane::{in_membrane, psi, Arrangement};
use crate::scalar::{MatrixK, ScalarK, Val, VectorK};
use itertools::Itertools;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// val det(f_I) for every r-subset I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPluecker {
    pub r: usize,
    pub n: usize,
    pub vals: BTreeMap<Vec<usize>, Val>,
}

fn add(a: Val, b: Val) -> Val {
    match (a, b) {
        (Val::Fin(x), Val::Fin(y)) => Val::Fin(x + y),
        _ => Val::Inf,
    }
}

/// Minimum attained at least twice, or every term infinite.
fn min_twice(terms: &[Val]) -> bool {
    let fin: Vec<i64> = terms.iter().filter_map(|v| v.finite()).collect();
    match fin.iter().min() {
        None => true,
        Some(m) => fin.iter().filter(|x| *x == m).count() >= 2,
    }
}

impl TropicalPluecker {
    pub fn get(&self, set: &[usize]) -> Val {
        let key: Vec<usize> = set.iter().copied().sorted().collect();
        if key.iter().tuple_windows().any(|(a, b)| a == b) {
            return Val::Inf;
        }
        self.vals[&key]
    }

    /// Three-term relations p_Sab p_Scd, p_Sac p_Sbd, p_Sad p_Sbc.
    pub fn satisfies_relations(&self) -> bool {
        if self.r < 2 || self.n < 4 {
            return true;
        }
        for s in (0..self.n).combinations(self.r - 2) {
            let rest: Vec<usize> = (0..self.n).filter(|i| !s.contains(i)).collect();
            for q in rest.iter().copied().combinations(4) {
                let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
                let p = |x: usize, y: usize| {
                    let mut k = s.clone();
                    k.push(x);
                    k.push(y);
                    self.get(&k)
                };
                let t = [add(p(a, b), p(c, d)), add(p(a, c), p(b, d)), add(p(a, d), p(b, c))];
                if !min_twice(&t) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn pluecker_valuations(f: &Arrangement) -> TropicalPluecker {
    let vals = (0..f.n())
        .combinations(f.r)
        .map(|s| {
            let cols: Vec<VectorK> = s.iter().map(|&i| f.vectors[i].clone()).collect();
            let d = MatrixK::from_columns(&cols).det().expect("square");
            (s, d.val())
        })
        .collect();
    TropicalPluecker { r: f.r, n: f.n(), vals }
}

/// A minimal linear dependence sum c_i f_i = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub support: Vec<usize>,
    /// Length n, zero off the support.
    pub coeffs: VectorK,
    pub vals: Vec<Val>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CircuitSet {
    pub n: usize,
    pub circuits: Vec<Circuit>,
}

impl CircuitSet {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }
}

/// One circuit per support, from the kernels of (r+1)-subsets of rank r.
pub fn circuits(f: &Arrangement) -> CircuitSet {
    let n = f.n();
    let mut by_support: BTreeMap<Vec<usize>, Circuit> = BTreeMap::new();
    for z in (0..n).combinations(f.r + 1) {
        let Some(k) = (0..z.len()).rev().find(|&k| {
            let t: Vec<usize> = z.iter().copied().filter(|&i| i != z[k]).collect();
            f.is_independent(&t)
        }) else {
            continue;
        };
        let t: Vec<usize> = z.iter().copied().filter(|&i| i != z[k]).collect();
        let c = f.coefficients(&t, z[k]).expect("independent");
        let mut coeffs = vec![ScalarK::zero(); n];
        coeffs[z[k]] = -ScalarK::one();
        for (j, &tj) in t.iter().enumerate() {
            coeffs[tj] = c[j].clone();
        }
        let support: Vec<usize> = (0..n).filter(|&i| !coeffs[i].is_zero()).collect();
        let vals = coeffs.iter().map(|x| x.val()).collect();
        by_support.entry(support.clone()).or_insert(Circuit { support, coeffs, vals });
    }
    CircuitSet { n, circuits: by_support.into_values().collect() }
}

/// For every circuit, min over the support of val(c_i) + w_i is attained
/// at least twice.
pub fn trop_membership(w: &[i64], c: &CircuitSet) -> bool {
    c.circuits.iter().all(|ci| {
        let terms: Vec<Val> = ci.support.iter().map(|&i| add(ci.vals[i], Val::Fin(w[i]))).collect();
        min_twice(&terms)
    })
}

/// Σ R z^{-w_i} f_i.
pub fn sum_lattice(f: &Arrangement, w: &[i64]) -> LatticeClass {
    let gens: Vec<VectorK> = f.vectors.iter().zip(w).map(|(v, &e)| v.iter().map(|x| x.shifted(-e)).collect()).collect();
    LatticeClass::from_generators(f.r, &gens).expect("spanning")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceWitness {
    pub w: Vec<i64>,
    pub tropical: bool,
    pub membrane: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub accepted: Vec<Vec<i64>>,
    pub witnesses: Vec<CorrespondenceWitness>,
}

impl CorrespondenceReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Over all w with w_1 = 0 and |w_i| <= window: w passes the circuit test
/// iff Λ_w lies in the membrane with Psi(Λ_w) = w.
pub fn verify_correspondence(f: &Arrangement, window: i64) -> CorrespondenceReport {
    let cs = circuits(f);
    let n = f.n();
    let points: Vec<Vec<i64>> = (1..n)
        .map(|_| -window..=window)
        .multi_cartesian_product()
        .map(|rest| std::iter::once(0).chain(rest).collect())
        .collect();
    let results: Vec<(Vec<i64>, bool, bool)> = points
        .into_par_iter()
        .map(|w| {
            let t = trop_membership(&w, &cs);
            let l = sum_lattice(f, &w);
            let m = psi(f, l.rep()) == w && in_membrane(f, &l).unwrap_or(false);
            (w, t, m)
        })
        .collect();
    let mut rep = CorrespondenceReport {
        checked: results.len(),
        passed: 0,
        failed: 0,
        accepted: Vec::new(),
        witnesses: Vec::new(),
    };
    for (w, t, m) in results {
        if t == m {
            rep.passed += 1;
            if t {
                rep.accepted.push(w);
            }
        } else {
            rep.failed += 1;
            rep.witnesses.push(CorrespondenceWitness { w, tropical: t, membrane: m });
        }
    }
    rep
}

/// Edges between incident classes among the accepted points.
pub fn accepted_graph(f: &Arrangement, accepted: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let classes: Vec<LatticeClass> = accepted.iter().map(|w| sum_lattice(f, w)).collect();
    (0..classes.len())
        .tuple_combinations()
        .filter(|&(i, j)| incident(&classes[i], &classes[j]).unwrap_or(false))
        .collect()
}
