use super::decomposition::central_matroid;
use super::{Matroid, MatroidError};
use crate::scalar::BaseField;
use num_rational::BigRational;
use num_traits::Zero;

/// An explicit configuration of n hyperplanes in P^{r-1} over k whose
/// only special incidences are the points cut out by the sets I_α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralWitness {
    pub field: BaseField,
    pub r: usize,
    pub covectors: Vec<Vec<BigRational>>,
    pub sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub dim_xc: usize,
    pub lhs: usize,
    pub rhs: i64,
    pub violates: bool,
}

fn points(w: &CentralWitness) -> Result<Vec<Vec<BigRational>>, MatroidError> {
    let f = w.field;
    let n = w.covectors.len();
    let mut out = Vec::with_capacity(w.sets.len());
    for (a, s) in w.sets.iter().enumerate() {
        let rows: Vec<Vec<BigRational>> = s.iter().map(|&i| w.covectors[i].clone()).collect();
        let ker = f.kernel(&rows, w.r);
        if ker.len() != 1 {
            return Err(MatroidError::WitnessInvalid(format!("set {} has rank {}", a + 1, w.r - ker.len())));
        }
        let p = f.projective_normalize(&ker[0]);
        if let Some(i) = (0..n).find(|i| !s.contains(i) && dot(f, &w.covectors[*i], &p).is_zero()) {
            return Err(MatroidError::WitnessInvalid(format!("hyperplane {i} passes through point {}", a + 1)));
        }
        out.push(p);
    }
    Ok(out)
}

fn dot(f: BaseField, a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |s, (x, y)| f.add(&s, &f.mul(x, y)))
}

/// Compares Σ (|I_α| - r + 1) + dim X_C with dim Gr(r,n)/T, where X_C is
/// the realization space of the central matroid near the witness, read
/// off from the tangent space of the incidence equations modulo the
/// gauge (hyperplane and point scalings, gl_r).
pub fn dimension_audit(w: &CentralWitness) -> Result<AuditReport, MatroidError> {
    let f = w.field;
    let n = w.covectors.len();
    let r = w.r;
    if w.covectors.iter().any(|v| v.len() != r) {
        return Err(MatroidError::Invalid("covectors must have r entries".into()));
    }
    let covectors: Vec<Vec<BigRational>> = w
        .covectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| f.reduce(x).ok_or_else(|| MatroidError::Invalid(format!("{x} does not reduce"))))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let w = CentralWitness { covectors, ..w.clone() };
    let central = central_matroid(&w.sets, r, n)?;
    let realized = Matroid::from_vectors(f, &w.covectors)?;
    if realized != central {
        return Err(MatroidError::WitnessInvalid("realized matroid differs from the central matroid".into()));
    }
    let pts = points(&w)?;
    let m = pts.len();
    let cols = n * r + m * r;
    let fcol = |i: usize, k: usize| i * r + k;
    let pcol = |a: usize, k: usize| n * r + a * r + k;

    let mut jac = Vec::new();
    for (a, s) in w.sets.iter().enumerate() {
        for &i in s {
            let mut row = vec![BigRational::zero(); cols];
            for k in 0..r {
                row[fcol(i, k)] = pts[a][k].clone();
                row[pcol(a, k)] = w.covectors[i][k].clone();
            }
            jac.push(row);
        }
    }
    let tangent = cols - f.rank(&jac);

    let mut gauge = Vec::new();
    for i in 0..n {
        let mut v = vec![BigRational::zero(); cols];
        for k in 0..r {
            v[fcol(i, k)] = w.covectors[i][k].clone();
        }
        gauge.push(v);
    }
    for (a, p) in pts.iter().enumerate() {
        let mut v = vec![BigRational::zero(); cols];
        for k in 0..r {
            v[pcol(a, k)] = p[k].clone();
        }
        gauge.push(v);
    }
    // elementary matrix E_{st}: f -> -E^T f, p -> E p
    for s in 0..r {
        for t in 0..r {
            let mut v = vec![BigRational::zero(); cols];
            for i in 0..n {
                v[fcol(i, t)] = f.neg(&w.covectors[i][s]);
            }
            for (a, p) in pts.iter().enumerate() {
                v[pcol(a, s)] = p[t].clone();
            }
            gauge.push(v);
        }
    }
    let dim_xc = tangent - f.rank(&gauge);
    let lhs = w.sets.iter().map(|s| s.len() + 1 - r).sum::<usize>() + dim_xc;
    let rhs = (n * (r - 1)) as i64 - (r * r) as i64 + 1;
    Ok(AuditReport { dim_xc, lhs, rhs, violates: lhs as i64 > rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn cv(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn fano_is_rigid_and_violates() {
        let mut vs = Vec::new();
        for x in 1..8i64 {
            vs.push(vec![x & 1, x >> 1 & 1, x >> 2 & 1]);
        }
        let covectors: Vec<Vec<BigRational>> = vs.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect();
        // points of the Fano plane are the same 7 vectors; lines through them
        let f = BaseField::prime(2).unwrap();
        let sets: Vec<Vec<usize>> =
            covectors.iter().map(|p| (0..7).filter(|&i| dot(f, &covectors[i], p).is_zero()).collect()).collect();
        let w = CentralWitness { field: f, r: 3, covectors, sets };
        let rep = dimension_audit(&w).unwrap();
        assert_eq!(rep.dim_xc, 0);
        assert_eq!((rep.lhs, rep.rhs), (7, 6));
        assert!(rep.violates);
    }

    #[test]
    fn one_triple_point() {
        let w = CentralWitness {
            field: BaseField::Rationals,
            r: 3,
            covectors: cv(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, 2, 3]]),
            sets: vec![vec![0, 1, 2]],
        };
        let rep = dimension_audit(&w).unwrap();
        assert_eq!(rep.dim_xc, 1);
        assert_eq!((rep.lhs, rep.rhs), (2, 2));
        assert!(!rep.violates);
    }

    #[test]
    fn bad_witnesses() {
        let extra = CentralWitness {
            field: BaseField::Rationals,
            r: 3,
            covectors: cv(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, -1, 0]]),
            sets: vec![vec![0, 1, 2]],
        };
        assert!(matches!(dimension_audit(&extra), Err(MatroidError::WitnessInvalid(_))));
    }
}
