use super::{theta_limit_lattice, theta_limit_vector, BuildingSimplex, Lattice, LatticeClass};
use crate::scalar::{BaseField, ScalarK};
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

/// A k-subspace of Λ/zΛ, held as rref rows in Λ's canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSubspace {
    pub ambient: LatticeClass,
    basis: Vec<Vec<BigRational>>,
}

impl ResidueSubspace {
    pub fn new(ambient: LatticeClass, vectors: Vec<Vec<BigRational>>) -> Self {
        let mut basis = vectors;
        let piv = BaseField::Rationals.rref(&mut basis);
        basis.truncate(piv.len());
        ResidueSubspace { ambient, basis }
    }

    pub fn full(ambient: LatticeClass) -> Self {
        let r = ambient.rank();
        let rows = (0..r)
            .map(|i| {
                (0..r).map(|j| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }).collect()
            })
            .collect();
        ResidueSubspace { ambient, basis: rows }
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn sum(&self, other: &ResidueSubspace) -> ResidueSubspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        ResidueSubspace::new(self.ambient.clone(), v)
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        BaseField::Rationals.rank(&m) == self.dim()
    }

    pub fn contains(&self, other: &ResidueSubspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn intersection(&self, other: &ResidueSubspace) -> ResidueSubspace {
        // kernel of [A^T | -B^T] gives the common vectors
        let r = self.ambient.rank();
        let (a, b) = (self.dim(), other.dim());
        let m: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|row| row[i].clone())
                    .chain(other.basis.iter().map(|row| -row[i].clone()))
                    .collect()
            })
            .collect();
        let ker = BaseField::Rationals.kernel(&m, a + b);
        let vecs = ker
            .iter()
            .map(|x| {
                (0..r).map(|i| (0..a).fold(BigRational::zero(), |acc, k| acc + &x[k] * &self.basis[k][i])).collect()
            })
            .collect();
        ResidueSubspace::new(self.ambient.clone(), vecs)
    }
}

impl fmt::Display for ResidueSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

fn images(l: &Lattice, vs: &[Vec<ScalarK>]) -> Vec<Vec<BigRational>> {
    vs.iter()
        .map(|v| l.coords(v).iter().map(|x| x.residue_at_zero().expect("vector lies in the lattice")).collect())
        .collect()
}

/// Image of M^Λ in Λ/zΛ.
pub fn residue(lambda: &LatticeClass, m: &Lattice) -> ResidueSubspace {
    let (_, scaled) = theta_limit_lattice(lambda.rep(), m);
    ResidueSubspace::new(lambda.clone(), images(lambda.rep(), scaled.columns()))
}

/// Line spanned by the image of v^Λ in Λ/zΛ.
pub fn residue_of_vector(lambda: &LatticeClass, v: &[ScalarK]) -> ResidueSubspace {
    let (_, w) = theta_limit_vector(lambda.rep(), v);
    ResidueSubspace::new(lambda.clone(), images(lambda.rep(), &[w]))
}

/// Where a class lands in the star of a simplex: the image of
/// N^{M_m} + M_i in M_m/zM_m, which lies between the images of M_i and
/// M_{i+1}, for the largest i with N^{M_m} not inside M_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarResidue {
    pub class: LatticeClass,
    /// 1-based index of the quotient M_{i+1}/M_i.
    pub quotient: usize,
    pub subspace: ResidueSubspace,
}

pub fn star_residues(sigma: &BuildingSimplex, ys: &[LatticeClass]) -> Vec<StarResidue> {
    let flag = sigma.flag();
    let top = sigma.top();
    let top_class = top.class();
    let shift = top.diag_exponents().iter().min().copied().unwrap_or(0);
    // work in the canonical representative of the top class
    let canon: Vec<Lattice> = flag.iter().map(|l| l.scaled(-shift)).collect();
    let tc = canon.last().unwrap();
    ys.iter()
        .map(|y| {
            let (_, n) = theta_limit_lattice(tc, y.rep());
            let i = (0..canon.len() - 1).rev().find(|&i| !canon[i].contains(&n)).unwrap_or(0);
            let sum = n.sum(&canon[i]);
            StarResidue {
                class: y.clone(),
                quotient: i + 1,
                subspace: ResidueSubspace::new(top_class.clone(), images(tc, sum.columns())),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{lattice_from_generators, simplex_of};
    use crate::scalar::{parse_vector, rat};

    fn v(xs: &[&str]) -> Vec<ScalarK> {
        parse_vector(xs).unwrap()
    }

    fn m2() -> LatticeClass {
        lattice_from_generators(3, &[v(&["z^-1", "0", "0"]), v(&["0", "1", "0"]), v(&["0", "0", "1"])]).unwrap()
    }

    #[test]
    fn residue_examples() {
        let m1 = LatticeClass::standard(3);
        let r = residue(&m1, m2().rep());
        assert_eq!(r.basis(), &[vec![rat(1), rat(0), rat(0)]]);
        let full = residue(&m1, m1.rep());
        assert_eq!(full, ResidueSubspace::full(m1.clone()));
        let l = residue_of_vector(&m2(), &v(&["1", "1", "1"]));
        assert_eq!(l.basis(), &[vec![rat(0), rat(1), rat(1)]]);
    }

    #[test]
    fn subspace_ops() {
        let a = LatticeClass::standard(3);
        let x = ResidueSubspace::new(a.clone(), vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]]);
        let y = ResidueSubspace::new(a.clone(), vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]);
        let i = x.intersection(&y);
        assert_eq!(i.basis(), &[vec![rat(1), rat(1), rat(0)]]);
        assert_eq!(x.sum(&y).dim(), 3);
        assert!(x.contains(&i));
    }

    #[test]
    fn star_of_edge() {
        let m1 = LatticeClass::standard(3);
        let s = simplex_of(&[m1.clone(), m2()]).unwrap();
        let res = star_residues(&s, &[m1.clone(), m2()]);
        // M_1 sits between zM_2 and M_2 with image <e2, e3> in M_2/zM_2
        assert_eq!(res[0].quotient, 1);
        assert_eq!(res[0].subspace.dim(), 2);
        assert_eq!(res[1].quotient, 2);
        assert_eq!(res[1].subspace.dim(), 3);
    }
}
