use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The residue field k: the rationals or a prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BaseField {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in k. Elements are BigRational; over F_p they are kept as
/// integers in [0, p).
impl BaseField {
    pub fn prime(p: u64) -> Option<Self> {
        is_prime(p).then_some(BaseField::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::PrimeField(p) => *p,
        }
    }

    /// Image of a rational number in k; None when the denominator is
    /// divisible by p.
    pub fn reduce(&self, a: &BigRational) -> Option<BigRational> {
        match self {
            BaseField::Rationals => Some(a.clone()),
            BaseField::PrimeField(p) => {
                let p = BigInt::from(*p);
                let n = a.numer().mod_floor(&p);
                let d = a.denom().mod_floor(&p);
                if d.is_zero() {
                    return None;
                }
                let di = mod_inverse(&d, &p);
                Some(BigRational::from_integer((n * di).mod_floor(&p)))
            }
        }
    }

    fn norm(&self, a: BigRational) -> BigRational {
        match self {
            BaseField::Rationals => a,
            BaseField::PrimeField(p) => {
                debug_assert!(a.is_integer());
                BigRational::from_integer(a.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.norm(-a)
    }

    pub fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in k");
        match self {
            BaseField::Rationals => a.recip(),
            BaseField::PrimeField(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(&a.to_integer(), &p))
            }
        }
    }

    pub fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.mul(a, &self.inv(b))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, m: &mut [Vec<BigRational>]) -> Vec<usize> {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = self.inv(&m[r][c]);
            for j in c..cols {
                m[r][j] = self.mul(&m[r][j], &inv);
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..cols {
                        let t = self.mul(&f, &m[r][j]);
                        m[i][j] = self.sub(&m[i][j], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, m: &[Vec<BigRational>]) -> usize {
        let mut a = m.to_vec();
        self.rref(&mut a).len()
    }

    /// Rank of a set of vectors.
    pub fn rank_of_vectors(&self, vs: &[&Vec<BigRational>]) -> usize {
        let m: Vec<Vec<BigRational>> = vs.iter().map(|v| (*v).clone()).collect();
        self.rank(&m)
    }

    /// Basis of the right kernel {x : m x = 0}.
    pub fn kernel(&self, m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
        let mut a = m.to_vec();
        let piv = self.rref(&mut a);
        let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); cols];
                x[f] = BigRational::one();
                for (i, &pc) in piv.iter().enumerate() {
                    x[pc] = self.neg(&a[i][f]);
                }
                x
            })
            .collect()
    }

    pub fn det(&self, m: &[Vec<BigRational>]) -> BigRational {
        let n = m.len();
        let mut a = m.to_vec();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigRational::zero() };
            if p != c {
                a.swap(p, c);
                det = self.neg(&det);
            }
            det = self.mul(&det, &a[c][c]);
            let inv = self.inv(&a[c][c]);
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = self.mul(&a[i][c], &inv);
                for j in c..n {
                    let t = self.mul(&f, &a[c][j]);
                    a[i][j] = self.sub(&a[i][j], &t);
                }
            }
        }
        det
    }

    /// Scale so the first nonzero coordinate is 1.
    pub fn projective_normalize(&self, v: &[BigRational]) -> Vec<BigRational> {
        match v.iter().find(|x| !x.is_zero()) {
            None => v.to_vec(),
            Some(l) => {
                let inv = self.inv(l);
                v.iter().map(|x| self.mul(x, &inv)).collect()
            }
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.extended_gcd(p);
    assert!(g.gcd.is_one() || g.gcd == -BigInt::one(), "not invertible mod p");
    let x = if g.gcd.is_negative() { -g.x } else { g.x };
    x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::element::rat;

    #[test]
    fn prime_field_inverse() {
        let f = BaseField::PrimeField(7);
        for a in 1..7 {
            let x = rat(a);
            assert_eq!(f.mul(&x, &f.inv(&x)), rat(1));
        }
        assert_eq!(f.reduce(&(rat(1) / rat(2))), Some(rat(4)));
        assert_eq!(BaseField::PrimeField(2).reduce(&(rat(1) / rat(2))), None);
    }

    #[test]
    fn kernel_and_rank() {
        let q = BaseField::Rationals;
        let m = vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(1)]];
        assert_eq!(q.rank(&m), 2);
        let k = q.kernel(&m, 3);
        assert_eq!(k.len(), 1);
        let f2 = BaseField::PrimeField(2);
        let m2 = vec![vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(1)], vec![rat(1), rat(0), rat(1)]];
        assert_eq!(f2.rank(&m2), 2);
        assert_eq!(q.rank(&m2), 3);
    }
}
