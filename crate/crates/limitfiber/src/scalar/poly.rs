use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Dense univariate polynomial over Q, coefficients stored low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![BigRational::one()] }
    }

    pub fn constant(a: BigRational) -> Self {
        Self::from_coeffs(vec![a])
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.c.last()
    }

    /// Number of leading zero coefficients, i.e. the z-adic order.
    pub fn low_order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    /// Divide by z^k; caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly { c: self.c[k.min(self.c.len())..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x * a).collect() }
    }

    pub fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Poly) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => c.push(a + b),
                (Some(a), None) => c.push(a.clone()),
                (None, Some(b)) => c.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        if d.is_constant() {
            let inv = d.c[0].recip();
            return (self.scale(&inv), Poly::zero());
        }
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = d.c[dd].recip();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &lead_inv;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] -= &t * dc;
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact quotient; the caller asserts divisibility.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            if b.is_constant() {
                return Poly::one();
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Replace z by z^m.
    pub fn inflate(&self, m: usize) -> Poly {
        if m == 1 || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = vec![BigRational::zero(); (self.c.len() - 1) * m + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[i * m] = a.clone();
        }
        Poly { c }
    }

    pub fn cmp_coeffs(&self, o: &Poly) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| {
            for (a, b) in self.c.iter().zip(o.c.iter()) {
                let ord = a.cmp(b);
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }

    pub fn has_negative_lead(&self) -> bool {
        self.lead().is_some_and(|l| l.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(v: &[i64]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, -3, 2, 5]);
        let d = p(&[2, 1, 1]);
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p(&[-1, 1]);
        let a = f.mul(&p(&[1, 1]));
        let b = f.mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn inflate_substitutes() {
        assert_eq!(p(&[1, 2]).inflate(3), p(&[1, 0, 0, 2]));
    }
}
