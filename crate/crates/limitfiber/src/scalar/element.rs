use super::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// z-adic valuation: a finite integer or +infinity (for zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Fin(i64),
    Inf,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Val::Inf)
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::Inf => write!(f, "inf"),
        }
    }
}

/// Element of k(z), k = Q, stored as z^shift * num / den with
/// num(0) != 0, den(0) != 0, gcd(num, den) = 1 and den monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarK {
    shift: i64,
    num: Poly,
    den: Poly,
}

pub(crate) fn rat(a: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

impl ScalarK {
    pub fn zero() -> Self {
        ScalarK { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_rational(rat(a))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self::monomial(a, 0)
    }

    /// c * z^e.
    pub fn monomial(c: BigRational, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarK { shift: e, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn z_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    /// Laurent polynomial from (exponent, coefficient) terms.
    pub fn from_terms(terms: &[(i64, BigRational)]) -> Self {
        let lo = match terms.iter().filter(|t| !t.1.is_zero()).map(|t| t.0).min() {
            Some(lo) => lo,
            None => return Self::zero(),
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, a) in terms {
            if *e >= lo {
                c[(e - lo) as usize] += a;
            }
        }
        Self::from_parts(lo, Poly::from_coeffs(c), Poly::one())
    }

    /// z^shift * num / den, canonicalized.
    pub fn from_parts(shift: i64, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let mut shift = shift;
        let a = num.low_order().unwrap();
        let b = den.low_order().unwrap();
        let mut num = if a > 0 { num.shift_down(a) } else { num };
        let mut den = if b > 0 { den.shift_down(b) } else { den };
        shift += a as i64 - b as i64;
        if !den.is_constant() && !num.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let l = den.lead().unwrap().clone();
        if !l.is_one() {
            let li = l.recip();
            num = num.scale(&li);
            den = den.scale(&li);
        }
        ScalarK { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is c * z^e.
    pub fn is_monomial(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// True when the denominator is a power of z.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Constant in k (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.shift == 0 && self.is_monomial())
    }

    pub fn val(&self) -> Val {
        if self.is_zero() {
            Val::Inf
        } else {
            Val::Fin(self.shift)
        }
    }

    /// Coefficient of z^val; zero for zero.
    pub fn lead_coeff(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        self.num.coeff(0) / self.den.coeff(0)
    }

    /// Value at z = 0 of an element of R; None if val < 0.
    pub fn residue_at_zero(&self) -> Option<BigRational> {
        match self.val() {
            Val::Inf => Some(BigRational::zero()),
            Val::Fin(v) if v > 0 => Some(BigRational::zero()),
            Val::Fin(0) => Some(self.lead_coeff()),
            _ => None,
        }
    }

    pub fn numerator_parts(&self) -> (i64, &Poly, &Poly) {
        (self.shift, &self.num, &self.den)
    }

    /// Multiply by z^e.
    pub fn shifted(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ScalarK { shift: self.shift + e, num: self.num.clone(), den: self.den.clone() }
    }

    /// Unit part u with self = z^val * u, u(0) != 0.
    pub fn unit_part(&self) -> Self {
        self.shifted(-self.shift)
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        if a.is_zero() || self.is_zero() {
            return Self::zero();
        }
        ScalarK { shift: self.shift, num: self.num.scale(a), den: self.den.clone() }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::from_parts(-self.shift, self.den.clone(), self.num.clone())
    }

    /// Power series coefficients of num/den from z^0 up to z^(prec-1).
    fn unit_series(&self, prec: usize) -> Vec<BigRational> {
        let d0inv = self.den.coeff(0).recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut t = self.num.coeff(k);
            let dl = self.den.coeffs().len();
            for j in 1..=k.min(dl.saturating_sub(1)) {
                t -= self.den.coeff(j) * &q[k - j];
            }
            q.push(t * &d0inv);
        }
        q
    }

    /// Laurent terms c_a z^a for val <= a < val + prec.
    pub fn series_expand(&self, prec: usize) -> Vec<(i64, BigRational)> {
        if self.is_zero() {
            return Vec::new();
        }
        self.unit_series(prec)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c))
            .collect()
    }

    /// Laurent polynomial of all terms with exponent < e.
    pub fn truncate_below(&self, e: i64) -> Self {
        if self.is_zero() || self.shift >= e {
            return Self::zero();
        }
        if self.den.is_one() {
            let keep = (e - self.shift) as usize;
            let c: Vec<BigRational> = self.num.coeffs().iter().take(keep).cloned().collect();
            return Self::from_parts(self.shift, Poly::from_coeffs(c), Poly::one());
        }
        let terms = self.series_expand((e - self.shift) as usize);
        Self::from_terms(&terms)
    }

    /// Substitute z -> z^m.
    pub fn inflate(&self, m: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ScalarK { shift: self.shift * m as i64, num: self.num.inflate(m), den: self.den.inflate(m) }
    }

    /// Evaluate at a nonzero rational point, when defined.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        let zp = pow_rat(x, self.shift);
        Some(zp * self.num.eval(x) / d)
    }

    fn add_ref(&self, o: &ScalarK) -> ScalarK {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - m) as usize);
        let b = o.num.shift_up((o.shift - m) as usize);
        if self.den == o.den {
            return Self::from_parts(m, a.add(&b), self.den.clone());
        }
        let num = a.mul(&o.den).add(&b.mul(&self.den));
        Self::from_parts(m, num, self.den.mul(&o.den))
    }

    fn mul_ref(&self, o: &ScalarK) -> ScalarK {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + o.shift;
        if self.den.is_one() && o.den.is_one() {
            return ScalarK { shift, num: self.num.mul(&o.num), den: Poly::one() };
        }
        if self.is_monomial() {
            return ScalarK { shift, num: o.num.scale(&self.num.coeff(0)), den: o.den.clone() };
        }
        if o.is_monomial() {
            return ScalarK { shift, num: self.num.scale(&o.num.coeff(0)), den: self.den.clone() };
        }
        Self::from_parts(shift, self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// Ordering key used for canonical matrices: larger valuation first,
    /// then coefficients.
    fn order_key_cmp(&self, o: &Self) -> Ordering {
        o.val().cmp(&self.val()).then_with(|| self.num.cmp_coeffs(&o.num)).then_with(|| self.den.cmp_coeffs(&o.den))
    }
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl PartialOrd for ScalarK {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for ScalarK {
    fn cmp(&self, o: &Self) -> Ordering {
        self.order_key_cmp(o)
    }
}

impl Default for ScalarK {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&ScalarK> for &ScalarK {
            type Output = ScalarK;
            fn $f(self, o: &ScalarK) -> ScalarK {
                $body(self, o)
            }
        }
        impl $tr<ScalarK> for ScalarK {
            type Output = ScalarK;
            fn $f(self, o: ScalarK) -> ScalarK {
                $body(&self, &o)
            }
        }
        impl $tr<&ScalarK> for ScalarK {
            type Output = ScalarK;
            fn $f(self, o: &ScalarK) -> ScalarK {
                $body(&self, o)
            }
        }
        impl $tr<ScalarK> for &ScalarK {
            type Output = ScalarK;
            fn $f(self, o: ScalarK) -> ScalarK {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &ScalarK, b: &ScalarK| a.add_ref(b));
binop!(Sub, sub, |a: &ScalarK, b: &ScalarK| a.add_ref(&-b));
binop!(Mul, mul, |a: &ScalarK, b: &ScalarK| a.mul_ref(b));
binop!(Div, div, |a: &ScalarK, b: &ScalarK| a.mul_ref(&b.inv()));

impl Neg for &ScalarK {
    type Output = ScalarK;
    fn neg(self) -> ScalarK {
        ScalarK { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for ScalarK {
    type Output = ScalarK;
    fn neg(self) -> ScalarK {
        -&self
    }
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes a signed sum of terms in ascending exponent order.
fn fmt_terms(terms: &[(i64, BigRational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let body = match (*e, a.is_one()) {
            (0, _) => fmt_rat(&a),
            (1, true) => "z".to_string(),
            (e, true) => format!("z^{e}"),
            (1, false) => format!("{}*z", fmt_rat(&a)),
            (e, false) => format!("{}*z^{e}", fmt_rat(&a)),
        };
        s.push_str(&body);
    }
    s
}

fn poly_terms(p: &Poly, shift: i64) -> Vec<(i64, BigRational)> {
    p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64 + shift, c.clone())).collect()
}

impl fmt::Display for ScalarK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_terms(&poly_terms(&self.num, self.shift));
        if self.den.is_one() {
            write!(f, "{num}")
        } else {
            let den = fmt_terms(&poly_terms(&self.den, 0));
            write!(f, "({num})/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarK {
        x.parse().unwrap()
    }

    #[test]
    fn val_of_rewritten_sum() {
        assert_eq!(s("(1 + z)/(z)").val(), Val::Fin(-1));
        assert_eq!(ScalarK::zero().val(), Val::Inf);
        assert_eq!(s("(z^2 - z^3)/(1 - z)").val(), Val::Fin(2));
        assert_eq!(s("(z^2 - z^3)/(1 - z)"), s("z^2"));
    }

    #[test]
    fn series_examples() {
        let g = s("(1)/(1 - z)").series_expand(3);
        assert_eq!(g, vec![(0, rat(1)), (1, rat(1)), (2, rat(1))]);
        assert_eq!(s("z^-1").series_expand(2), vec![(-1, rat(1))]);
        assert_eq!(s("1 - z^-1").series_expand(2), vec![(-1, rat(-1)), (0, rat(1))]);
    }

    #[test]
    fn display_roundtrip() {
        for t in ["z^-1 + 1", "2*z^3 - 1/2", "(1 - z)/(1 + z)", "0", "-z", "(z^-2)/(1 + 3*z^2)"] {
            let a = s(t);
            assert_eq!(s(&a.to_string()), a, "{t}");
        }
    }

    #[test]
    fn truncation() {
        let a = s("(1)/(1 - z)");
        assert_eq!(a.truncate_below(3), s("1 + z + z^2"));
        assert_eq!(s("z^-2 + 3 + z^5").truncate_below(0), s("z^-2"));
    }
}
