//! Exact arithmetic in K = k(z) with z-adic valuations, and dense linear
//! algebra over K and over the residue field k.

mod element;
mod field;
mod matrix;
mod parse;
mod poly;

pub use element::{ScalarK, Val};
pub use field::{is_prime, BaseField};
pub use matrix::{MatrixK, VectorK};
pub use parse::ParseScalarError;
pub use poly::Poly;

pub(crate) use element::rat;

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch")]
    DimensionMismatch,
}

pub fn val(s: &ScalarK) -> Val {
    s.val()
}

pub fn series_expand(s: &ScalarK, prec: usize) -> Vec<(i64, BigRational)> {
    s.series_expand(prec)
}

pub fn solve_linear(a: &MatrixK, b: &[ScalarK]) -> Result<VectorK, ScalarError> {
    a.solve(b)
}

pub fn det(a: &MatrixK) -> Result<ScalarK, ScalarError> {
    a.det()
}

pub fn rank(a: &MatrixK) -> usize {
    a.rank()
}

/// Parse a vector of scalar strings.
pub fn parse_vector<S: AsRef<str>>(v: &[S]) -> Result<VectorK, ParseScalarError> {
    v.iter().map(|s| s.as_ref().parse()).collect()
}

/// Minimum valuation over the entries of a vector.
pub fn min_val(v: &[ScalarK]) -> Val {
    v.iter().map(|x| x.val()).min().unwrap_or(Val::Inf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[&str]) -> VectorK {
        parse_vector(xs).unwrap()
    }

    fn example_columns() -> Vec<VectorK> {
        vec![v(&["1", "0", "0"]), v(&["0", "1", "0"]), v(&["0", "0", "1"]), v(&["1", "1", "1"]), v(&["z^-1", "1", "1"])]
    }

    #[test]
    fn solve_expresses_f5() {
        let f = example_columns();
        let a = MatrixK::from_columns(&f[0..3]);
        assert_eq!(solve_linear(&a, &f[4]).unwrap(), v(&["z^-1", "1", "1"]));
        let b = MatrixK::from_columns(&[f[1].clone(), f[2].clone(), f[3].clone()]);
        let x = solve_linear(&b, &f[4]).unwrap();
        assert_eq!(x, v(&["1 - z^-1", "1 - z^-1", "z^-1"]));
        assert_eq!(b.mul_vec(&x), f[4]);
    }

    #[test]
    fn solve_identity() {
        let b = v(&["(1)/(1+z)", "z^3", "-2"]);
        assert_eq!(solve_linear(&MatrixK::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn singular_solve_errors() {
        let f = example_columns();
        let a = MatrixK::from_columns(&[f[0].clone(), f[3].clone(), f[4].clone()]);
        assert_eq!(solve_linear(&a, &f[1]), Err(ScalarError::SingularMatrix));
    }

    #[test]
    fn determinants_and_rank() {
        let f = example_columns();
        let a = MatrixK::from_columns(&[f[0].clone(), f[3].clone(), f[4].clone()]);
        assert!(det(&a).unwrap().is_zero());
        assert!(det(&MatrixK::identity(3)).unwrap().is_one());
        assert_eq!(rank(&MatrixK::from_columns(&f)), 3);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn det_with_rational_entries() {
        let a = MatrixK::from_rows(vec![v(&["(1)/(1 - z)", "z"]), v(&["1", "(z^-1)/(1 + z)"])]);
        let expect = "(1)/(1 - z)".parse::<ScalarK>().unwrap() * "(z^-1)/(1 + z)".parse::<ScalarK>().unwrap()
            - "z".parse::<ScalarK>().unwrap();
        assert_eq!(det(&a).unwrap(), expect);
    }
}
