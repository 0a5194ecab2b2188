use super::MatroidError;
use crate::scalar::{MatrixK, ScalarK, Val, VectorK};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Value at z = 0 of a cross-ratio, in k ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossRatioLimit {
    Finite(BigRational),
    Infinity,
}

impl CrossRatioLimit {
    /// 0, 1 or ∞: the face Δ(2,4) of the decomposition is broken.
    pub fn is_degenerate(&self) -> bool {
        match self {
            CrossRatioLimit::Infinity => true,
            CrossRatioLimit::Finite(x) => x.is_zero() || x.is_one(),
        }
    }
}

impl fmt::Display for CrossRatioLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatioLimit::Finite(x) => write!(f, "{x}"),
            CrossRatioLimit::Infinity => write!(f, "inf"),
        }
    }
}

fn minor(vs: &[VectorK], a: usize, b: usize, w: &[usize]) -> Result<ScalarK, MatroidError> {
    let mut cols = vec![vs[a].clone(), vs[b].clone()];
    cols.extend(w.iter().map(|&i| vs[i].clone()));
    Ok(MatrixK::from_columns(&cols).det()?)
}

fn parts(vs: &[VectorK], v: [usize; 4], w: &[usize]) -> Result<(ScalarK, ScalarK), MatroidError> {
    let r = vs.first().map_or(0, |x| x.len());
    let mut w: Vec<usize> = w.to_vec();
    w.sort_unstable();
    if w.len() + 2 != r || w.iter().any(|i| v.contains(i)) || v.iter().chain(&w).any(|&i| i >= vs.len()) {
        return Err(MatroidError::Invalid("cross-ratio needs 4 indices and r-2 others, disjoint".into()));
    }
    let [i1, i2, i3, i4] = v;
    let num = &minor(vs, i1, i2, &w)? * &minor(vs, i3, i4, &w)?;
    let den = &minor(vs, i1, i3, &w)? * &minor(vs, i2, i4, &w)?;
    Ok((num, den))
}

/// Det(i1 i2 W) Det(i3 i4 W) / (Det(i1 i3 W) Det(i2 i4 W)).
pub fn cross_ratio(vs: &[VectorK], v: [usize; 4], w: &[usize]) -> Result<ScalarK, MatroidError> {
    let (num, den) = parts(vs, v, w)?;
    if den.is_zero() {
        return Err(MatroidError::IndeterminateCR);
    }
    Ok(&num / &den)
}

pub fn cross_ratio_limit(vs: &[VectorK], v: [usize; 4], w: &[usize]) -> Result<CrossRatioLimit, MatroidError> {
    let (num, den) = parts(vs, v, w)?;
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Err(MatroidError::IndeterminateCR),
        (true, false) => Ok(CrossRatioLimit::Finite(BigRational::zero())),
        (false, true) => Ok(CrossRatioLimit::Infinity),
        _ => {
            let x = &num / &den;
            Ok(match x.val() {
                Val::Fin(e) if e > 0 => CrossRatioLimit::Finite(BigRational::zero()),
                Val::Fin(0) => CrossRatioLimit::Finite(x.lead_coeff()),
                _ => CrossRatioLimit::Infinity,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_vector, rat};

    fn vs(rows: &[&[&str]]) -> Vec<VectorK> {
        rows.iter().map(|r| parse_vector(r).unwrap()).collect()
    }

    #[test]
    fn four_points_on_a_line() {
        let p = vs(&[&["1", "0"], &["0", "1"], &["1", "1"], &["1", "5"]]);
        assert_eq!(cross_ratio(&p, [0, 1, 2, 3], &[]).unwrap(), ScalarK::from_int(-4));
        let q = vs(&[&["1", "0"], &["0", "1"], &["1", "1"], &["1", "z"]]);
        assert_eq!(cross_ratio(&q, [0, 1, 2, 3], &[]).unwrap(), "1-z".parse().unwrap());
        let lim = cross_ratio_limit(&q, [0, 1, 2, 3], &[]).unwrap();
        assert_eq!(lim, CrossRatioLimit::Finite(rat(1)));
        assert!(lim.is_degenerate());
        assert!(!cross_ratio_limit(&p, [0, 1, 2, 3], &[]).unwrap().is_degenerate());
    }

    #[test]
    fn rescaling_a_column_is_harmless() {
        let p = vs(&[&["1", "0", "2"], &["0", "1", "z"], &["1", "1", "1"], &["1", "3", "z^-1"], &["2", "1", "0"]]);
        let mut q = p.clone();
        q[3] = q[3].iter().map(|x| x * &ScalarK::from_terms(&[(1, rat(7))])).collect();
        assert_eq!(cross_ratio(&p, [0, 1, 3, 4], &[2]).unwrap(), cross_ratio(&q, [0, 1, 3, 4], &[2]).unwrap());
    }

    #[test]
    fn example_face_is_broken() {
        let f = vs(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["1", "1", "1"], &["z^-1", "1", "1"]]);
        let lim = cross_ratio_limit(&f, [1, 2, 3, 4], &[0]).unwrap();
        assert!(lim.is_degenerate());
    }
}
