use crate::scalar::BaseField;
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Hyperplanes in P^{r-1} over k, given by covectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub field: BaseField,
    pub covectors: Vec<Vec<BigRational>>,
}

impl PointConfiguration {
    pub fn new(field: BaseField, covectors: Vec<Vec<BigRational>>) -> Self {
        let covectors =
            covectors.iter().map(|v| v.iter().map(|x| field.reduce(x).expect("reducible")).collect()).collect();
        PointConfiguration { field, covectors }
    }

    pub fn r(&self) -> usize {
        self.covectors.first().map_or(0, |v| v.len())
    }

    pub fn dot(&self, i: usize, p: &[BigRational]) -> BigRational {
        self.covectors[i].iter().zip(p).fold(BigRational::zero(), |a, (x, y)| self.field.add(&a, &self.field.mul(x, y)))
    }
}

/// Points lying on at least `min_mult` of the hyperplanes, with the
/// hyperplanes through each, in a canonical order.
pub fn multiple_points(c: &PointConfiguration, min_mult: usize) -> Vec<(Vec<BigRational>, Vec<usize>)> {
    let r = c.r();
    let f = c.field;
    let mut found: BTreeMap<Vec<usize>, Vec<BigRational>> = BTreeMap::new();
    for t in (0..c.covectors.len()).combinations(r - 1) {
        let rows: Vec<Vec<BigRational>> = t.iter().map(|&i| c.covectors[i].clone()).collect();
        let ker = f.kernel(&rows, r);
        if ker.len() != 1 {
            continue;
        }
        let p = f.projective_normalize(&ker[0]);
        let on: Vec<usize> = (0..c.covectors.len()).filter(|&i| c.dot(i, &p).is_zero()).collect();
        if on.len() >= min_mult {
            found.entry(on).or_insert(p);
        }
    }
    found.into_iter().map(|(on, p)| (p, on)).collect()
}

fn line_ok(c: &PointConfiguration, pts: &[(Vec<BigRational>, Vec<usize>)], line: usize, present: &[bool]) -> bool {
    let r = c.r();
    let heavy: Vec<&Vec<BigRational>> = pts
        .iter()
        .filter(|(_, on)| on.contains(&line) && on.iter().filter(|&&i| present[i]).count() > r)
        .map(|(p, _)| p)
        .collect();
    c.field.rank_of_vectors(&heavy) == heavy.len()
}

/// For each position, points on that hyperplane of multiplicity greater
/// than r among the hyperplanes up to it are linearly independent.
pub fn is_lax(c: &PointConfiguration, order: &[usize]) -> bool {
    let pts = multiple_points(c, c.r() + 1);
    let mut present = vec![false; c.covectors.len()];
    for &i in order {
        present[i] = true;
        if !line_ok(c, &pts, i, &present) {
            return false;
        }
    }
    true
}

/// A lax order, built from the end: any hyperplane that passes with all
/// remaining ones present can go last, since dropping hyperplanes only
/// lowers multiplicities.
pub fn find_lax_order(c: &PointConfiguration) -> Option<Vec<usize>> {
    let pts = multiple_points(c, c.r() + 1);
    let n = c.covectors.len();
    let mut present = vec![true; n];
    let mut rev = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = (0..n).find(|&i| present[i] && line_ok(c, &pts, i, &present))?;
        present[pick] = false;
        rev.push(pick);
    }
    rev.reverse();
    Some(rev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn lines(v: &[[i64; 3]]) -> PointConfiguration {
        PointConfiguration::new(BaseField::Rationals, v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Lines x = i, y = j, x - y = k, x + y = l through an m by m grid.
    pub(crate) fn grid(m: i64) -> PointConfiguration {
        let mut v = Vec::new();
        for i in 0..m {
            v.push([1, 0, -i]);
            v.push([0, 1, -i]);
        }
        for k in -(m - 1)..m {
            v.push([1, -1, -k]);
        }
        for l in 0..2 * m - 1 {
            v.push([1, 1, -l]);
        }
        lines(&v)
    }

    #[test]
    fn triple_points_only_is_lax() {
        let c = lines(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3]]);
        assert_eq!(multiple_points(&c, 3).len(), 1);
        assert!(is_lax(&c, &[0, 1, 2, 3, 4]));
        assert!(find_lax_order(&c).is_some());
    }

    #[test]
    fn grids() {
        let g = grid(4);
        assert_eq!(g.covectors.len(), 22);
        assert!(multiple_points(&g, 4).len() >= 16);
        assert!(find_lax_order(&g).is_none());
        let order: Vec<usize> = (0..22).collect();
        assert!(!is_lax(&g, &order));
        assert!(find_lax_order(&grid(2)).is_some());
    }
}
