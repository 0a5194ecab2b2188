//! Integer matrices: Smith invariants, rank, saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: IntMatrix = m.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let row = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(row) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_invariants(m).len()
}

/// Whether the row lattice equals its saturation (all invariants are 1).
pub fn is_saturated(m: &IntMatrix) -> bool {
    smith_invariants(m).iter().all(|d| d.is_one())
}

/// Product of the invariant factors: the index of the row lattice in
/// its saturation.
pub fn saturation_index(m: &IntMatrix) -> BigInt {
    smith_invariants(m).iter().fold(BigInt::one(), |a, d| a * d)
}

/// Row echelon basis of the row lattice: leading entries positive and
/// strictly increasing in column.
pub fn hnf_basis(m: &IntMatrix) -> IntMatrix {
    let mut a: IntMatrix = m.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if a.is_empty() {
        return a;
    }
    let cols = a[0].len();
    let mut out = Vec::new();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = a[i][c].div_floor(&a[p][c]);
                    let prow = a[p].clone();
                    for (x, y) in a[i].iter_mut().zip(prow) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..a.len()).find(|&i| !a[i][c].is_zero()) {
            let mut row = a.swap_remove(i);
            if row[c].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push(row);
        }
        a.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    out
}

/// Integer coordinates of v in an echelon basis, if v is in the lattice.
pub fn coords_in(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: Vec<BigInt> = v.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for row in basis {
        let c = row.iter().position(|x| !x.is_zero())?;
        let (q, r) = rest[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= &q * y;
        }
        out.push(q);
    }
    if rest.iter().all(|x| x.is_zero()) {
        Some(out)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_smith_forms() {
        let m = from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_invariants(&m), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = from_i64(&[vec![1, -1, 0], vec![0, 1, -1]]);
        assert!(is_saturated(&s));
        let t = from_i64(&[vec![1, 1, 0], vec![1, -1, 0]]);
        assert_eq!(saturation_index(&t), BigInt::from(2));
        assert_eq!(rank(&from_i64(&[vec![1, 2], vec![2, 4]])), 1);
        let b = hnf_basis(&from_i64(&[vec![2, 4, 0], vec![3, 1, 1], vec![5, 5, 1]]));
        assert_eq!(b.len(), 2);
        let v = from_i64(&[vec![8, 6, 2]]).remove(0);
        let c = coords_in(&b, &v).unwrap();
        let back: Vec<BigInt> = (0..3).map(|j| b.iter().zip(&c).map(|(r, x)| &r[j] * x).sum()).collect();
        assert_eq!(back, v);
        assert!(coords_in(&b, &from_i64(&[vec![1, 0, 0]]).remove(0)).is_none());
    }
}
