//! Exact feasibility for {x >= 0 : A x = b} by phase-one simplex with
//! Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A nonnegative solution of A x = b, if one exists.
pub fn nonneg_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    // tableau rows: [A | I | b] with b >= 0; objective minimizes the artificials
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let neg = b[i].is_negative();
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if neg { -a[i][j].clone() } else { a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { BigRational::one() } else { BigRational::zero() });
            }
            row.push(b[i].abs());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of the phase-one objective
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else { break };
        let piv = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        basis[p] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < n {
            x[bi] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Whether some y satisfies A y <= -1 (componentwise) and E y = 0, with
/// y free. Decided through the Farkas alternative: infeasible iff some
/// lambda >= 0 with sum 1 and mu give A^T lambda + E^T mu = 0.
pub fn strictly_feasible(ineq: &[Vec<BigRational>], eq: &[Vec<BigRational>]) -> bool {
    let dim = ineq.first().or(eq.first()).map_or(0, |r| r.len());
    if ineq.is_empty() {
        return true;
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 1);
    for k in 0..dim {
        let mut row: Vec<BigRational> = ineq.iter().map(|r| r[k].clone()).collect();
        for e in eq {
            row.push(e[k].clone());
            row.push(-e[k].clone());
        }
        rows.push(row);
    }
    let mut norm: Vec<BigRational> = vec![BigRational::one(); ineq.len()];
    norm.extend(std::iter::repeat_n(BigRational::zero(), 2 * eq.len()));
    rows.push(norm);
    let mut rhs = vec![BigRational::zero(); dim];
    rhs.push(BigRational::one());
    nonneg_solution(&rows, &rhs).is_none()
}
