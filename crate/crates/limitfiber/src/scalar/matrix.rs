use super::element::ScalarK;
use super::poly::Poly;
use super::ScalarError;
use std::fmt;

pub type VectorK = Vec<ScalarK>;

/// Dense row-major matrix over K.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixK {
    rows: usize,
    cols: usize,
    data: Vec<ScalarK>,
}

impl MatrixK {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixK { rows, cols, data: vec![ScalarK::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ScalarK::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ScalarK>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        MatrixK { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[VectorK]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), r, "ragged columns");
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarK {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ScalarK) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<ScalarK> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> VectorK {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<VectorK> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &MatrixK) -> MatrixK {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = ScalarK::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[ScalarK]) -> VectorK {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = ScalarK::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> MatrixK {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Substitute z -> z^m in every entry.
    pub fn inflate(&self, m: usize) -> MatrixK {
        MatrixK { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.inflate(m)).collect() }
    }

    /// Rows scaled to polynomials in z, with the scaling factors.
    fn to_poly_rows(&self) -> (Vec<Vec<Poly>>, Vec<ScalarK>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut factors = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut min_shift = i64::MAX;
            let mut l = Poly::one();
            for x in row.iter().filter(|x| !x.is_zero()) {
                let (s, _, d) = x.numerator_parts();
                min_shift = min_shift.min(s);
                if !d.is_one() {
                    let g = l.gcd(d);
                    l = l.mul(&d.div_exact(&g));
                }
            }
            if min_shift == i64::MAX {
                min_shift = 0;
            }
            let f = ScalarK::from_parts(-min_shift, l.clone(), Poly::one());
            let prow = row
                .iter()
                .map(|x| {
                    if x.is_zero() {
                        return Poly::zero();
                    }
                    let (s, n, d) = x.numerator_parts();
                    let q = l.div_exact(d);
                    n.mul(&q).shift_up((s - min_shift) as usize)
                })
                .collect();
            out.push(prow);
            factors.push(f);
        }
        (out, factors)
    }

    /// Determinant by fraction-free (Bareiss) elimination over k[z].
    pub fn det(&self) -> Result<ScalarK, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ScalarK::one());
        }
        let (mut a, factors) = self.to_poly_rows();
        let mut prev = Poly::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return Ok(ScalarK::zero()) };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.div_exact(&prev);
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let mut d = ScalarK::from_parts(0, a[n - 1][n - 1].clone(), Poly::one());
        for f in &factors {
            d = d / f;
        }
        Ok(if negate { -d } else { d })
    }

    /// Rank by fraction-free elimination with full pivoting.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.to_poly_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut colmap: Vec<usize> = (0..cols).collect();
        let mut prev = Poly::one();
        let mut k = 0;
        while k < rows.min(cols) {
            let found = (k..rows).find_map(|i| (k..cols).find(|&j| !a[i][colmap[j]].is_zero()).map(|j| (i, j)));
            let Some((pi, pj)) = found else { break };
            a.swap(pi, k);
            colmap.swap(pj, k);
            let ck = colmap[k];
            for i in k + 1..rows {
                for jj in k + 1..cols {
                    let j = colmap[jj];
                    let t = a[k][ck].mul(&a[i][j]).sub(&a[i][ck].mul(&a[k][j]));
                    a[i][j] = t.div_exact(&prev);
                }
                a[i][ck] = Poly::zero();
            }
            prev = a[k][ck].clone();
            k += 1;
        }
        k
    }

    /// Solve A x = b for square nonsingular A.
    pub fn solve(&self, b: &[ScalarK]) -> Result<VectorK, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if b.len() != self.rows {
            return Err(ScalarError::DimensionMismatch);
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let (mut a, _) = aug.to_poly_rows();
        let mut prev = Poly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return Err(ScalarError::SingularMatrix) };
            a.swap(p, k);
            for i in k + 1..n {
                for j in k + 1..=n {
                    let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.div_exact(&prev);
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = vec![ScalarK::zero(); n];
        for i in (0..n).rev() {
            let mut acc = ScalarK::from_parts(0, a[i][n].clone(), Poly::one());
            for j in i + 1..n {
                if !a[i][j].is_zero() && !x[j].is_zero() {
                    acc = acc - ScalarK::from_parts(0, a[i][j].clone(), Poly::one()) * &x[j];
                }
            }
            x[i] = acc / ScalarK::from_parts(0, a[i][i].clone(), Poly::one());
        }
        Ok(x)
    }

    /// Inverse via column-wise solves.
    pub fn inverse(&self) -> Result<MatrixK, ScalarError> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![ScalarK::zero(); n];
            e[j] = ScalarK::one();
            cols.push(self.solve(&e)?);
        }
        Ok(MatrixK::from_columns(&cols))
    }
}

impl fmt::Display for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
