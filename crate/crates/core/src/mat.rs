//! Dense exact matrices over a [`Scalar`] field.
//!
//! Nothing here is tuned for big numerics; the sizes in this crate top out
//! at a few hundred rows and everything is computed by fraction-exact
//! Gauss-Jordan elimination.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn column(v: &[T]) -> Self {
        Mat {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-T::one())))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b.clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out[(i * other.rows + p, j * other.cols + q)] =
                            self[(i, j)].clone() * other[(p, q)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    /// If the matrix is a scalar multiple of the identity, return the scalar.
    pub fn scalar_of_identity(&self) -> Option<T> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let s = self[(0, 0)].clone();
        if *self == Mat::identity(self.rows).scale(&s) {
            Some(s)
        } else {
            None
        }
    }

    /// If `self == c * other` for a scalar `c` (with `other != 0`), return `c`.
    pub fn proportionality(&self, other: &Self) -> Option<T> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let k = other.data.iter().position(|x| !x.is_zero())?;
        let c = self.data[k].clone() / other.data[k].clone();
        if *self == other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = T::one() / self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let sub = f.clone() * self[(r, j)].clone();
                        self[(i, j)] = self[(i, j)].clone() - sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space. Each vector is scaled so its first
    /// nonzero entry is one, which makes the output deterministic.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_row = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            pivot_row[c] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for c in 0..self.cols {
                if let Some(row) = pivot_row[c] {
                    v[c] = -m[(row, free)].clone();
                }
            }
            normalize_first_nonzero(&mut v);
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det = det * m[(c, c)].clone();
            let inv = T::one() / m[(c, c)].clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let sub = f.clone() * m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - sub;
                }
            }
        }
        det
    }

    /// Stack columns of `mats` side by side.
    pub fn hcat(mats: &[Self]) -> Self {
        let rows = mats[0].rows;
        let cols = mats.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for m in mats {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out[(i, off + j)] = m[(i, j)].clone();
                }
            }
            off += m.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Scale a vector so its first nonzero entry is one.
pub fn normalize_first_nonzero<T: Scalar>(v: &mut [T]) {
    if let Some(k) = v.iter().position(|x| !x.is_zero()) {
        let inv = T::one() / v[k].clone();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
    }
}

/// Rank of the column span of a set of vectors.
pub fn span_rank<T: Scalar>(vectors: &[Vec<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Mat::from_rows(vectors.to_vec());
    m.rank()
}

/// True when `v` lies in the span of `basis`.
pub fn in_span<T: Scalar>(v: &[T], basis: &[Vec<T>]) -> bool {
    let r = span_rank(basis);
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(&all) == r
}

/// True when the two families span the same subspace.
pub fn same_span<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    ra == rb && span_rank(&all) == ra
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
