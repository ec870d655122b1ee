use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense square matrix with finite entries, stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<T>>", into = "Vec<Vec<T>>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct RealMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> RealMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![T::one(); n])
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Build from row-major storage. Rejects a length that is not a perfect
    /// square and any non-finite entry.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::NotSquare { rows: n, cols: data.len().checked_div(n).unwrap_or(0) });
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: k / n, col: k % n });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data)
    }

    /// Outer product `v vᵀ`.
    pub fn outer(v: &[T]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j];
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> T {
        // scaled accumulation keeps large entries from overflowing
        let scale = self.max_abs();
        if scale == T::zero() {
            return T::zero();
        }
        let ss: T = self.data.iter().map(|&x| (x / scale) * (x / scale)).sum();
        scale * ss.sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n, "vector length must match matrix dimension");
        (0..self.n).map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum()).collect()
    }

    /// Quadratic form `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        self.mul_vec(v).iter().zip(v).map(|(&a, &b)| a * b).sum()
    }

    pub fn is_symmetric_exact(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `(M + Mᵀ)/2`, symmetric entry-for-entry.
    pub fn symmetrize(&self) -> Self {
        let n = self.n;
        let half = T::lit(0.5);
        let mut s = Self::zeros(n);
        for i in 0..n {
            s[(i, i)] = self[(i, i)];
            for j in 0..i {
                let v = (self[(i, j)] + self[(j, i)]) * half;
                s[(i, j)] = v;
                s[(j, i)] = v;
            }
        }
        s
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for RealMatrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for RealMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Mul for &RealMatrix<T> {
    type Output = RealMatrix<T>;

    fn mul(self, rhs: &RealMatrix<T>) -> RealMatrix<T> {
        assert_eq!(self.n, rhs.n, "matrix product dimension mismatch");
        let n = self.n;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &RealMatrix<T> {
    type Output = RealMatrix<T>;

    fn add(self, rhs: &RealMatrix<T>) -> RealMatrix<T> {
        assert_eq!(self.n, rhs.n, "matrix sum dimension mismatch");
        RealMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect() }
    }
}

impl<T: Scalar> Sub for &RealMatrix<T> {
    type Output = RealMatrix<T>;

    fn sub(self, rhs: &RealMatrix<T>) -> RealMatrix<T> {
        assert_eq!(self.n, rhs.n, "matrix difference dimension mismatch");
        RealMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect() }
    }
}

impl<T: Scalar> TryFrom<Vec<Vec<T>>> for RealMatrix<T> {
    type Error = Error;

    fn try_from(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl<T: Scalar> From<RealMatrix<T>> for Vec<Vec<T>> {
    fn from(m: RealMatrix<T>) -> Self {
        m.to_rows()
    }
}

impl<T: fmt::Debug> fmt::Debug for RealMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_and_non_finite() {
        let ragged = RealMatrix::<f64>::from_rows(&[vec![1.0, 2.0], vec![3.0]]);
        assert!(matches!(ragged, Err(Error::NotSquare { .. })));
        let nan = RealMatrix::from_rows(&[[1.0, f64::NAN], [0.0, 1.0]]);
        assert_eq!(nan, Err(Error::NonFinite { row: 0, col: 1 }));
        assert!(RealMatrix::<f64>::from_row_major(2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn product_and_trace() {
        let a = RealMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let b = RealMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let ab = &a * &b;
        assert_eq!(ab.to_rows(), vec![vec![2.0, 1.0], vec![4.0, 3.0]]);
        assert_eq!(a.trace(), 5.0);
        assert_eq!(a.transpose()[(0, 1)], 3.0);
        assert_eq!(a.quadratic_form(&[1.0, 1.0]), 10.0);
    }

    #[test]
    fn frobenius_survives_huge_entries() {
        let m = RealMatrix::from_diagonal(&[1e200, 1e200]);
        let f = m.frobenius_norm();
        assert!((f / (1e200 * 2f64.sqrt()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_shape_is_nested_rows() {
        let m = RealMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1.0,2.0],[3.0,4.0]]");
        let back: RealMatrix<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<RealMatrix<f64>>("[[1.0],[2.0]]").is_err());
    }
}
