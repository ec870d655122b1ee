use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// LU factorisation `PA = LU` of a dense row-major `m × m` matrix.
#[derive(Debug, Clone)]
pub struct LuDecomposition<T> {
    m: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> LuDecomposition<T> {
    /// Factorise; a pivot below `m·ε·max|a_ij|` is reported as
    /// [`Error::SolverDegenerate`].
    pub fn new(m: usize, mut a: Vec<T>) -> Result<Self> {
        assert_eq!(a.len(), m * m, "LU input must be m×m");
        let scale = a.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()));
        let tiny = scale * T::epsilon() * T::from_usize_lossy(m.max(1));
        let mut perm: Vec<usize> = (0..m).collect();

        for k in 0..m {
            let (p, pmax) =
                (k..m)
                    .map(|i| (i, a[i * m + k].abs()))
                    .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= tiny || pmax == T::zero() {
                return Err(Error::SolverDegenerate);
            }
            if p != k {
                for j in 0..m {
                    a.swap(k * m + j, p * m + j);
                }
                perm.swap(k, p);
            }
            let pivot = a[k * m + k];
            for i in (k + 1)..m {
                let f = a[i * m + k] / pivot;
                a[i * m + k] = f;
                if f == T::zero() {
                    continue;
                }
                for j in (k + 1)..m {
                    a[i * m + j] = a[i * m + j] - f * a[k * m + j];
                }
            }
        }
        Ok(Self { m, lu: a, perm })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let m = self.m;
        assert_eq!(b.len(), m, "right-hand side length must match");
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..m {
            let row = &self.lu[i * m..i * m + i];
            let s = row.iter().zip(&x[..i]).fold(x[i], |s, (&l, &xj)| s - l * xj);
            x[i] = s;
        }
        for i in (0..m).rev() {
            let row = &self.lu[i * m + i + 1..(i + 1) * m];
            let s = row.iter().zip(&x[i + 1..]).fold(x[i], |s, (&u, &xj)| s - u * xj);
            x[i] = s / self.lu[i * m + i];
        }
        x
    }
}
