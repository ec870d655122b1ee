use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
///
/// Only the lower triangle is trusted; the input is symmetrised first.
pub fn symmetric_eigenvalues<T: Scalar>(s: &RealMatrix<T>) -> Result<Vec<T>> {
    let n = s.dim();
    let mut a = s.symmetrize();
    let scale = a.frobenius_norm();
    if scale == T::zero() {
        return Ok(vec![T::zero(); n]);
    }
    let target = T::epsilon() * scale;

    for _ in 0..MAX_SWEEPS {
        let off: T =
            (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)] * a[(i, j)]).sum::<T>().sqrt();
        if off <= target {
            let mut ev = a.diagonal();
            ev.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(ev);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let sn = t * c;
                rotate(&mut a, p, q, c, sn);
            }
        }
    }
    Err(Error::NoConvergence { iterations: MAX_SWEEPS })
}

// A ← Jᵀ A J with J the (p, q) Givens rotation zeroing a[p][q].
fn rotate<T: Scalar>(a: &mut RealMatrix<T>, p: usize, q: usize, c: T, s: T) {
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();
}
