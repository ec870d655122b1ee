use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

/// Diagonal block of a quasi-triangular Schur factor: a real eigenvalue
/// (`size == 1`) or a complex-conjugate pair (`size == 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchurBlock {
    pub start: usize,
    pub size: usize,
}

/// Real Schur decomposition `A = Z T Zᵀ` with `Z` orthogonal and `T` upper
/// quasi-triangular.
#[derive(Debug, Clone)]
pub struct RealSchur<T> {
    pub t: RealMatrix<T>,
    pub z: RealMatrix<T>,
    pub eigenvalues: Vec<Complex<T>>,
    pub blocks: Vec<SchurBlock>,
}

/// Hessenberg reduction followed by Francis double-shift QR iteration
/// (after the EISPACK `orthes`/`hqr2` procedures), keeping the full
/// Schur form and accumulating the orthogonal factor.
pub fn real_schur<T: Scalar>(a: &RealMatrix<T>) -> Result<RealSchur<T>> {
    let n = a.dim();
    let mut h = a.as_slice().to_vec();
    let mut v = vec![T::zero(); n * n];
    if n == 0 {
        return Ok(RealSchur {
            t: RealMatrix::zeros(0),
            z: RealMatrix::zeros(0),
            eigenvalues: Vec::new(),
            blocks: Vec::new(),
        });
    }
    hessenberg(n, &mut h, &mut v);
    let (wr, wi) = francis_qr(n, &mut h, &mut v)?;

    let mut blocks = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if wi[i] != T::zero() && i + 1 < n {
            blocks.push(SchurBlock { start: i, size: 2 });
            i += 2;
        } else {
            blocks.push(SchurBlock { start: i, size: 1 });
            i += 1;
        }
    }
    // Clear everything below the block diagonal; the iteration leaves
    // deflated subdiagonal entries at round-off level rather than zero.
    for r in 0..n {
        for c in 0..r {
            let keep = r == c + 1 && blocks.iter().any(|b| b.size == 2 && b.start == c);
            if !keep {
                h[r * n + c] = T::zero();
            }
        }
    }

    let eigenvalues = wr.into_iter().zip(wi).map(|(re, im)| Complex::new(re, im)).collect();
    Ok(RealSchur { t: RealMatrix::from_row_major(n, h)?, z: RealMatrix::from_row_major(n, v)?, eigenvalues, blocks })
}

fn hessenberg<T: Scalar>(n: usize, h: &mut [T], v: &mut [T]) {
    let mut ort = vec![T::zero(); n];
    let high = n - 1;

    for m in 1..high {
        let scale = (m..=high).fold(T::zero(), |s, i| s + h[i * n + m - 1].abs());
        if scale == T::zero() {
            continue;
        }
        let mut hh = T::zero();
        for i in (m..=high).rev() {
            ort[i] = h[i * n + m - 1] / scale;
            hh = hh + ort[i] * ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > T::zero() {
            g = -g;
        }
        hh = hh - ort[m] * g;
        ort[m] = ort[m] - g;

        // H = (I - u uᵀ/h) H (I - u uᵀ/h)
        for j in m..n {
            let mut f = T::zero();
            for i in (m..=high).rev() {
                f = f + ort[i] * h[i * n + j];
            }
            f = f / hh;
            for i in m..=high {
                h[i * n + j] = h[i * n + j] - f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = T::zero();
            for j in (m..=high).rev() {
                f = f + ort[j] * h[i * n + j];
            }
            f = f / hh;
            for j in m..=high {
                h[i * n + j] = h[i * n + j] - f * ort[j];
            }
        }
        ort[m] = scale * ort[m];
        h[m * n + m - 1] = scale * g;
    }

    for i in 0..n {
        for j in 0..n {
            v[i * n + j] = if i == j { T::one() } else { T::zero() };
        }
    }
    for m in (1..high).rev() {
        if h[m * n + m - 1] == T::zero() {
            continue;
        }
        for i in (m + 1)..=high {
            ort[i] = h[i * n + m - 1];
        }
        for j in m..=high {
            let mut g = T::zero();
            for i in m..=high {
                g = g + ort[i] * v[i * n + j];
            }
            // double division avoids underflow
            g = (g / ort[m]) / h[m * n + m - 1];
            for i in m..=high {
                v[i * n + j] = v[i * n + j] + g * ort[i];
            }
        }
    }
    // The Householder vectors were stored below the subdiagonal.
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            h[i * n + j] = T::zero();
        }
    }
}

#[allow(clippy::many_single_char_names)]
fn francis_qr<T: Scalar>(nn: usize, h: &mut [T], v: &mut [T]) -> Result<(Vec<T>, Vec<T>)> {
    let idx = |i: isize, j: isize| (i as usize) * nn + j as usize;
    let mut d = vec![T::zero(); nn];
    let mut e = vec![T::zero(); nn];
    let eps = T::epsilon();
    let two = T::lit(2.0);
    let max_total = 100 * nn.max(10);

    let mut norm = T::zero();
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm = norm + h[i * nn + j].abs();
        }
    }

    let mut n = nn as isize - 1;
    let mut exshift = T::zero();
    let (mut p, mut q, mut r) = (T::zero(), T::zero(), T::zero());
    let (mut s, mut z);
    let (mut w, mut x, mut y);
    let mut iter = 0usize;
    let mut total = 0usize;

    while n >= 0 {
        // single small subdiagonal element
        let mut l = n;
        while l > 0 {
            s = h[idx(l - 1, l - 1)].abs() + h[idx(l, l)].abs();
            if s == T::zero() {
                s = norm;
            }
            if h[idx(l, l - 1)].abs() <= eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            h[idx(n, n)] = h[idx(n, n)] + exshift;
            d[n as usize] = h[idx(n, n)];
            e[n as usize] = T::zero();
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            w = h[idx(n, n - 1)] * h[idx(n - 1, n)];
            p = (h[idx(n - 1, n - 1)] - h[idx(n, n)]) / two;
            q = p * p + w;
            z = q.abs().sqrt();
            h[idx(n, n)] = h[idx(n, n)] + exshift;
            h[idx(n - 1, n - 1)] = h[idx(n - 1, n - 1)] + exshift;
            x = h[idx(n, n)];

            if q >= T::zero() {
                // real pair: rotate the block to upper triangular
                z = if p >= T::zero() { p + z } else { p - z };
                d[(n - 1) as usize] = x + z;
                d[n as usize] = d[(n - 1) as usize];
                if z != T::zero() {
                    d[n as usize] = x - w / z;
                }
                e[(n - 1) as usize] = T::zero();
                e[n as usize] = T::zero();
                x = h[idx(n, n - 1)];
                s = x.abs() + z.abs();
                p = x / s;
                q = z / s;
                r = (p * p + q * q).sqrt();
                p = p / r;
                q = q / r;

                for j in (n - 1)..(nn as isize) {
                    z = h[idx(n - 1, j)];
                    h[idx(n - 1, j)] = q * z + p * h[idx(n, j)];
                    h[idx(n, j)] = q * h[idx(n, j)] - p * z;
                }
                for i in 0..=n {
                    z = h[idx(i, n - 1)];
                    h[idx(i, n - 1)] = q * z + p * h[idx(i, n)];
                    h[idx(i, n)] = q * h[idx(i, n)] - p * z;
                }
                for i in 0..(nn as isize) {
                    z = v[idx(i, n - 1)];
                    v[idx(i, n - 1)] = q * z + p * v[idx(i, n)];
                    v[idx(i, n)] = q * v[idx(i, n)] - p * z;
                }
                h[idx(n, n - 1)] = T::zero();
            } else {
                d[(n - 1) as usize] = x + p;
                d[n as usize] = x + p;
                e[(n - 1) as usize] = z;
                e[n as usize] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            total += 1;
            if total > max_total {
                return Err(Error::NoConvergence { iterations: total });
            }

            x = h[idx(n, n)];
            y = T::zero();
            w = T::zero();
            if l < n {
                y = h[idx(n - 1, n - 1)];
                w = h[idx(n, n - 1)] * h[idx(n - 1, n)];
            }

            // Wilkinson's exceptional shift
            if iter == 10 {
                exshift = exshift + x;
                for i in 0..=n {
                    h[idx(i, i)] = h[idx(i, i)] - x;
                }
                s = h[idx(n, n - 1)].abs() + h[idx(n - 1, n - 2)].abs();
                y = T::lit(0.75) * s;
                x = y;
                w = T::lit(-0.4375) * s * s;
            }

            // MATLAB's exceptional shift
            if iter == 30 {
                s = (y - x) / two;
                s = s * s + w;
                if s > T::zero() {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / two + s);
                    for i in 0..=n {
                        h[idx(i, i)] = h[idx(i, i)] - s;
                    }
                    exshift = exshift + s;
                    w = T::lit(0.964);
                    y = w;
                    x = y;
                }
            }

            iter += 1;

            // two consecutive small subdiagonal elements
            let mut m = n - 2;
            while m >= l {
                z = h[idx(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
                q = h[idx(m + 1, m + 1)] - z - r - s;
                r = h[idx(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if m == l {
                    break;
                }
                if h[idx(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h[idx(m - 1, m - 1)].abs() + z.abs() + h[idx(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }

            for i in (m + 2)..=n {
                h[idx(i, i - 2)] = T::zero();
                if i > m + 2 {
                    h[idx(i, i - 3)] = T::zero();
                }
            }

            // double QR step on rows l..=n, columns m..=n
            let mut k = m;
            while k < n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[idx(k, k - 1)];
                    q = h[idx(k + 1, k - 1)];
                    r = if notlast { h[idx(k + 2, k - 1)] } else { T::zero() };
                    x = p.abs() + q.abs() + r.abs();
                    if x == T::zero() {
                        k += 1;
                        continue;
                    }
                    p = p / x;
                    q = q / x;
                    r = r / x;
                }

                s = (p * p + q * q + r * r).sqrt();
                if p < T::zero() {
                    s = -s;
                }
                if s != T::zero() {
                    if k != m {
                        h[idx(k, k - 1)] = -s * x;
                    } else if l != m {
                        h[idx(k, k - 1)] = -h[idx(k, k - 1)];
                    }
                    p = p + s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q = q / p;
                    r = r / p;

                    for j in k..(nn as isize) {
                        p = h[idx(k, j)] + q * h[idx(k + 1, j)];
                        if notlast {
                            p = p + r * h[idx(k + 2, j)];
                            h[idx(k + 2, j)] = h[idx(k + 2, j)] - p * z;
                        }
                        h[idx(k, j)] = h[idx(k, j)] - p * x;
                        h[idx(k + 1, j)] = h[idx(k + 1, j)] - p * y;
                    }
                    for i in 0..=n.min(k + 3) {
                        p = x * h[idx(i, k)] + y * h[idx(i, k + 1)];
                        if notlast {
                            p = p + z * h[idx(i, k + 2)];
                            h[idx(i, k + 2)] = h[idx(i, k + 2)] - p * r;
                        }
                        h[idx(i, k)] = h[idx(i, k)] - p;
                        h[idx(i, k + 1)] = h[idx(i, k + 1)] - p * q;
                    }
                    for i in 0..(nn as isize) {
                        p = x * v[idx(i, k)] + y * v[idx(i, k + 1)];
                        if notlast {
                            p = p + z * v[idx(i, k + 2)];
                            v[idx(i, k + 2)] = v[idx(i, k + 2)] - p * r;
                        }
                        v[idx(i, k)] = v[idx(i, k)] - p;
                        v[idx(i, k + 1)] = v[idx(i, k + 1)] - p * q;
                    }
                }
                k += 1;
            }
        }
    }
    Ok((d, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(s: &RealSchur<f64>) -> RealMatrix<f64> {
        &(&s.z * &s.t) * &s.z.transpose()
    }

    fn check(a: &RealMatrix<f64>) -> RealSchur<f64> {
        let s = real_schur(a).unwrap();
        let back = reconstruct(&s);
        let err = (&back - a).frobenius_norm();
        assert!(err <= 1e-12 * a.frobenius_norm().max(1.0), "reconstruction error {err}");
        let ztz = &s.z.transpose() * &s.z;
        assert!((&ztz - &RealMatrix::identity(a.dim())).frobenius_norm() < 1e-12);
        for r in 0..a.dim() {
            for c in 0..r {
                if s.t[(r, c)] != 0.0 {
                    assert_eq!(r, c + 1);
                    assert!(s.blocks.contains(&SchurBlock { start: c, size: 2 }));
                }
            }
        }
        s
    }

    #[test]
    fn rotation_block_has_complex_pair() {
        let a = RealMatrix::from_rows(&[[-1.0, 1.0], [-1.0, -1.0]]).unwrap();
        let s = check(&a);
        assert_eq!(s.blocks, vec![SchurBlock { start: 0, size: 2 }]);
        let mut im: Vec<f64> = s.eigenvalues.iter().map(|z| z.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[0] + 1.0).abs() < 1e-14 && (im[1] - 1.0).abs() < 1e-14);
        assert!(s.eigenvalues.iter().all(|z| (z.re + 1.0).abs() < 1e-14));
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let a = RealMatrix::from_rows(&[
            [10.0, -35.0, 50.0, -24.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let s = check(&a);
        let mut re: Vec<f64> = s.eigenvalues.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (k, r) in re.iter().enumerate() {
            assert!((r - (k as f64 + 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn trivial_sizes() {
        let a = RealMatrix::from_rows(&[[-3.0]]).unwrap();
        let s = check(&a);
        assert_eq!(s.eigenvalues, vec![Complex::new(-3.0, 0.0)]);
        let z = RealMatrix::<f64>::zeros(3);
        let s = check(&z);
        assert!(s.eigenvalues.iter().all(|e| e.norm() == 0.0));
    }

    #[test]
    fn pseudo_random_dense() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for n in [3usize, 7, 16, 40] {
            let data: Vec<f64> = (0..n * n).map(|_| next()).collect();
            let a = RealMatrix::from_row_major(n, data).unwrap();
            let s = check(&a);
            let tr: f64 = s.eigenvalues.iter().map(|z| z.re).sum();
            assert!((tr - a.trace()).abs() < 1e-10);
        }
    }
}
