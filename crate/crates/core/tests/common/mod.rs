#![allow(dead_code)]

use netperf::spectra::{eigenvalues, symmetric_eigenvalues, symmetric_part};
use netperf::{Matrix, RealMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let data = (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect();
    RealMatrix::from_row_major(n, data).unwrap()
}

fn shifted(a: &Matrix, by: f64) -> Matrix {
    a - &Matrix::identity(a.dim()).scale(by)
}

/// Random matrix shifted so its rightmost eigenvalue sits at `-margin`.
pub fn stable(rng: &mut ChaCha8Rng, n: usize, margin: f64) -> Matrix {
    let a = uniform(rng, n);
    let right = eigenvalues(&a).unwrap().iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    shifted(&a, right + margin)
}

/// Random matrix shifted so its symmetric part is Hurwitz with margin.
pub fn dissipative(rng: &mut ChaCha8Rng, n: usize, margin: f64) -> Matrix {
    let a = uniform(rng, n);
    let top = *symmetric_eigenvalues(&symmetric_part(&a)).unwrap().last().unwrap();
    shifted(&a, top + margin)
}

/// `CᵀC` with `C` random `n × n`, plus a small ridge.
pub fn psd(rng: &mut ChaCha8Rng, n: usize, ridge: f64) -> Matrix {
    let c = uniform(rng, n);
    let q = &(&c.transpose() * &c) + &Matrix::identity(n).scale(ridge);
    q.symmetrize()
}

pub fn orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let g = uniform(rng, n);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<f64> = (0..n).map(|i| g[(i, j)]).collect();
        for _ in 0..2 {
            for u in &cols {
                let d: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= d * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    let mut z = Matrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            z[(i, j)] = x;
        }
    }
    z
}

/// Stable normal matrix `Z D Zᵀ` with `D` built from scaled rotations.
pub fn stable_normal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut d = Matrix::zeros(n);
    let mut i = 0;
    while i < n {
        let re = -rng.random_range(0.1..2.0);
        if i + 1 < n && rng.random_bool(0.5) {
            let im = rng.random_range(-2.0..2.0);
            d[(i, i)] = re;
            d[(i + 1, i + 1)] = re;
            d[(i, i + 1)] = im;
            d[(i + 1, i)] = -im;
            i += 2;
        } else {
            d[(i, i)] = re;
            i += 1;
        }
    }
    let z = orthogonal(rng, n);
    &(&z * &d) * &z.transpose()
}

pub fn rel_err(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}
