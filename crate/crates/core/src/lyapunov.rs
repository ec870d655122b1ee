//! Continuous-time Lyapunov equations and the steady-state performance
//! measure `ρ_ss(A; Q) = Tr(P)`.
//!
//! Two orientations appear in practice and each has its own entry point:
//!
//! * observability form `PA + AᵀP + Q = 0` ([`solve_lyapunov`]), whose trace
//!   is `lim E[xᵀQx]` for `ẋ = Ax + ξ` with unit white noise;
//! * controllability form `AP + PAᵀ + W = 0` ([`solve_controllability_lyapunov`]),
//!   whose solution is the stationary state covariance.
//!
//! The direct solver is Bartels–Stewart on the real Schur form of `A`.
//! [`kron_oracle_solve`] solves the vectorised system densely and shares no
//! code with it beyond the LU kernel; it exists for cross-checking.

use serde::Serialize;

use crate::dense::{real_schur, LuDecomposition, RealSchur, SchurBlock};
use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;
use crate::spectra::{self, DEFAULT_TOL};

/// Largest dimension accepted by [`kron_oracle_solve`] (it factors an
/// `n² × n²` dense matrix).
pub const KRON_MAX_DIM: usize = 64;

/// Residual level below which no refinement step is attempted.
const REFINE_TARGET: f64 = 1e-13;
const MAX_REFINEMENTS: usize = 2;

/// State matrix `A` with symmetric positive semidefinite output weight
/// `Q = CᵀC`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct LinearSystem<T> {
    a: RealMatrix<T>,
    q: RealMatrix<T>,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn new(a: RealMatrix<T>, q: RealMatrix<T>) -> Result<Self> {
        a.check_same_dim(&q)?;
        spectra::weight_spectrum(&q, T::tol(DEFAULT_TOL))?;
        Ok(Self { a, q })
    }

    /// System with `Q = I`.
    pub fn with_identity_weight(a: RealMatrix<T>) -> Self {
        let n = a.dim();
        Self { a, q: RealMatrix::identity(n) }
    }

    /// System with `Q = cᵀc` for a single output row `c`.
    pub fn with_output_row(a: RealMatrix<T>, c: &[T]) -> Result<Self> {
        if c.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: c.len() });
        }
        Ok(Self { q: RealMatrix::outer(c), a })
    }

    pub fn a(&self) -> &RealMatrix<T> {
        &self.a
    }

    pub fn q(&self) -> &RealMatrix<T> {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct LyapunovSolution<T> {
    pub p: RealMatrix<T>,
    pub trace: T,
    /// `‖residual equation‖_F / max(1, ‖Q‖_F)`.
    pub residual: T,
}

/// `‖PA + AᵀP + Q‖_F / max(1, ‖Q‖_F)`.
pub fn observability_residual<T: Scalar>(a: &RealMatrix<T>, q: &RealMatrix<T>, p: &RealMatrix<T>) -> T {
    let r = &(&(p * a) + &(&a.transpose() * p)) + q;
    r.frobenius_norm() / T::one().max(q.frobenius_norm())
}

/// `‖AP + PAᵀ + W‖_F / max(1, ‖W‖_F)`.
pub fn controllability_residual<T: Scalar>(a: &RealMatrix<T>, w: &RealMatrix<T>, p: &RealMatrix<T>) -> T {
    observability_residual(&a.transpose(), w, p)
}

/// Solve `PA + AᵀP + Q = 0` for a Hurwitz `A`.
pub fn solve_lyapunov<T: Scalar>(sys: &LinearSystem<T>) -> Result<LyapunovSolution<T>> {
    let schur = stable_schur(&sys.a)?;
    let p = bartels_stewart(&sys.a, &schur, &sys.q)?;
    Ok(package(p, &sys.a, &sys.q))
}

/// Solve `AP + PAᵀ + W = 0` for a Hurwitz `A`.
pub fn solve_controllability_lyapunov<T: Scalar>(a: &RealMatrix<T>, w: &RealMatrix<T>) -> Result<LyapunovSolution<T>> {
    a.check_same_dim(w)?;
    let at = a.transpose();
    let schur = stable_schur(&at)?;
    let p = bartels_stewart(&at, &schur, w)?;
    Ok(package(p, &at, w))
}

/// Vectorised dense solve of `(I⊗Aᵀ + Aᵀ⊗I) vec(P) = −vec(Q)`.
pub fn kron_oracle_solve<T: Scalar>(sys: &LinearSystem<T>) -> Result<LyapunovSolution<T>> {
    let n = sys.dim();
    if n > KRON_MAX_DIM {
        return Err(Error::DimensionTooLarge { n, max: KRON_MAX_DIM });
    }
    ensure_hurwitz(&sys.a)?;
    let a = &sys.a;
    let m = n * n;
    let col = |i: usize, j: usize| i + j * n;
    let mut k = vec![T::zero(); m * m];
    for j in 0..n {
        for i in 0..n {
            let row = col(i, j);
            for l in 0..n {
                // (I ⊗ Aᵀ) vec(P) = vec(AᵀP)
                k[row * m + col(l, j)] = k[row * m + col(l, j)] + a[(l, i)];
                // (Aᵀ ⊗ I) vec(P) = vec(PA)
                k[row * m + col(i, l)] = k[row * m + col(i, l)] + a[(l, j)];
            }
        }
    }
    let rhs: Vec<T> = (0..m).map(|idx| -sys.q[(idx % n, idx / n)]).collect();
    let x = LuDecomposition::new(m, k)?.solve(&rhs);
    let mut p = RealMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            p[(i, j)] = x[col(i, j)];
        }
    }
    Ok(package(p, &sys.a, &sys.q))
}

/// `ρ_ss(A; Q) = Tr(P)`, the squared H₂ norm from the noise input to `y`.
pub fn performance_measure<T: Scalar>(sys: &LinearSystem<T>) -> Result<T> {
    Ok(solve_lyapunov(sys)?.trace)
}

/// Steady-state variance `c P cᵀ` of the scalar output `y = c x`, with `P`
/// the stationary covariance solving `AP + PAᵀ + I = 0`.
pub fn restricted_dispersion<T: Scalar>(a: &RealMatrix<T>, c_row: &[T]) -> Result<T> {
    if c_row.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: c_row.len() });
    }
    let sol = solve_controllability_lyapunov(a, &RealMatrix::identity(a.dim()))?;
    Ok(sol.p.quadratic_form(c_row))
}

pub(crate) fn ensure_hurwitz<T: Scalar>(a: &RealMatrix<T>) -> Result<()> {
    let margin = spectra::hurwitz_margin(a);
    let eig = spectra::eigenvalues(a)?;
    check_eigs(&eig, margin)
}

fn check_eigs<T: Scalar>(eig: &[num_complex::Complex<T>], margin: T) -> Result<()> {
    if let Some(worst) =
        eig.iter().filter(|z| z.re >= -margin).max_by(|x, y| x.re.partial_cmp(&y.re).expect("finite eigenvalues"))
    {
        return Err(Error::NotHurwitz { re: worst.re.as_f64(), im: worst.im.as_f64(), margin: margin.as_f64() });
    }
    Ok(())
}

fn stable_schur<T: Scalar>(a: &RealMatrix<T>) -> Result<RealSchur<T>> {
    let schur = real_schur(a)?;
    check_eigs(&schur.eigenvalues, spectra::hurwitz_margin(a))?;
    Ok(schur)
}

// Symmetrise and score against the observability-form equation for (a, q).
fn package<T: Scalar>(p: RealMatrix<T>, a: &RealMatrix<T>, q: &RealMatrix<T>) -> LyapunovSolution<T> {
    let p = p.symmetrize();
    LyapunovSolution { trace: p.trace(), residual: observability_residual(a, q, &p), p }
}

/// Bartels–Stewart for `PA + AᵀP + Q = 0` given `A = Z T Zᵀ`, with up to two
/// steps of residual refinement reusing the factorisation.
fn bartels_stewart<T: Scalar>(a: &RealMatrix<T>, schur: &RealSchur<T>, q: &RealMatrix<T>) -> Result<RealMatrix<T>> {
    let mut p = schur_solve(schur, q)?.symmetrize();
    let target = T::tol(REFINE_TARGET);
    for _ in 0..MAX_REFINEMENTS {
        if observability_residual(a, q, &p) <= target {
            break;
        }
        // (P + Δ)A + Aᵀ(P + Δ) + Q = 0  ⇔  ΔA + AᵀΔ + R = 0
        let r = &(&(&p * a) + &(&a.transpose() * &p)) + q;
        let delta = schur_solve(schur, &r)?;
        p = (&p + &delta).symmetrize();
    }
    Ok(p)
}

fn schur_solve<T: Scalar>(schur: &RealSchur<T>, q: &RealMatrix<T>) -> Result<RealMatrix<T>> {
    let z = &schur.z;
    let t = &schur.t;
    let n = t.dim();
    let c = &(&z.transpose() * q) * z;
    let mut x = RealMatrix::zeros(n);

    // Tᵀ X + X T = −C, block by block: columns left to right, rows top down.
    for bj in &schur.blocks {
        for bi in &schur.blocks {
            let mut rhs = [[T::zero(); 2]; 2];
            for (r, rhs_row) in rhs.iter_mut().enumerate().take(bi.size) {
                let row = bi.start + r;
                for (s, out) in rhs_row.iter_mut().enumerate().take(bj.size) {
                    let colj = bj.start + s;
                    let mut acc = -c[(row, colj)];
                    for k in 0..bi.start {
                        acc = acc - t[(k, row)] * x[(k, colj)];
                    }
                    for k in 0..bj.start {
                        acc = acc - x[(row, k)] * t[(k, colj)];
                    }
                    *out = acc;
                }
            }
            let block = small_sylvester(t, bi, bj, &rhs)?;
            for r in 0..bi.size {
                for s in 0..bj.size {
                    x[(bi.start + r, bj.start + s)] = block[r][s];
                }
            }
        }
    }
    Ok(&(z * &x) * &z.transpose())
}

// Solve T_IIᵀ X + X T_JJ = R for a block of at most 2×2.
fn small_sylvester<T: Scalar>(
    t: &RealMatrix<T>,
    bi: &SchurBlock,
    bj: &SchurBlock,
    rhs: &[[T; 2]; 2],
) -> Result<[[T; 2]; 2]> {
    let (p, q) = (bi.size, bj.size);
    let m = p * q;
    let var = |r: usize, s: usize| r + s * p;
    let mut k = vec![T::zero(); m * m];
    let mut b = vec![T::zero(); m];
    for r in 0..p {
        for s in 0..q {
            let eq = var(r, s);
            b[eq] = rhs[r][s];
            for rr in 0..p {
                k[eq * m + var(rr, s)] = k[eq * m + var(rr, s)] + t[(bi.start + rr, bi.start + r)];
            }
            for ss in 0..q {
                k[eq * m + var(r, ss)] = k[eq * m + var(r, ss)] + t[(bj.start + ss, bj.start + s)];
            }
        }
    }
    let sol = LuDecomposition::new(m, k)?.solve(&b);
    let mut out = [[T::zero(); 2]; 2];
    for r in 0..p {
        for s in 0..q {
            out[r][s] = sol[var(r, s)];
        }
    }
    Ok(out)
}
