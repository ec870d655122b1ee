//! Eigenstructure of the state and weight matrices, plus the structural
//! tests (Hurwitz, normality) the bounds depend on.

use num_complex::Complex;
use serde::Serialize;

use crate::dense::real_schur;
pub use crate::dense::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

/// Default relative tolerance for symmetry, definiteness and normality tests.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative stability margin: Hurwitz means `max Re λ < -HURWITZ_MARGIN·max(1, ‖A‖_F)`.
pub const HURWITZ_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSummary<T> {
    /// Eigenvalues of `A`, in the order the Schur iteration produced them.
    pub eigenvalues_a: Vec<Complex<T>>,
    /// Eigenvalues of `A_s = (A + Aᵀ)/2`, ascending.
    pub eigenvalues_as: Vec<T>,
    /// Eigenvalues of `Q`, ascending, with round-off negatives clamped to 0.
    pub eigenvalues_q: Vec<T>,
    pub is_hurwitz: bool,
    /// Absolute margin the Hurwitz test required of `max Re λ(A)`.
    pub hurwitz_margin: T,
    pub is_normal: bool,
    /// `‖AᵀA − AAᵀ‖_F / max(1, ‖A‖_F²)`.
    pub normality_residual: T,
}

impl<T: Scalar> SpectralSummary<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues_a.len()
    }

    /// Eigenvalue of `A` with the largest real part.
    pub fn rightmost_eigenvalue(&self) -> Option<Complex<T>> {
        self.eigenvalues_a.iter().copied().max_by(|x, y| x.re.partial_cmp(&y.re).expect("finite eigenvalues"))
    }

    pub fn lambda_min_q(&self) -> T {
        self.eigenvalues_q.first().copied().unwrap_or_else(T::zero)
    }

    pub fn lambda_max_q(&self) -> T {
        self.eigenvalues_q.last().copied().unwrap_or_else(T::zero)
    }

    pub fn lambda_max_as(&self) -> T {
        self.eigenvalues_as.last().copied().unwrap_or_else(T::neg_infinity)
    }

    pub(crate) fn not_hurwitz_error(&self) -> Error {
        let worst = self.rightmost_eigenvalue().unwrap_or_default();
        Error::NotHurwitz { re: worst.re.as_f64(), im: worst.im.as_f64(), margin: self.hurwitz_margin.as_f64() }
    }
}

/// `(Aᵀ + A)/2`, exactly symmetric by construction.
pub fn symmetric_part<T: Scalar>(a: &RealMatrix<T>) -> RealMatrix<T> {
    a.symmetrize()
}

pub fn normality_residual<T: Scalar>(a: &RealMatrix<T>) -> T {
    let at = a.transpose();
    let commutator = &(&at * a) - &(a * &at);
    let fro = a.frobenius_norm();
    commutator.frobenius_norm() / T::one().max(fro * fro)
}

/// `‖AᵀA − AAᵀ‖_F ≤ tol·max(1, ‖A‖_F²)`.
pub fn is_normal<T: Scalar>(a: &RealMatrix<T>, tol: T) -> bool {
    normality_residual(a) <= tol
}

/// Absolute margin used by the Hurwitz test for this matrix.
pub fn hurwitz_margin<T: Scalar>(a: &RealMatrix<T>) -> T {
    T::tol(HURWITZ_MARGIN) * T::one().max(a.frobenius_norm())
}

pub fn eigenvalues<T: Scalar>(a: &RealMatrix<T>) -> Result<Vec<Complex<T>>> {
    Ok(real_schur(a)?.eigenvalues)
}

/// Hurwitz test with the relative margin of [`HURWITZ_MARGIN`].
pub fn is_hurwitz<T: Scalar>(a: &RealMatrix<T>) -> Result<bool> {
    let margin = hurwitz_margin(a);
    Ok(eigenvalues(a)?.iter().all(|z| z.re < -margin))
}

/// Fail unless `Q` is symmetric and positive semidefinite within `tol`
/// (relative to `‖Q‖_F`); on success return its ascending spectrum with
/// round-off around zero clamped to exactly 0.
pub fn weight_spectrum<T: Scalar>(q: &RealMatrix<T>, tol: T) -> Result<Vec<T>> {
    let qn = q.frobenius_norm();
    let asym = (q - &q.transpose()).frobenius_norm();
    if asym > tol * qn {
        let rel = if qn > T::zero() { asym / qn } else { asym };
        return Err(Error::NotSymmetric { asymmetry: rel.as_f64() });
    }
    let mut ev = symmetric_eigenvalues(q)?;
    let floor = tol * qn;
    if let Some(&min) = ev.first() {
        if min < -floor {
            return Err(Error::IndefiniteWeight { min_eigenvalue: min.as_f64() });
        }
    }
    for e in ev.iter_mut().filter(|e| e.abs() <= floor) {
        *e = T::zero();
    }
    Ok(ev)
}

pub fn spectral_summary<T: Scalar>(a: &RealMatrix<T>, q: &RealMatrix<T>, tol: T) -> Result<SpectralSummary<T>> {
    a.check_same_dim(q)?;
    let eigenvalues_q = weight_spectrum(q, tol)?;
    let eigenvalues_a = eigenvalues(a)?;
    let eigenvalues_as = symmetric_eigenvalues(&symmetric_part(a))?;
    let margin = hurwitz_margin(a);
    let is_hurwitz = eigenvalues_a.iter().all(|z| z.re < -margin);
    let normality_residual = normality_residual(a);
    Ok(SpectralSummary {
        eigenvalues_a,
        eigenvalues_as,
        eigenvalues_q,
        is_hurwitz,
        hurwitz_margin: margin,
        is_normal: normality_residual <= tol,
        normality_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_state_matrix, CyclicNetworkParams};

    fn m(rows: &[[f64; 2]]) -> RealMatrix<f64> {
        RealMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn symmetric_part_examples() {
        assert_eq!(symmetric_part(&m(&[[-1.0, 2.0], [0.0, -1.0]])), m(&[[-1.0, 1.0], [1.0, -1.0]]));
        let s = m(&[[3.0, 1.5], [1.5, -2.0]]);
        assert_eq!(symmetric_part(&s), s);
        assert_eq!(symmetric_part(&m(&[[0.0, 1.0], [-1.0, 0.0]])), RealMatrix::zeros(2));
    }

    #[test]
    fn negative_identity_summary() {
        let a = RealMatrix::<f64>::identity(3).scale(-1.0);
        let s = spectral_summary(&a, &RealMatrix::identity(3), DEFAULT_TOL).unwrap();
        assert!(s.is_hurwitz && s.is_normal);
        assert!(s.eigenvalues_a.iter().all(|z| *z == Complex::new(-1.0, 0.0)));
        assert_eq!(s.eigenvalues_as, vec![-1.0; 3]);
        assert_eq!(s.eigenvalues_q, vec![1.0; 3]);
    }

    #[test]
    fn cyclic_four_spectrum() {
        let a = build_state_matrix(&CyclicNetworkParams::identical(4, 1.0, 1.0).unwrap());
        let s = spectral_summary(&a, &RealMatrix::identity(4), DEFAULT_TOL).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut re: Vec<f64> = s.eigenvalues_a.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        let want = [-1.0 - h, -1.0 - h, -1.0 + h, -1.0 + h];
        for (r, w) in re.iter().zip(want) {
            assert!((r - w).abs() < 1e-12);
        }
        for z in &s.eigenvalues_a {
            assert!((z.re + 1.0).hypot(z.im) - 1.0 < 1e-12);
        }
        assert!(s.is_hurwitz && s.is_normal);
    }

    #[test]
    fn unstable_diagonal() {
        let a = m(&[[1.0, 0.0], [0.0, -1.0]]);
        assert!(!is_hurwitz(&a).unwrap());
        let s = spectral_summary(&a, &RealMatrix::identity(2), DEFAULT_TOL).unwrap();
        assert!(!s.is_hurwitz);
    }

    #[test]
    fn marginal_is_not_hurwitz() {
        let a = m(&[[0.0, 1.0], [-1.0, 0.0]]);
        assert!(!is_hurwitz(&a).unwrap());
    }

    #[test]
    fn normality_examples() {
        assert!(is_normal(&m(&[[2.0, -7.0], [-7.0, 0.5]]), DEFAULT_TOL));
        let homogeneous = build_state_matrix(&CyclicNetworkParams::identical(5, 1.3, 0.7).unwrap());
        assert!(is_normal(&homogeneous, DEFAULT_TOL));
        let p = CyclicNetworkParams::new(vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 0.5]).unwrap();
        let a = build_state_matrix(&p);
        // AᵀA − AAᵀ = diag(c1²−c3², c2²−c1², c3²−c2²), ‖A‖_F² = 8.25
        let r = normality_residual(&a);
        let want = (3.0f64 * 3.0 + 0.75 * 0.75 + 3.75 * 3.75).sqrt() / 8.25;
        assert!((r - want).abs() < 1e-14, "{r} vs {want}");
        assert!(!is_normal(&a, DEFAULT_TOL));
    }

    #[test]
    fn weight_validation() {
        let q = m(&[[1.0, 0.5], [0.0, 1.0]]);
        assert!(matches!(
            spectral_summary(&RealMatrix::identity(2).scale(-1.0), &q, DEFAULT_TOL),
            Err(Error::NotSymmetric { .. })
        ));
        let indefinite = m(&[[1.0, 0.0], [0.0, -0.5]]);
        assert!(matches!(weight_spectrum(&indefinite, DEFAULT_TOL), Err(Error::IndefiniteWeight { .. })));
        let noisy = m(&[[1.0, 0.0], [0.0, -1e-14]]);
        assert_eq!(weight_spectrum(&noisy, DEFAULT_TOL).unwrap(), vec![0.0, 1.0]);
        assert!(matches!(
            spectral_summary(&RealMatrix::<f64>::identity(3), &RealMatrix::identity(2), DEFAULT_TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_precision_summary() {
        let a = RealMatrix::<f32>::from_rows(&[[-2.0, 1.0], [0.0, -1.0]]).unwrap();
        let s = spectral_summary(&a, &RealMatrix::identity(2), f32::tol(DEFAULT_TOL)).unwrap();
        assert!(s.is_hurwitz);
        let tr: f32 = s.eigenvalues_a.iter().map(|z| z.re).sum();
        assert!((tr + 3.0).abs() < 1e-5);
    }
}
