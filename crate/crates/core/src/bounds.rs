//! Spectral bounds on the performance measure.
//!
//! For Hurwitz `A` and `Q = CᵀC ⪰ 0`:
//!
//! ```text
//!   −Σ λ_min(Q) / (2 Re λ_i(A))  ≤  Tr(P)  ≤  −Σ λ_i(Q) / (2 λ_i(A_s))
//! ```
//!
//! The lower bound is attained exactly when `A` is normal and `Q` is a
//! multiple of the identity. In the upper bound both spectra are sorted
//! ascending and paired index by index, which pairs the largest weight with
//! the least stable direction of `A_s`. The upper bound needs `A_s` Hurwitz,
//! which does not follow from `A` Hurwitz; when it fails the bound is
//! reported as unavailable.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyapunov::{solve_lyapunov, LinearSystem};
use crate::scalar::Scalar;
use crate::spectra::{spectral_summary, SpectralSummary, DEFAULT_TOL};

/// Relative spread of `λ(Q)` under which all weights count as identical.
pub const Q_SPREAD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerformanceReport<T> {
    pub exact: T,
    pub lower_bound: T,
    /// `None` (JSON `null`) when the symmetric part of `A` is not Hurwitz.
    pub upper_bound: Option<T>,
    pub lower_is_tight: bool,
    pub normality_residual: T,
    pub q_eigen_spread: T,
}

pub fn lower_bound<T: Scalar>(summary: &SpectralSummary<T>) -> Result<T> {
    if !summary.is_hurwitz {
        return Err(summary.not_hurwitz_error());
    }
    let two = T::lit(2.0);
    let qmin = summary.lambda_min_q();
    Ok(-summary.eigenvalues_a.iter().map(|z| qmin / (two * z.re)).sum::<T>())
}

pub fn upper_bound<T: Scalar>(summary: &SpectralSummary<T>) -> Result<T> {
    let max_as = summary.lambda_max_as();
    if max_as >= T::zero() {
        return Err(Error::SymmetricPartNotStable { max_eigenvalue: max_as.as_f64() });
    }
    let two = T::lit(2.0);
    Ok(-summary.eigenvalues_q.iter().zip(&summary.eigenvalues_as).map(|(&lq, &ls)| lq / (two * ls)).sum::<T>())
}

/// Exact value `−Σ q / (2 λ_i(A_s))` for normal `A` and `Q = qI`.
pub fn corollary1_exact<T: Scalar>(summary: &SpectralSummary<T>, q: T) -> Result<T> {
    if !summary.is_normal {
        return Err(Error::NotNormal { residual: summary.normality_residual.as_f64() });
    }
    let tol = T::tol(Q_SPREAD_TOL) * T::one().max(q.abs());
    let spread = summary.eigenvalues_q.iter().fold(T::zero(), |m, &l| m.max((l - q).abs()));
    if spread > tol || q <= T::zero() {
        return Err(Error::UnequalWeights { q: q.as_f64(), spread: spread.as_f64() });
    }
    let max_as = summary.lambda_max_as();
    if max_as >= T::zero() {
        // normal A: λ(A_s) = Re λ(A), so this is the Hurwitz failure
        return Err(summary.not_hurwitz_error());
    }
    let two = T::lit(2.0);
    Ok(-summary.eigenvalues_as.iter().map(|&l| q / (two * l)).sum::<T>())
}

/// Exact value, both bounds and equality diagnostics for a stable system.
pub fn analyze<T: Scalar>(sys: &LinearSystem<T>) -> Result<PerformanceReport<T>> {
    let summary = spectral_summary(sys.a(), sys.q(), T::tol(DEFAULT_TOL))?;
    report_from_summary(sys, &summary)
}

pub fn report_from_summary<T: Scalar>(
    sys: &LinearSystem<T>,
    summary: &SpectralSummary<T>,
) -> Result<PerformanceReport<T>> {
    let lower = lower_bound(summary)?;
    let exact = solve_lyapunov(sys)?.trace;
    let upper = match upper_bound(summary) {
        Ok(u) => Some(u),
        Err(Error::SymmetricPartNotStable { .. }) => None,
        Err(e) => return Err(e),
    };
    let spread = summary.lambda_max_q() - summary.lambda_min_q();
    let equal_weights = spread <= T::tol(Q_SPREAD_TOL) * T::one().max(summary.lambda_max_q());
    Ok(PerformanceReport {
        exact,
        lower_bound: lower,
        upper_bound: upper,
        lower_is_tight: summary.is_normal && equal_weights,
        normality_residual: summary.normality_residual,
        q_eigen_spread: spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_state_matrix, closed_form_lower_bound, CyclicNetworkParams};
    use crate::lyapunov::kron_oracle_solve;
    use crate::matrix::RealMatrix;

    fn summary(a: &RealMatrix<f64>, q: &RealMatrix<f64>) -> SpectralSummary<f64> {
        spectral_summary(a, q, DEFAULT_TOL).unwrap()
    }

    fn neg_identity(n: usize) -> RealMatrix<f64> {
        RealMatrix::identity(n).scale(-1.0)
    }

    #[test]
    fn negative_identity_collapses_everything() {
        for n in 1..5 {
            let s = summary(&neg_identity(n), &RealMatrix::identity(n));
            let half = n as f64 / 2.0;
            assert!((lower_bound(&s).unwrap() - half).abs() < 1e-15);
            assert!((upper_bound(&s).unwrap() - half).abs() < 1e-15);
        }
        let s = summary(&neg_identity(3), &RealMatrix::identity(3));
        assert!((corollary1_exact(&s, 1.0).unwrap() - 1.5).abs() < 1e-15);

        let report = analyze(&LinearSystem::with_identity_weight(neg_identity(2))).unwrap();
        assert!((report.exact - 1.0).abs() < 1e-15);
        assert!((report.lower_bound - 1.0).abs() < 1e-15);
        assert!((report.upper_bound.unwrap() - 1.0).abs() < 1e-15);
        assert!(report.lower_is_tight);
    }

    #[test]
    fn cyclic_four_all_equal_four() {
        let a = build_state_matrix(&CyclicNetworkParams::<f64>::identical(4, 1.0, 1.0).unwrap());
        let report = analyze(&LinearSystem::with_identity_weight(a)).unwrap();
        assert!((report.exact - 4.0).abs() < 1e-12);
        assert!((report.lower_bound - 4.0).abs() < 1e-12);
        assert!((report.upper_bound.unwrap() - 4.0).abs() < 1e-12);
        assert!(report.lower_is_tight);
    }

    #[test]
    fn non_normal_upper_triangular() {
        let a = RealMatrix::from_rows(&[[-1.0, 5.0], [0.0, -1.0]]).unwrap();
        let s = summary(&a, &RealMatrix::identity(2));
        assert!((lower_bound(&s).unwrap() - 1.0).abs() < 1e-14);
        // λ(A_s) = −1 ± 5/2, so A_s has eigenvalue 3/2
        match upper_bound(&s) {
            Err(Error::SymmetricPartNotStable { max_eigenvalue }) => assert!((max_eigenvalue - 1.5).abs() < 1e-14),
            other => panic!("expected SymmetricPartNotStable, got {other:?}"),
        }
        let sys = LinearSystem::with_identity_weight(a);
        // hand solution: p11 = 1/2, p12 = 5/4, p22 = 27/4
        let oracle = kron_oracle_solve(&sys).unwrap();
        assert!((oracle.trace - 7.25).abs() < 1e-13);
        let report = analyze(&sys).unwrap();
        assert!((report.exact - 7.25).abs() < 1e-13);
        assert_eq!(report.upper_bound, None);
        assert!(!report.lower_is_tight);
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["upper_bound"].is_null());
    }

    #[test]
    fn corollary1_cases() {
        // A = S − I with S skew: A_s = −I, Tr(P) = q n / 2
        let s_skew = RealMatrix::from_rows(&[[0.0, 2.0, -1.0], [-2.0, 0.0, 0.5], [1.0, -0.5, 0.0]]).unwrap();
        let a = &s_skew - &RealMatrix::identity(3);
        let q = RealMatrix::identity(3).scale(2.0);
        let s = summary(&a, &q);
        assert!((corollary1_exact(&s, 2.0).unwrap() - 3.0).abs() < 1e-13);
        let exact = solve_lyapunov(&LinearSystem::new(a.clone(), q).unwrap()).unwrap().trace;
        assert!((exact - 3.0).abs() < 1e-12);

        let params = CyclicNetworkParams::identical(6, 2.0, 1.0).unwrap();
        let a = build_state_matrix(&params);
        let s = summary(&a, &RealMatrix::identity(6));
        let via_corollary = corollary1_exact(&s, 1.0).unwrap();
        let via_closed_form = closed_form_lower_bound(&params).unwrap();
        assert!((via_corollary - via_closed_form).abs() < 1e-12 * via_closed_form);
    }

    #[test]
    fn corollary1_preconditions() {
        let p = CyclicNetworkParams::new(vec![1.0; 3], vec![1.0, 2.0, 0.5]).unwrap();
        let s = summary(&build_state_matrix(&p), &RealMatrix::identity(3));
        assert!(matches!(corollary1_exact(&s, 1.0), Err(Error::NotNormal { .. })));
        let s = summary(&neg_identity(2), &RealMatrix::from_diagonal(&[1.0, 2.0]));
        assert!(matches!(corollary1_exact(&s, 1.0), Err(Error::UnequalWeights { .. })));
    }

    #[test]
    fn heterogeneous_cyclic_is_strictly_above_lower_bound() {
        let p = CyclicNetworkParams::<f64>::new(vec![1.0; 3], vec![1.0, 2.0, 0.5]).unwrap();
        let sys = LinearSystem::with_identity_weight(build_state_matrix(&p));
        let report = analyze(&sys).unwrap();
        let oracle = kron_oracle_solve(&sys).unwrap().trace;
        assert!((report.exact - oracle).abs() < 1e-10 * oracle);
        assert!(report.exact - report.lower_bound > 1e-3, "{report:?}");
        assert!(!report.lower_is_tight);
    }

    #[test]
    fn unstable_rejected() {
        let a = RealMatrix::from_rows(&[[0.5, 0.0], [0.0, -1.0]]).unwrap();
        let s = summary(&a, &RealMatrix::identity(2));
        assert!(matches!(lower_bound(&s), Err(Error::NotHurwitz { .. })));
        assert!(matches!(
            analyze(&LinearSystem::with_identity_weight(a)),
            Err(Error::NotHurwitz { re, .. }) if re == 0.5
        ));
    }
}
