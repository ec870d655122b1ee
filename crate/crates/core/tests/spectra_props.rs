mod common;

use common::{rng, stable_normal, uniform};
use netperf::spectra::{self, symmetric_eigenvalues, symmetric_part};
use netperf::{spectral_summary, Matrix};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_sum_to_trace(seed in any::<u64>(), n in 1usize..16) {
        let a = uniform(&mut rng(seed), n);
        let ev = spectra::eigenvalues(&a).unwrap();
        let re: f64 = ev.iter().map(|z| z.re).sum();
        let im: f64 = ev.iter().map(|z| z.im).sum();
        prop_assert!((re - a.trace()).abs() < 1e-10 * (1.0 + a.frobenius_norm()));
        prop_assert!(im.abs() < 1e-10 * (1.0 + a.frobenius_norm()));
        let sym: f64 = symmetric_eigenvalues(&symmetric_part(&a)).unwrap().iter().sum();
        prop_assert!((sym - a.trace()).abs() < 1e-10 * (1.0 + a.frobenius_norm()));
    }

    #[test]
    fn real_parts_lie_within_symmetric_spectrum(seed in any::<u64>(), n in 1usize..16) {
        let a = uniform(&mut rng(seed), n);
        let s = spectral_summary(&a, &Matrix::identity(n), spectra::DEFAULT_TOL).unwrap();
        let lo = s.eigenvalues_as[0];
        let hi = s.lambda_max_as();
        for z in &s.eigenvalues_a {
            prop_assert!(z.re <= hi + 1e-10 && z.re >= lo - 1e-10, "{} outside [{lo}, {hi}]", z.re);
        }
    }

    #[test]
    fn normal_matrices_share_real_spectrum_with_symmetric_part(seed in any::<u64>(), n in 1usize..12) {
        let a = stable_normal(&mut rng(seed), n);
        let s = spectral_summary(&a, &Matrix::identity(n), spectra::DEFAULT_TOL).unwrap();
        prop_assert!(s.is_normal, "residual {}", s.normality_residual);
        prop_assert!(s.is_hurwitz);
        let mut re: Vec<f64> = s.eigenvalues_a.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (x, y) in re.iter().zip(&s.eigenvalues_as) {
            prop_assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn symmetric_part_is_linear_and_idempotent(seed in any::<u64>(), n in 1usize..10, alpha in -3.0f64..3.0) {
        let mut r = rng(seed);
        let (a, b) = (uniform(&mut r, n), uniform(&mut r, n));
        let lhs = symmetric_part(&(&a.scale(alpha) + &b));
        let rhs = &symmetric_part(&a).scale(alpha) + &symmetric_part(&b);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-14);
        let once = symmetric_part(&a);
        prop_assert_eq!(symmetric_part(&once), once.clone());
        prop_assert!(once.is_symmetric_exact());
    }

    #[test]
    fn single_and_double_precision_agree(seed in any::<u64>(), n in 1usize..8) {
        let a = uniform(&mut rng(seed), n);
        let a32 = netperf::RealMatrix::<f32>::from_row_major(n, a.as_slice().iter().map(|&x| x as f32).collect()).unwrap();
        let t64: f64 = spectra::eigenvalues(&a).unwrap().iter().map(|z| (z * z).re).sum();
        let t32: f32 = spectra::eigenvalues(&a32).unwrap().iter().map(|z| (z * z).re).sum();
        prop_assert!((t64 - t32 as f64).abs() < 1e-3 * (1.0 + t64.abs()));
    }
}
