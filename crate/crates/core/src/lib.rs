//! Steady-state performance of linear networks driven by white noise.
//!
//! For `ẋ = Ax + ξ` with Hurwitz `A` and output weight `Q ⪰ 0`, the measure
//! `Tr(P)` with `PA + AᵀP + Q = 0` is the squared H₂ norm. This crate solves
//! for it exactly ([`lyapunov`]), brackets it from the spectra of `A`, its
//! symmetric part and `Q` ([`bounds`]), evaluates the closed forms available
//! for cyclic networks ([`cyclic`], [`sweep`]) and estimates it by simulation
//! ([`montecarlo`]).
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.
//!
//! ```
//! use netperf::{analyze, Matrix, System};
//!
//! let a = Matrix::from_rows(&[[-1.0, 1.0], [0.0, -2.0]]).unwrap();
//! let report = analyze(&System::with_identity_weight(a)).unwrap();
//! assert!(report.lower_bound <= report.exact);
//! assert!((report.exact - 5.0 / 6.0).abs() < 1e-12);
//! ```

mod dense;

pub mod bounds;
pub mod cyclic;
pub mod error;
pub mod lyapunov;
pub mod matrix;
pub mod montecarlo;
pub mod scalar;
pub mod spectra;
pub mod sweep;

pub use bounds::{analyze, corollary1_exact, lower_bound, upper_bound, PerformanceReport};
pub use cyclic::{
    asymptotic_approximation, build_state_matrix, closed_form_eigenvalues, closed_form_lower_bound,
    corollary2_upper_bound, derive, secant_criterion, CyclicDerived, CyclicNetworkParams, Regime,
};
pub use error::{Error, Result};
pub use lyapunov::{
    kron_oracle_solve, performance_measure, restricted_dispersion, solve_controllability_lyapunov, solve_lyapunov,
    LinearSystem, LyapunovSolution,
};
pub use matrix::RealMatrix;
pub use montecarlo::{simulate_dispersion, DispersionEstimate, SimulationConfig};
pub use scalar::Scalar;
pub use spectra::{spectral_summary, SpectralSummary};
pub use sweep::{render_csv, run_sweep, SweepRecord, SweepSpec};

pub type Matrix = RealMatrix<f64>;
pub type System = LinearSystem<f64>;
pub type Solution = LyapunovSolution<f64>;
pub type Summary = SpectralSummary<f64>;
pub type Report = PerformanceReport<f64>;
pub type CyclicParams = CyclicNetworkParams<f64>;
pub type Derived = CyclicDerived<f64>;
pub type SimConfig = SimulationConfig<f64>;
pub type Estimate = DispersionEstimate<f64>;
pub type Sweep = SweepSpec<f64>;
pub type Record = SweepRecord<f64>;
