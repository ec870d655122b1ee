//! Euler–Maruyama simulation of `ẋ = Ax + ξ` with unit-intensity white
//! noise, used as a stochastic cross-check on the Lyapunov trace.
//!
//! Each ensemble member draws from its own ChaCha8 stream: the generator is
//! seeded with `ChaCha8Rng::seed_from_u64(seed)` and switched to stream
//! `ensemble_index` with `set_stream`. Results therefore do not depend on
//! how ensembles are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lyapunov::{ensure_hurwitz, LinearSystem};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;
use crate::spectra;

/// `dt` must stay below this fraction of `1/‖A‖_F`.
pub const STEP_FRACTION: f64 = 0.1;

/// A trajectory is abandoned once `‖x‖` exceeds this.
pub const DIVERGENCE_NORM: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig<T> {
    pub dt: T,
    pub horizon: T,
    pub burn_in: T,
    pub ensembles: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionEstimate<T> {
    pub mean: T,
    /// Standard error of the mean across ensemble members; zero with a
    /// single ensemble.
    pub stderr: T,
    /// Post-burn-in samples over all ensembles.
    pub samples: usize,
}

impl<T: Scalar> SimulationConfig<T> {
    /// Config with burn-in set by [`default_burn_in`].
    pub fn with_default_burn_in(a: &RealMatrix<T>, dt: T, horizon: T, ensembles: usize, seed: u64) -> Result<Self> {
        Ok(Self { dt, horizon, burn_in: default_burn_in(a)?, ensembles, seed })
    }

    fn validate(&self, a: &RealMatrix<T>) -> Result<()> {
        let positive = |x: T| x.is_finite() && x > T::zero();
        if !(positive(self.dt) && positive(self.horizon) && positive(self.burn_in)) {
            return Err(Error::InvalidParams("dt, horizon and burn_in must be positive and finite".into()));
        }
        if self.burn_in >= self.horizon {
            return Err(Error::InvalidParams(format!(
                "burn_in {} must be shorter than horizon {}",
                self.burn_in, self.horizon
            )));
        }
        if self.ensembles == 0 {
            return Err(Error::InvalidParams("need at least one ensemble".into()));
        }
        let limit = step_limit(a);
        if self.dt >= limit {
            return Err(Error::StepTooLarge { dt: self.dt.as_f64(), limit: limit.as_f64() });
        }
        Ok(())
    }

    fn step_counts(&self) -> (usize, usize) {
        let total = (self.horizon / self.dt).round().to_usize().unwrap_or(usize::MAX);
        let burn = (self.burn_in / self.dt).ceil().to_usize().unwrap_or(usize::MAX);
        (total, burn)
    }
}

/// `0.1 / ‖A‖_F`.
pub fn step_limit<T: Scalar>(a: &RealMatrix<T>) -> T {
    T::lit(STEP_FRACTION) / a.frobenius_norm()
}

/// Ten slowest time constants, `10 / |max Re λ(A)|`.
pub fn default_burn_in<T: Scalar>(a: &RealMatrix<T>) -> Result<T> {
    ensure_hurwitz(a)?;
    let slowest = spectra::eigenvalues(a)?.iter().map(|z| z.re).fold(T::neg_infinity(), T::max);
    Ok(T::lit(10.0) / slowest.abs())
}

/// Discretisation bias allowance `‖A‖_F · dt · Tr(P)`. Euler–Maruyama has weak
/// order one; on the scalar case `ẋ = −ax + ξ` the stationary variance of the
/// recursion is `1/(2a − a²dt)`, a relative bias of `a·dt/2 + O(dt²)`, and
/// `‖A‖_F` bounds `a` with room to spare.
pub fn bias_budget<T: Scalar>(a: &RealMatrix<T>, dt: T, trace: T) -> T {
    a.frobenius_norm() * dt * trace
}

pub fn simulate_dispersion<T>(sys: &LinearSystem<T>, cfg: &SimulationConfig<T>) -> Result<DispersionEstimate<T>>
where
    T: Scalar,
    StandardNormal: Distribution<T>,
{
    let a = sys.a();
    ensure_hurwitz(a)?;
    cfg.validate(a)?;
    let (total, burn) = cfg.step_counts();
    if burn >= total {
        return Err(Error::InvalidParams("burn-in leaves no samples".into()));
    }
    let kept = total - burn;

    let means = (0..cfg.ensembles)
        .into_par_iter()
        .map(|e| run_member(sys, cfg, e as u64, total, burn).map(|sum| sum / kept as f64))
        .collect::<Result<Vec<f64>>>()?;

    let m = means.len() as f64;
    let mean = means.iter().sum::<f64>() / m;
    let stderr = if means.len() > 1 {
        let var = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
        (var / m).sqrt()
    } else {
        0.0
    };
    Ok(DispersionEstimate { mean: T::lit(mean), stderr: T::lit(stderr), samples: kept * cfg.ensembles })
}

// Sum of xᵀQx over the kept steps of one trajectory, accumulated in f64.
fn run_member<T>(
    sys: &LinearSystem<T>,
    cfg: &SimulationConfig<T>,
    stream: u64,
    total: usize,
    burn: usize,
) -> Result<f64>
where
    T: Scalar,
    StandardNormal: Distribution<T>,
{
    let (a, q) = (sys.a(), sys.q());
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let sqrt_dt = cfg.dt.sqrt();
    let limit = DIVERGENCE_NORM * DIVERGENCE_NORM;
    let mut x = vec![T::zero(); n];
    let mut next = vec![T::zero(); n];
    let mut sum = 0.0f64;
    for step in 1..=total {
        for (i, out) in next.iter_mut().enumerate() {
            let ax: T = a.row(i).iter().zip(&x).map(|(&aij, &xj)| aij * xj).sum();
            let w: T = StandardNormal.sample(&mut rng);
            *out = x[i] + cfg.dt * ax + sqrt_dt * w;
        }
        std::mem::swap(&mut x, &mut next);
        let norm2 = x.iter().map(|v| v.as_f64().powi(2)).sum::<f64>();
        if norm2.is_nan() || norm2 > limit {
            return Err(Error::Diverged { step });
        }
        if step > burn {
            sum += q.quadratic_form(&x).as_f64();
        }
    }
    Ok(sum)
}
