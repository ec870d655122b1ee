//! Size sweeps of identical-subsystem cyclic networks at a fixed shape
//! parameter `β`, with `γ` rebuilt for each `n` so that `β` stays put.

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{
    asymptotic_approximation, build_state_matrix, gamma_for_shape, shape_lower_bound, CyclicNetworkParams, Regime,
};
use crate::error::{Error, Result};
use crate::lyapunov::{performance_measure, LinearSystem};
use crate::scalar::Scalar;

pub const DEFAULT_EXACT_CAP: usize = 256;

pub const CSV_HEADER: [&str; 9] =
    ["n", "beta", "gamma", "frak_a", "frak_c", "lower_bound", "exact", "approximation", "h2_norm"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T> {
    pub beta: T,
    pub regime: Regime,
    pub frak_c: T,
    pub n_list: Vec<usize>,
    /// Largest `n` for which the Lyapunov trace is computed.
    pub exact_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord<T> {
    pub n: usize,
    pub beta: T,
    pub gamma: T,
    pub frak_a: T,
    pub frak_c: T,
    pub lower_bound: T,
    pub exact: Option<T>,
    pub approximation: T,
    /// `√lower_bound`.
    pub h2_norm: T,
}

impl<T: Scalar> SweepSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta >= T::zero()) {
            return Err(Error::InvalidParams(format!("beta must be a nonnegative number, got {}", self.beta)));
        }
        match (self.regime, self.beta > T::zero()) {
            (Regime::Unit, true) => {
                return Err(Error::InvalidParams(format!("beta = {} is inconsistent with the unit regime", self.beta)))
            }
            (Regime::SubUnit | Regime::SuperUnit, false) => {
                return Err(Error::InvalidParams("sub and super regimes need beta > 0".into()))
            }
            _ => {}
        }
        if !(self.frak_c.is_finite() && self.frak_c > T::zero()) {
            return Err(Error::InvalidParams(format!("frak_c must be positive, got {}", self.frak_c)));
        }
        if self.n_list.is_empty() {
            return Err(Error::InvalidParams("n-list is empty".into()));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidParams(format!("n = {n} is below the minimum of 2")));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams("n-list must be strictly ascending".into()));
        }
        // γ = cos(β/n) sits on the stability boundary at β = π
        if self.regime == Regime::SubUnit && self.beta >= T::PI() {
            let n = self.n_list[0];
            return Err(Error::Unstable {
                gamma: gamma_for_shape(n, self.beta, self.regime).as_f64(),
                threshold: (T::PI() / T::from_usize_lossy(n)).cos().as_f64(),
            });
        }
        Ok(())
    }
}

pub fn sweep_record<T: Scalar>(spec: &SweepSpec<T>, n: usize) -> Result<SweepRecord<T>> {
    let gamma = gamma_for_shape(n, spec.beta, spec.regime);
    let frak_a = gamma * spec.frak_c;
    let lower_bound = shape_lower_bound(n, spec.beta, spec.frak_c, spec.regime);
    let exact = if n <= spec.exact_cap {
        let params = CyclicNetworkParams::identical(n, frak_a, spec.frak_c)?;
        Some(performance_measure(&LinearSystem::with_identity_weight(build_state_matrix(&params)))?)
    } else {
        None
    };
    Ok(SweepRecord {
        n,
        beta: spec.beta,
        gamma,
        frak_a,
        frak_c: spec.frak_c,
        lower_bound,
        exact,
        approximation: asymptotic_approximation(n, spec.beta, spec.frak_c, spec.regime),
        h2_norm: lower_bound.sqrt(),
    })
}

/// One record per entry of `n_list`, computed in parallel and returned in
/// input order.
pub fn run_sweep<T: Scalar>(spec: &SweepSpec<T>) -> Result<Vec<SweepRecord<T>>> {
    spec.validate()?;
    spec.n_list.par_iter().map(|&n| sweep_record(spec, n)).collect()
}

/// Scientific notation with 17 significant digits.
pub fn format_number<T: Scalar>(x: T) -> String {
    format!("{:.16e}", x.as_f64())
}

/// CSV with [`CSV_HEADER`], `\n` line endings and an empty `exact` field
/// above the cap.
pub fn render_csv<T: Scalar>(records: &[SweepRecord<T>]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("write to memory");
    for r in records {
        w.write_record([
            r.n.to_string(),
            format_number(r.beta),
            format_number(r.gamma),
            format_number(r.frak_a),
            format_number(r.frak_c),
            format_number(r.lower_bound),
            r.exact.map(format_number).unwrap_or_default(),
            format_number(r.approximation),
            format_number(r.h2_norm),
        ])
        .expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}
