//! Cyclic networks of first-order subsystems
//! `ẋ_i = −a_i x_i + c_{i−1} x_{i−1} + ξ_i` closed by negative feedback from
//! the last subsystem into the first.
//!
//! With `𝔞`, `𝔠` the geometric means of the decay rates and gains, and
//! `γ = 𝔞/𝔠`, the network is stable when `γ > cos(π/n)`. For identical decay
//! rates the eigenvalues are `−𝔞 + 𝔠·e^{i(π/n + 2πk/n)}` and the spectral
//! lower bound on `Tr(P)` has the closed form evaluated by
//! [`closed_form_lower_bound`], in terms of the shape parameter
//! `β = n·arccos γ` (γ ≤ 1) or `β = n·arcosh γ` (γ > 1). At fixed `β` it
//! grows like `n²`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

/// `|γ − 1|` at or below this is treated as the `γ = 1` regime.
pub const REGIME_TIE_TOL: f64 = 1e-12;

/// Relative spread under which per-subsystem parameters count as identical.
pub const IDENTICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams<T>", into = "ExplicitParams<T>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct CyclicNetworkParams<T> {
    a: Vec<T>,
    c: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// γ < 1
    SubUnit,
    /// γ = 1
    Unit,
    /// γ > 1
    SuperUnit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicDerived<T> {
    pub frak_a: T,
    pub frak_c: T,
    pub gamma: T,
    pub beta: T,
    pub regime: Regime,
    pub secant_stable: bool,
    pub identical_a: bool,
    pub identical_c: bool,
}

impl<T: Scalar> CyclicNetworkParams<T> {
    pub fn new(a: Vec<T>, c: Vec<T>) -> Result<Self> {
        if a.len() != c.len() {
            return Err(Error::InvalidParams(format!("a has {} entries but c has {}", a.len(), c.len())));
        }
        if a.len() < 2 {
            return Err(Error::InvalidParams(format!("need n >= 2 subsystems, got {}", a.len())));
        }
        for (name, v) in [("a", &a), ("c", &c)] {
            if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x > T::zero())) {
                return Err(Error::InvalidParams(format!("{name}[{i}] = {x} is not a positive finite number")));
            }
        }
        Ok(Self { a, c })
    }

    /// `n` identical subsystems with decay `frak_a` and gain `frak_c`.
    pub fn identical(n: usize, frak_a: T, frak_c: T) -> Result<Self> {
        Self::new(vec![frak_a; n], vec![frak_c; n])
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn c(&self) -> &[T] {
        &self.c
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawParams<T> {
    Explicit(ExplicitParams<T>),
    Shorthand(ShorthandParams<T>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitParams<T> {
    n: usize,
    a: Vec<T>,
    c: Vec<T>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShorthandParams<T> {
    n: usize,
    frak_a: T,
    frak_c: T,
}

impl<T: Scalar> TryFrom<RawParams<T>> for CyclicNetworkParams<T> {
    type Error = Error;

    fn try_from(raw: RawParams<T>) -> Result<Self> {
        match raw {
            RawParams::Explicit(p) => {
                if p.a.len() != p.n || p.c.len() != p.n {
                    return Err(Error::InvalidParams(format!(
                        "n = {} but a has {} entries and c has {}",
                        p.n,
                        p.a.len(),
                        p.c.len()
                    )));
                }
                Self::new(p.a, p.c)
            }
            RawParams::Shorthand(p) => Self::identical(p.n, p.frak_a, p.frak_c),
        }
    }
}

impl<T: Scalar> From<CyclicNetworkParams<T>> for ExplicitParams<T> {
    fn from(p: CyclicNetworkParams<T>) -> Self {
        Self { n: p.a.len(), a: p.a, c: p.c }
    }
}

// Geometric mean in log space; exact when all entries are equal.
fn geometric_mean<T: Scalar>(v: &[T]) -> T {
    if v.iter().all(|&x| x == v[0]) {
        return v[0];
    }
    let mean_log = v.iter().map(|x| x.ln()).sum::<T>() / T::from_usize_lossy(v.len());
    mean_log.exp()
}

fn all_identical<T: Scalar>(v: &[T]) -> bool {
    let (lo, hi) = v.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    hi - lo <= T::tol(IDENTICAL_TOL) * hi.abs()
}

/// State matrix: `−a_i` on the diagonal, `c_i` at `(i+1, i)`, `−c_n` in the
/// top-right corner.
pub fn build_state_matrix<T: Scalar>(params: &CyclicNetworkParams<T>) -> RealMatrix<T> {
    let n = params.n();
    let mut m = RealMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = -params.a[i];
    }
    for i in 0..n - 1 {
        m[(i + 1, i)] = params.c[i];
    }
    m[(0, n - 1)] = -params.c[n - 1];
    m
}

pub fn stability_threshold<T: Scalar>(n: usize) -> T {
    (T::PI() / T::from_usize_lossy(n)).cos()
}

pub fn regime_of<T: Scalar>(gamma: T) -> Regime {
    if (gamma - T::one()).abs() <= T::tol(REGIME_TIE_TOL) {
        Regime::Unit
    } else if gamma < T::one() {
        Regime::SubUnit
    } else {
        Regime::SuperUnit
    }
}

/// `β` for a given `γ`; zero in the tie band around `γ = 1`.
pub fn beta_of<T: Scalar>(n: usize, gamma: T) -> T {
    let n = T::from_usize_lossy(n);
    match regime_of(gamma) {
        Regime::Unit => T::zero(),
        Regime::SubUnit => gamma.acos() * n,
        Regime::SuperUnit => gamma.acosh() * n,
    }
}

/// `γ` reconstructed from a fixed shape parameter: `cos(β/n)`, `1` or `cosh(β/n)`.
pub fn gamma_for_shape<T: Scalar>(n: usize, beta: T, regime: Regime) -> T {
    let x = beta / T::from_usize_lossy(n);
    match regime {
        Regime::SubUnit => x.cos(),
        Regime::Unit => T::one(),
        Regime::SuperUnit => x.cosh(),
    }
}

pub fn derive<T: Scalar>(params: &CyclicNetworkParams<T>) -> CyclicDerived<T> {
    let n = params.n();
    let frak_a = geometric_mean(&params.a);
    let frak_c = geometric_mean(&params.c);
    let gamma = frak_a / frak_c;
    CyclicDerived {
        frak_a,
        frak_c,
        gamma,
        beta: beta_of(n, gamma),
        regime: regime_of(gamma),
        secant_stable: gamma > stability_threshold(n),
        identical_a: all_identical(&params.a),
        identical_c: all_identical(&params.c),
    }
}

/// `γ > cos(π/n)`. Necessary and sufficient for identical decay rates; for
/// heterogeneous `a_i` the numeric Hurwitz test on [`build_state_matrix`] is
/// authoritative.
pub fn secant_criterion<T: Scalar>(params: &CyclicNetworkParams<T>) -> bool {
    derive(params).secant_stable
}

pub fn closed_form_eigenvalues<T: Scalar>(params: &CyclicNetworkParams<T>) -> Result<Vec<Complex<T>>> {
    let d = derive(params);
    if !d.identical_a {
        return Err(Error::HeterogeneousDecay);
    }
    let n = params.n();
    let nf = T::from_usize_lossy(n);
    Ok((0..n)
        .map(|k| {
            let theta = (T::PI() + T::lit(2.0) * T::PI() * T::from_usize_lossy(k)) / nf;
            Complex::new(-d.frak_a + d.frak_c * theta.cos(), d.frak_c * theta.sin())
        })
        .collect())
}

/// Closed-form value of `−Σ 1/(2 Re λ_k)` for identical decay rates and
/// `Q = I`. Equals `Tr(P)` exactly when the gains are identical too and is a
/// strict lower bound otherwise.
pub fn closed_form_lower_bound<T: Scalar>(params: &CyclicNetworkParams<T>) -> Result<T> {
    let d = derive(params);
    if !d.identical_a {
        return Err(Error::HeterogeneousDecay);
    }
    if !d.secant_stable {
        return Err(Error::Unstable {
            gamma: d.gamma.as_f64(),
            threshold: stability_threshold::<T>(params.n()).as_f64(),
        });
    }
    Ok(shape_lower_bound(params.n(), d.beta, d.frak_c, d.regime))
}

/// The closed form as a function of `(n, β, 𝔠, regime)`:
///
/// ```text
///   γ < 1:  n·tan(β/2) / (2𝔠·sin(β/n))
///   γ = 1:  n² / (4𝔠)
///   γ > 1:  n·tanh(β/2) / (2𝔠·sinh(β/n))
/// ```
///
/// No stability check; the `γ < 1` branch diverges as `β → π`.
pub fn shape_lower_bound<T: Scalar>(n: usize, beta: T, frak_c: T, regime: Regime) -> T {
    let nf = T::from_usize_lossy(n);
    let two = T::lit(2.0);
    match regime {
        _ if beta == T::zero() => nf * nf / (T::lit(4.0) * frak_c),
        Regime::Unit => nf * nf / (T::lit(4.0) * frak_c),
        Regime::SubUnit => nf * (beta / two).tan() / (two * frak_c * (beta / nf).sin()),
        Regime::SuperUnit => nf * (beta / two).tanh() / (two * frak_c * (beta / nf).sinh()),
    }
}

/// Large-`n` approximation at fixed `β`: `tan(β/2)/(2𝔠β)·n²`, `n²/(4𝔠)` or
/// `tanh(β/2)/(2𝔠β)·n²`.
pub fn asymptotic_approximation<T: Scalar>(n: usize, beta: T, frak_c: T, regime: Regime) -> T {
    let n2 = T::from_usize_lossy(n).powi(2);
    let two = T::lit(2.0);
    match regime {
        _ if beta == T::zero() => n2 / (T::lit(4.0) * frak_c),
        Regime::Unit => n2 / (T::lit(4.0) * frak_c),
        Regime::SubUnit => (beta / two).tan() / (two * frak_c * beta) * n2,
        Regime::SuperUnit => (beta / two).tanh() / (two * frak_c * beta) * n2,
    }
}

/// `1 / (2(𝔞 − 𝔠 cos(π/n)))`: bound on the steady-state variance of the
/// last subsystem's state, for identical subsystems.
pub fn corollary2_upper_bound<T: Scalar>(params: &CyclicNetworkParams<T>) -> Result<T> {
    let d = derive(params);
    if !(d.identical_a && d.identical_c) {
        return Err(Error::HeterogeneousParams);
    }
    let threshold = stability_threshold::<T>(params.n());
    if !d.secant_stable {
        return Err(Error::Unstable { gamma: d.gamma.as_f64(), threshold: threshold.as_f64() });
    }
    Ok(T::one() / (T::lit(2.0) * (d.frak_a - d.frak_c * threshold)))
}
