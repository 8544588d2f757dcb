//! Optimal globalization intensity.
//!
//! `M*` comes from the first-order condition `MB(M) = MC(M)`:
//!
//! ```text
//! M* = K^(φ/(φ−θ)) · [α(1+δ)θ / (γφ)]^(1/(φ−θ))
//! ```
//!
//! Welfare is strictly unimodal on `(0, ∞)` (benefit strictly concave, cost
//! strictly convex), so a derivative-free golden-section search over welfare
//! values alone doubles as an independent oracle for the closed form.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::ModelParams;

/// Lower edge of every search bracket. Marginal benefit diverges at zero
/// flow, so solvers never touch `m = 0`; welfare itself is finite there.
pub const M_LOWER_BOUND: f64 = 1e-9;

/// Relative half-width of the band treated as "at the optimum".
const ZONE_REL_TOL: f64 = 1e-9;

const MAX_BRACKET_DOUBLINGS: usize = 60;
const MAX_GOLDEN_ITERATIONS: usize = 1_000;
/// 1/φ where φ is the golden ratio.
const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// How an equilibrium was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    ClosedForm,
    GoldenSection,
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveMethod::ClosedForm => f.write_str("closed_form"),
            SolveMethod::GoldenSection => f.write_str("golden_section"),
        }
    }
}

/// Solved optimum together with the optimality diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResult {
    pub m_star: f64,
    /// Welfare at the optimum.
    pub w_star: f64,
    pub mb_at_star: f64,
    pub mc_at_star: f64,
    /// `W''(M*)`; strictly negative for every valid parameter vector.
    pub soc_value: f64,
    pub method: SolveMethod,
}

/// Which side of its optimum an economy sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Zone {
    /// `m_actual < M*`: marginal benefit still exceeds marginal cost.
    Climbing,
    AtOptimum,
    /// `m_actual > M*`: congestion costs dominate at the margin.
    Diseconomy,
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zone::Climbing => f.write_str("climbing"),
            Zone::AtOptimum => f.write_str("at_optimum"),
            Zone::Diseconomy => f.write_str("diseconomy"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoneDiagnosis {
    pub zone: Zone,
    pub m_actual: f64,
    pub m_star: f64,
    /// `m_actual − m_star`.
    pub gap: f64,
}

/// Change in the optimum induced by moving capacity to `k_new`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityDividend {
    pub m_star_old: f64,
    pub m_star_new: f64,
    pub delta_m_star: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no interior maximum found: welfare still rising after {0} bracket doublings")]
    BracketExhausted(usize),
    #[error("bracket_hi and tol must be positive (got bracket_hi={bracket_hi}, tol={tol})")]
    InvalidArguments { bracket_hi: f64, tol: f64 },
}

/// Closed-form optimum from the first-order condition.
pub fn optimal_m_closed_form(params: &ModelParams) -> EquilibriumResult {
    let spread = params.phi() - params.theta();
    let constant = params.alpha() * (1.0 + params.delta()) * params.theta()
        / (params.gamma() * params.phi());
    let m_star = params.capacity().powf(params.phi() / spread) * constant.powf(1.0 / spread);
    equilibrium_at(params, m_star, SolveMethod::ClosedForm)
}

/// Golden-section maximization of welfare over `[M_LOWER_BOUND, bracket_hi]`.
///
/// The bracket is verified to contain the peak: if welfare is still rising at
/// `bracket_hi` the bound doubles, up to [`MAX_BRACKET_DOUBLINGS`] times.
/// `tol` is relative to the midpoint of the final bracket.
pub fn optimal_m_numeric(
    params: &ModelParams,
    bracket_hi: f64,
    tol: f64,
) -> Result<EquilibriumResult, SolveError> {
    if !(bracket_hi > 0.0) || !(tol > 0.0) {
        return Err(SolveError::InvalidArguments { bracket_hi, tol });
    }
    let hi = expand_bracket(params, bracket_hi)?;
    let m_star = golden_section_max(|m| params.welfare(m), M_LOWER_BOUND, hi, tol);
    Ok(equilibrium_at(params, m_star, SolveMethod::GoldenSection))
}

/// `W''(M) = α(1+δ)θ(θ−1)·M^(θ−2) − γφ(φ−1)·K^(−φ)·M^(φ−2)`.
///
/// Both terms are negative contributions for valid parameters (θ < 1,
/// φ > 1), so the value is strictly negative for every `m > 0`.
pub fn soc_check(params: &ModelParams, m: f64) -> f64 {
    let benefit_curvature = params.alpha()
        * (1.0 + params.delta())
        * params.theta()
        * (params.theta() - 1.0)
        * m.powf(params.theta() - 2.0);
    let cost_curvature = params.gamma()
        * params.phi()
        * (params.phi() - 1.0)
        * params.capacity().powf(-params.phi())
        * m.powf(params.phi() - 2.0);
    benefit_curvature - cost_curvature
}

/// Locate `m_actual` relative to the closed-form optimum.
pub fn classify_zone(params: &ModelParams, m_actual: f64) -> ZoneDiagnosis {
    let m_star = optimal_m_closed_form(params).m_star;
    ZoneDiagnosis {
        zone: zone_for(m_actual, m_star),
        m_actual,
        m_star,
        gap: m_actual - m_star,
    }
}

pub(crate) fn zone_for(m_actual: f64, m_star: f64) -> Zone {
    let tol = ZONE_REL_TOL * (1.0 + m_star);
    let gap = m_actual - m_star;
    if gap < -tol {
        Zone::Climbing
    } else if gap > tol {
        Zone::Diseconomy
    } else {
        Zone::AtOptimum
    }
}

/// Optima under the current capacity and under `k_new`, plus the difference.
/// The difference is strictly positive exactly when `k_new` exceeds the
/// current capacity.
pub fn capacity_dividend(
    params: &ModelParams,
    k_new: f64,
) -> Result<CapacityDividend, crate::params::ParamError> {
    let upgraded = params.with_capacity(k_new)?;
    let m_star_old = optimal_m_closed_form(params).m_star;
    let m_star_new = optimal_m_closed_form(&upgraded).m_star;
    Ok(CapacityDividend {
        m_star_old,
        m_star_new,
        delta_m_star: m_star_new - m_star_old,
    })
}

fn equilibrium_at(params: &ModelParams, m_star: f64, method: SolveMethod) -> EquilibriumResult {
    EquilibriumResult {
        m_star,
        w_star: params.welfare(m_star),
        mb_at_star: params
            .marginal_benefit(m_star)
            .expect("solved optimum is strictly positive"),
        mc_at_star: params.marginal_cost(m_star),
        soc_value: soc_check(params, m_star),
        method,
    }
}

/// Double `hi` until welfare is decreasing there, comparing welfare values
/// only (marginals are kept out of the numeric path on purpose).
fn expand_bracket(params: &ModelParams, bracket_hi: f64) -> Result<f64, SolveError> {
    let mut hi = bracket_hi;
    for _ in 0..=MAX_BRACKET_DOUBLINGS {
        let probe = hi * (1.0 - 1e-3);
        if params.welfare(probe) > params.welfare(hi) {
            return Ok(hi);
        }
        hi *= 2.0;
    }
    Err(SolveError::BracketExhausted(MAX_BRACKET_DOUBLINGS))
}

fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut x1 = hi - INV_GOLDEN * (hi - lo);
    let mut x2 = lo + INV_GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_GOLDEN_ITERATIONS {
        if hi - lo <= tol * 0.5 * (lo.abs() + hi.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLDEN * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}
