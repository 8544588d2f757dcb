//! Calibrated presets, welfare curves, sensitivity sweeps, and the
//! two-group fracture analysis.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equilibrium::{optimal_m_closed_form, zone_for, Zone};
use crate::params::{ModelParams, ParamError, ScenarioPreset};

/// The built-in calibrations.
///
/// `us-baseline` and `china-baseline` carry the headline parameter vectors;
/// `us-counterfactual-k8` upgrades US capacity to the Chinese level, and
/// `us-incumbents` / `us-elites` split the US into its low- and
/// high-capacity constituencies. All sit at the observed intensity `M = 6`.
pub fn builtin_presets() -> Vec<ScenarioPreset> {
    let us = ModelParams::new(2.0, 0.0, 0.6, 1.0, 2.5, 5.0).expect("valid baseline");
    let cn = ModelParams::new(1.0, 0.5, 0.6, 1.0, 2.5, 8.0).expect("valid baseline");
    let preset = |name, params, m_actual| ScenarioPreset {
        name,
        params,
        m_actual,
    };
    vec![
        preset("us-baseline", us, 6.0),
        preset("china-baseline", cn, 6.0),
        preset(
            "us-counterfactual-k8",
            us.with_capacity(8.0).expect("valid capacity"),
            6.0,
        ),
        preset(
            "us-incumbents",
            us.with_capacity(4.0).expect("valid capacity"),
            6.0,
        ),
        preset(
            "us-elites",
            us.with_capacity(7.0).expect("valid capacity"),
            6.0,
        ),
    ]
}

/// Look up a built-in preset by name.
pub fn find_preset(name: &str) -> Option<ScenarioPreset> {
    builtin_presets().into_iter().find(|p| p.name == name)
}

/// Benefit, cost, and welfare sampled on a uniform grid, for plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub m_grid: Vec<f64>,
    pub benefit_values: Vec<f64>,
    pub cost_values: Vec<f64>,
    pub welfare_values: Vec<f64>,
    /// Closed-form `M*`, for marking the peak.
    pub m_star_marker: f64,
}

/// Sample the three curves on `n_points` uniformly spaced values of `m`
/// from 0 to `m_max` inclusive. Welfare is computed as `benefit − cost`
/// from the sampled values, so the identity holds exactly pointwise.
pub fn welfare_curve(params: &ModelParams, m_max: f64, n_points: usize) -> CurveSample {
    assert!(m_max > 0.0, "m_max must be positive");
    assert!(n_points >= 2, "need at least the two endpoints");
    let denom = (n_points - 1) as f64;
    let mut m_grid = Vec::with_capacity(n_points);
    let mut benefit_values = Vec::with_capacity(n_points);
    let mut cost_values = Vec::with_capacity(n_points);
    let mut welfare_values = Vec::with_capacity(n_points);
    for i in 0..n_points {
        // Fraction first so the i = 0 and i = n−1 gridpoints are exact.
        let m = m_max * (i as f64 / denom);
        let b = params.benefit(m);
        let c = params.congestion_cost(m);
        m_grid.push(m);
        benefit_values.push(b);
        cost_values.push(c);
        welfare_values.push(b - c);
    }
    CurveSample {
        m_grid,
        benefit_values,
        cost_values,
        welfare_values,
        m_star_marker: optimal_m_closed_form(params).m_star,
    }
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweptParameter {
    Alpha,
    Delta,
    Theta,
    Gamma,
    Phi,
    Capacity,
}

impl fmt::Display for SweptParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SweptParameter::Alpha => "alpha",
            SweptParameter::Delta => "delta",
            SweptParameter::Theta => "theta",
            SweptParameter::Gamma => "gamma",
            SweptParameter::Phi => "phi",
            SweptParameter::Capacity => "capacity",
        };
        f.write_str(name)
    }
}

impl FromStr for SweptParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha" => Ok(SweptParameter::Alpha),
            "delta" => Ok(SweptParameter::Delta),
            "theta" => Ok(SweptParameter::Theta),
            "gamma" => Ok(SweptParameter::Gamma),
            "phi" => Ok(SweptParameter::Phi),
            "capacity" => Ok(SweptParameter::Capacity),
            other => Err(format!(
                "unknown parameter {other:?} (expected one of alpha, delta, theta, gamma, phi, capacity)"
            )),
        }
    }
}

/// Equilibrium at one swept value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub m_star: f64,
    pub w_star: f64,
    /// Zone of the sweep's reference intensity under this parameter value.
    pub zone: Zone,
}

/// A swept value either solves or is rejected with the validation message;
/// rejections never abort the rest of the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepOutcome {
    Solved(SweepPoint),
    Rejected { error: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter_value: f64,
    #[serde(flatten)]
    pub outcome: SweepOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub swept_parameter: SweptParameter,
    pub reference_m_actual: f64,
    /// Rows sorted ascending by parameter value.
    pub rows: Vec<SweepRow>,
}

/// Re-solve the equilibrium across `values` of one parameter, classifying
/// `reference_m` under each. Rows are computed in parallel and emitted in
/// ascending value order.
pub fn sensitivity_sweep(
    base: &ModelParams,
    which: SweptParameter,
    values: &[f64],
    reference_m: f64,
) -> SweepResult {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rows = sorted
        .par_iter()
        .map(|&value| {
            let outcome = match substitute(base, which, value) {
                Ok(params) => {
                    let eq = optimal_m_closed_form(&params);
                    SweepOutcome::Solved(SweepPoint {
                        m_star: eq.m_star,
                        w_star: eq.w_star,
                        zone: zone_for(reference_m, eq.m_star),
                    })
                }
                Err(err) => SweepOutcome::Rejected {
                    error: err.to_string(),
                },
            };
            SweepRow {
                parameter_value: value,
                outcome,
            }
        })
        .collect();
    SweepResult {
        swept_parameter: which,
        reference_m_actual: reference_m,
        rows,
    }
}

fn substitute(base: &ModelParams, which: SweptParameter, value: f64) -> Result<ModelParams, ParamError> {
    let (mut alpha, mut delta, mut theta, mut gamma, mut phi, mut capacity) = (
        base.alpha(),
        base.delta(),
        base.theta(),
        base.gamma(),
        base.phi(),
        base.capacity(),
    );
    match which {
        SweptParameter::Alpha => alpha = value,
        SweptParameter::Delta => delta = value,
        SweptParameter::Theta => theta = value,
        SweptParameter::Gamma => gamma = value,
        SweptParameter::Phi => phi = value,
        SweptParameter::Capacity => capacity = value,
    }
    ModelParams::new(alpha, delta, theta, gamma, phi, capacity)
}

/// One economy split into groups that share the benefit and cost shape but
/// access different institutional capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct FracturedEconomy {
    groups: Vec<(String, ModelParams)>,
    m_actual: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FractureError {
    #[error("need at least two groups (got {0})")]
    TooFewGroups(usize),
    #[error("duplicate group label {0:?}")]
    DuplicateLabel(String),
    #[error("m_actual must be non-negative (got {0})")]
    NegativeMActual(f64),
    #[error("group {label:?}: {source}")]
    InvalidGroup {
        label: String,
        source: ParamError,
    },
}

impl FracturedEconomy {
    /// Build from a shared parameter template (its capacity is ignored) and
    /// per-group `(label, capacity)` pairs, kept in input order.
    pub fn new(
        template: &ModelParams,
        groups: &[(String, f64)],
        m_actual: f64,
    ) -> Result<Self, FractureError> {
        if groups.len() < 2 {
            return Err(FractureError::TooFewGroups(groups.len()));
        }
        if !(m_actual >= 0.0) {
            return Err(FractureError::NegativeMActual(m_actual));
        }
        let mut assembled = Vec::with_capacity(groups.len());
        for (label, capacity) in groups {
            if assembled.iter().any(|(l, _)| l == label) {
                return Err(FractureError::DuplicateLabel(label.clone()));
            }
            let params =
                template
                    .with_capacity(*capacity)
                    .map_err(|source| FractureError::InvalidGroup {
                        label: label.clone(),
                        source,
                    })?;
            assembled.push((label.clone(), params));
        }
        Ok(Self {
            groups: assembled,
            m_actual,
        })
    }

    pub fn m_actual(&self) -> f64 {
        self.m_actual
    }

    pub fn groups(&self) -> &[(String, ModelParams)] {
        &self.groups
    }
}

/// One group's equilibrium and its experience of the shared intensity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupOutcome {
    pub label: String,
    pub capacity: f64,
    pub m_star: f64,
    pub zone: Zone,
    pub welfare_at_actual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractureReport {
    /// Outcomes in the economy's group order.
    pub per_group: Vec<GroupOutcome>,
    /// True exactly when the shared intensity falls strictly between the
    /// lowest and highest group optima, so the groups pull in opposite
    /// directions.
    pub conflict: bool,
}

/// Solve each group's optimum under the shared intensity and flag conflict.
pub fn analyze_fracture(economy: &FracturedEconomy) -> FractureReport {
    let m_actual = economy.m_actual();
    let per_group: Vec<GroupOutcome> = economy
        .groups()
        .iter()
        .map(|(label, params)| {
            let m_star = optimal_m_closed_form(params).m_star;
            GroupOutcome {
                label: label.clone(),
                capacity: params.capacity(),
                m_star,
                zone: zone_for(m_actual, m_star),
                welfare_at_actual: params.welfare(m_actual),
            }
        })
        .collect();
    let min_m_star = per_group.iter().map(|g| g.m_star).fold(f64::INFINITY, f64::min);
    let max_m_star = per_group
        .iter()
        .map(|g| g.m_star)
        .fold(f64::NEG_INFINITY, f64::max);
    FractureReport {
        conflict: min_m_star < m_actual && m_actual < max_m_star,
        per_group,
    }
}
