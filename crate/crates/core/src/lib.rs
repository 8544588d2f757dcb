//! Welfare model of globalization as a congestible club good.
//!
//! An economy draws benefits `B(M) = α(1+δ)·M^θ` from globalization
//! intensity `M` and pays congestion costs `C(M) = γ·(M/K)^φ` against its
//! institutional capacity `K`. Net welfare `W = B − C` is strictly concave
//! past its peak, so there is a unique optimal intensity `M*` with a closed
//! form, plus a derivative-free golden-section solver used as an
//! independent cross-check.
//!
//! The [`scenario`] module layers calibrated presets, welfare curves,
//! parameter sweeps, and the two-group (elites vs. incumbents) fracture
//! analysis on top of the solver.

pub mod equilibrium;
pub mod params;
pub mod scenario;

pub use equilibrium::{
    capacity_dividend, classify_zone, optimal_m_closed_form, optimal_m_numeric, soc_check,
    CapacityDividend, EquilibriumResult, SolveError, SolveMethod, Zone, ZoneDiagnosis,
};
pub use params::{congestion_ratio, ModelParams, ParamError, ScenarioPreset, ZeroFlowError};
pub use scenario::{
    analyze_fracture, builtin_presets, find_preset, sensitivity_sweep, welfare_curve, CurveSample,
    FractureError, FractureReport, FracturedEconomy, GroupOutcome, SweepOutcome, SweepPoint,
    SweepResult, SweepRow, SweptParameter,
};
