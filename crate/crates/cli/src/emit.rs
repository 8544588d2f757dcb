//! Result rendering. JSON uses serde; CSV cells hold the shortest decimal
//! representation that round-trips the underlying f64, so repeated runs are
//! byte-identical and lossless.

use serde::Serialize;

use clubgood_core::{
    CurveSample, EquilibriumResult, FractureReport, SweepOutcome, SweepResult, ZoneDiagnosis,
};
use clubgood_index::{write_series_csv, IndexSeries, PlaceboComparison};

pub fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("result types serialize");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    #[serde(flatten)]
    equilibrium: &'a EquilibriumResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnosis: Option<&'a ZoneDiagnosis>,
}

pub fn solve_json(equilibrium: &EquilibriumResult, diagnosis: Option<&ZoneDiagnosis>) -> String {
    json(&SolveOutput {
        equilibrium,
        diagnosis,
    })
}

pub fn solve_csv(eq: &EquilibriumResult, diagnosis: Option<&ZoneDiagnosis>) -> String {
    let mut out = String::new();
    match diagnosis {
        None => {
            out.push_str("m_star,w_star,mb_at_star,mc_at_star,soc_value,method\n");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                eq.m_star, eq.w_star, eq.mb_at_star, eq.mc_at_star, eq.soc_value, eq.method
            ));
        }
        Some(diag) => {
            out.push_str("m_star,w_star,mb_at_star,mc_at_star,soc_value,method,m_actual,zone,gap\n");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                eq.m_star,
                eq.w_star,
                eq.mb_at_star,
                eq.mc_at_star,
                eq.soc_value,
                eq.method,
                diag.m_actual,
                diag.zone,
                diag.gap
            ));
        }
    }
    out
}

pub fn curve_csv(curve: &CurveSample) -> String {
    let mut out = String::from("m,benefit,cost,welfare\n");
    for i in 0..curve.m_grid.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            curve.m_grid[i], curve.benefit_values[i], curve.cost_values[i], curve.welfare_values[i]
        ));
    }
    out
}

pub fn sweep_csv(sweep: &SweepResult) -> String {
    let mut out = String::from("param_value,m_star,w_star,zone\n");
    for row in &sweep.rows {
        match &row.outcome {
            SweepOutcome::Solved(point) => {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    row.parameter_value, point.m_star, point.w_star, point.zone
                ));
            }
            SweepOutcome::Rejected { error } => {
                out.push_str(&format!("{},,,{}\n", row.parameter_value, error));
            }
        }
    }
    out
}

pub fn fracture_csv(report: &FractureReport) -> String {
    let mut out = String::from("label,capacity,m_star,zone,welfare_at_actual,conflict\n");
    for group in &report.per_group {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            group.label,
            group.capacity,
            group.m_star,
            group.zone,
            group.welfare_at_actual,
            report.conflict
        ));
    }
    out
}

pub fn series_csv(series: &IndexSeries) -> String {
    let mut buf = Vec::new();
    write_series_csv(series, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}

pub fn placebo_csv(cmp: &PlaceboComparison) -> String {
    format!(
        "treatment_ratio,control_ratio,divergence\n{},{},{}\n",
        cmp.treatment_ratio, cmp.control_ratio, cmp.divergence
    )
}
