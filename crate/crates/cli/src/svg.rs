//! Minimal hand-rolled SVG line charts: fixed 800×500 canvas, linear axes,
//! 10 tick labels per axis, one polyline per series.

use std::fmt::Write;

use clubgood_core::CurveSample;
use clubgood_index::IndexSeries;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;
const TICKS: usize = 10;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        let (x_min, x_max) = pad_degenerate(x_min, x_max);
        let (y_min, y_max) = pad_degenerate(y_min, y_max);
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    fn x(&self, value: f64) -> f64 {
        MARGIN_LEFT + (value - self.x_min) / (self.x_max - self.x_min)
            * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, value: f64) -> f64 {
        HEIGHT
            - MARGIN_BOTTOM
            - (value - self.y_min) / (self.y_max - self.y_min)
                * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn pad_degenerate(min: f64, max: f64) -> (f64, f64) {
    if max > min {
        (min, max)
    } else {
        (min - 0.5, min + 0.5)
    }
}

fn fmt_tick(value: f64) -> String {
    let text = format!("{value:.4}");
    let trimmed = text.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_owned()
}

fn open_svg(out: &mut String) {
    out.push_str(r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="500" viewBox="0 0 800 500">"#);
    out.push('\n');
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
}

fn axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let x0 = frame.x(frame.x_min);
    let x1 = frame.x(frame.x_max);
    let y0 = frame.y(frame.y_min);
    let y1 = frame.y(frame.y_max);
    let _ = writeln!(
        out,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black" stroke-width="1"/>"#
    );
    for i in 0..TICKS {
        let fraction = i as f64 / (TICKS - 1) as f64;
        let x_value = frame.x_min + fraction * (frame.x_max - frame.x_min);
        let y_value = frame.y_min + fraction * (frame.y_max - frame.y_min);
        let x = frame.x(x_value);
        let y = frame.y(y_value);
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            y0 + 16.0,
            fmt_tick(x_value)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{y:.2}" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            fmt_tick(y_value)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{x_label}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 8.0
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 14 {:.2})">{y_label}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
}

fn polyline(out: &mut String, frame: &Frame, xs: &[f64], ys: &[f64], color: &str) {
    let points: Vec<String> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| format!("{:.2},{:.2}", frame.x(x), frame.y(y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
        points.join(" ")
    );
}

/// Benefit, cost, and welfare as three polylines with a dashed vertical
/// marker at the closed-form optimum.
pub fn render_curve(curve: &CurveSample) -> String {
    let y_min = curve
        .welfare_values
        .iter()
        .chain(&curve.benefit_values)
        .chain(&curve.cost_values)
        .copied()
        .fold(0.0f64, f64::min);
    let y_max = curve
        .welfare_values
        .iter()
        .chain(&curve.benefit_values)
        .chain(&curve.cost_values)
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let frame = Frame::new(0.0, *curve.m_grid.last().unwrap_or(&1.0), y_min, y_max);

    let mut out = String::new();
    open_svg(&mut out);
    axes(&mut out, &frame, "m", "value");

    let marker_x = frame.x(curve.m_star_marker);
    let _ = writeln!(
        out,
        r#"<line x1="{marker_x:.2}" y1="{:.2}" x2="{marker_x:.2}" y2="{:.2}" stroke="gray" stroke-width="1" stroke-dasharray="4 3"/>"#,
        frame.y(frame.y_min),
        frame.y(frame.y_max)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" fill="gray">m* = {}</text>"#,
        marker_x + 4.0,
        MARGIN_TOP + 12.0,
        fmt_tick(curve.m_star_marker)
    );

    polyline(&mut out, &frame, &curve.m_grid, &curve.benefit_values, "#2a7f3f");
    polyline(&mut out, &frame, &curve.m_grid, &curve.cost_values, "#c23b22");
    polyline(&mut out, &frame, &curve.m_grid, &curve.welfare_values, "#1f5fbf");

    legend(&mut out, &[("benefit", "#2a7f3f"), ("cost", "#c23b22"), ("welfare", "#1f5fbf")]);
    out.push_str("</svg>\n");
    out
}

/// Yearly hit counts as a single polyline.
pub fn render_series(series: &IndexSeries) -> String {
    let xs: Vec<f64> = series.counts.keys().map(|&y| y as f64).collect();
    let ys: Vec<f64> = series.counts.values().map(|&c| c as f64).collect();
    let x_min = xs.first().copied().unwrap_or(0.0);
    let x_max = xs.last().copied().unwrap_or(1.0);
    let y_max = ys.iter().copied().fold(0.0f64, f64::max);
    let frame = Frame::new(x_min, x_max, 0.0, y_max);

    let mut out = String::new();
    open_svg(&mut out);
    axes(&mut out, &frame, "year", "documents");
    polyline(&mut out, &frame, &xs, &ys, "#1f5fbf");
    legend(&mut out, &[(&series.label, "#1f5fbf")]);
    out.push_str("</svg>\n");
    out
}

fn legend(out: &mut String, entries: &[(&str, &str)]) {
    let mut y = MARGIN_TOP + 14.0;
    for (name, color) in entries {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{y:.2}" font-size="12" fill="{color}">{name}</text>"#,
            WIDTH - MARGIN_RIGHT - 90.0
        );
        y += 16.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clubgood_core::{welfare_curve, ModelParams};

    #[test]
    fn curve_svg_has_exactly_three_polylines_and_a_marker() {
        let params = ModelParams::new(2.0, 0.0, 0.6, 1.0, 2.5, 5.0).unwrap();
        let svg = render_curve(&welfare_curve(&params, 10.0, 41));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn series_svg_has_one_polyline() {
        let series = IndexSeries {
            label: "all".into(),
            counts: [(2000, 3u64), (2001, 5)].into_iter().collect(),
            totals: [(2000, 10u64), (2001, 10)].into_iter().collect(),
        };
        let svg = render_series(&series);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn single_year_series_does_not_divide_by_zero() {
        let series = IndexSeries {
            label: "all".into(),
            counts: [(2020, 4u64)].into_iter().collect(),
            totals: [(2020, 9u64)].into_iter().collect(),
        };
        let svg = render_series(&series);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn tick_formatting_trims_zeros() {
        assert_eq!(fmt_tick(5.0), "5");
        assert_eq!(fmt_tick(5.65), "5.65");
        assert_eq!(fmt_tick(1.0 / 3.0), "0.3333");
    }
}
