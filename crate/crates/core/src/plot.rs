//! Minimal deterministic SVG line plots.

use std::fmt::Write;

use crate::{Error, Result};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const LEFT: f64 = 100.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;

/// Axis labels and title.
#[derive(Clone, Debug)]
pub struct PlotLabels {
    pub title: String,
    pub x: String,
    pub y: String,
}

impl Default for PlotLabels {
    fn default() -> Self {
        Self {
            title: "I(A:C|B)".into(),
            x: "beta".into(),
            y: "CMI (nats)".into(),
        }
    }
}

/// Renders `(x, y)` points as a line with markers on linear axes.
pub fn render_plot(points: &[(f64, f64)], labels: &PlotLabels) -> Result<String> {
    if points.is_empty() {
        return Err(Error::validation("nothing to plot"));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::validation("plot data must be finite"));
    }
    let (xmin, xmax) = extent(points.iter().map(|p| p.0));
    let (ymin, ymax) = extent(points.iter().map(|p| p.1));
    let (x_lo, x_hi) = if xmax - xmin > 0.0 { (xmin, xmax) } else { (xmin - 0.5, xmax + 0.5) };
    let y_lo = ymin.min(0.0);
    let y_hi = if ymax - y_lo > 1e-12 { ymax } else { y_lo + 1.0 };
    let x_ticks = nice_ticks(x_lo, x_hi, 6);
    let y_ticks = nice_ticks(y_lo, y_hi, 6);
    let (x_lo, x_hi) = (x_ticks[0].min(x_lo), x_ticks.last().copied().unwrap_or(x_hi).max(x_hi));
    let (y_lo, y_hi) = (y_ticks[0].min(y_lo), y_ticks.last().copied().unwrap_or(y_hi).max(y_hi));

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="30" text-anchor="middle" font-size="16">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(&labels.title)
    );

    let x_step = step_of(&x_ticks);
    for &t in &x_ticks {
        let x = sx(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP:.2}" x2="{x:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##,
            TOP + plot_h
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h + 20.0,
            tick_label(t, x_step)
        );
    }
    let y_step = step_of(&y_ticks);
    for &t in &y_ticks {
        let y = sy(t);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            y + 4.0,
            tick_label(t, y_step)
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 20.0,
        escape(&labels.x)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(&labels.y)
    );

    if points.len() > 1 {
        let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
            coords.join(" ")
        );
    }
    for &(x, y) in points {
        let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#1f77b4"/>"##, sx(x), sy(y));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Round-number ticks covering `[lo, hi]`.
pub fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).floor();
    let last = (hi / step).ceil();
    let n = (last - first) as i64;
    (0..=n).map(|k| (first + k as f64) * step).collect()
}

fn step_of(ticks: &[f64]) -> f64 {
    if ticks.len() > 1 {
        ticks[1] - ticks[0]
    } else {
        1.0
    }
}

fn tick_label(v: f64, step: f64) -> String {
    if v.abs() < step * 1e-9 {
        return "0".into();
    }
    let s = step.abs();
    if !(1e-3..1e5).contains(&s) {
        format!("{v:.2e}")
    } else {
        let decimals = (-s.log10().floor()).max(0.0) as usize + 1;
        let text = format!("{v:.decimals$}");
        let text = if text.contains('.') {
            text.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            text
        };
        text
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_has_one_marker() {
        let svg = render_plot(&[(0.0, 0.0)], &PlotLabels::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("<polyline"));
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"width="800" height="600""#));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(render_plot(&[], &PlotLabels::default()).is_err());
        assert!(render_plot(&[(0.0, f64::NAN)], &PlotLabels::default()).is_err());
    }

    #[test]
    fn deterministic_output() {
        let pts: Vec<(f64, f64)> = (0..20).map(|k| (k as f64 * 0.25, (k as f64).sqrt() * 1e-3)).collect();
        let a = render_plot(&pts, &PlotLabels::default()).unwrap();
        let b = render_plot(&pts, &PlotLabels::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<circle").count(), 20);
    }

    #[test]
    fn ticks_cover_range() {
        let t = nice_ticks(0.0, 5.0, 6);
        assert_eq!(t.first(), Some(&0.0));
        assert_eq!(t.last(), Some(&5.0));
        assert_eq!(tick_label(2.5, 1.0), "2.5");
        assert_eq!(tick_label(0.0, 1.0), "0");
        assert_eq!(tick_label(3e-5, 1e-5), "3.00e-5");
    }
}
