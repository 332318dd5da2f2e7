//! SVG scatter plots of objective dumps.

use crate::error::{Error, Result};
use std::fmt::Write;

pub const MAX_SERIES: usize = 4;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 60.0;

/// Marker shapes, one per series slot.
const SHAPES: [&str; MAX_SERIES] = ["circle", "square", "triangle", "cross"];
const COLOURS: [&str; MAX_SERIES] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<Vec<f64>>,
}

/// Result of rendering; `warnings` lists series that had no points.
#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub svg: String,
    pub warnings: Vec<String>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn marker(out: &mut String, slot: usize, x: f64, y: f64) {
    let class = format!("marker marker-{}", SHAPES[slot]);
    let c = COLOURS[slot];
    let _ = match SHAPES[slot] {
        "circle" => {
            writeln!(out, r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="3.5" fill="none" stroke="{c}"/>"#)
        }
        "square" => writeln!(
            out,
            r#"<rect class="{class}" x="{:.2}" y="{:.2}" width="6" height="6" fill="none" stroke="{c}"/>"#,
            x - 3.0,
            y - 3.0
        ),
        "triangle" => writeln!(
            out,
            r#"<polygon class="{class}" points="{x:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="{c}"/>"#,
            y - 4.0,
            x - 3.5,
            y + 3.0,
            x + 3.5,
            y + 3.0
        ),
        _ => writeln!(
            out,
            r#"<path class="{class}" d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}" stroke="{c}"/>"#,
            x - 3.0,
            y - 3.0,
            x + 3.0,
            y + 3.0,
            x - 3.0,
            y + 3.0,
            x + 3.0,
            y - 3.0
        ),
    };
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
}

/// Renders up to four bi-objective series. Output depends only on the input.
pub fn render_svg(series: &[Series]) -> Result<Plot> {
    if series.is_empty() || series.len() > MAX_SERIES {
        return Err(Error::InvalidParameter(format!(
            "between 1 and {MAX_SERIES} series are required, got {}",
            series.len()
        )));
    }
    for s in series {
        if let Some(p) = s.points.iter().find(|p| p.len() != 2) {
            return Err(Error::UnsupportedDimension(p.len()));
        }
    }
    let warnings: Vec<String> =
        series.iter().filter(|s| s.points.is_empty()).map(|s| format!("series {:?} has no points", s.label)).collect();

    let all = series.iter().flat_map(|s| &s.points);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in all {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let pad = |lo: f64, hi: f64| {
        let span = if hi > lo { hi - lo } else { lo.abs().max(1.0) };
        (lo - 0.05 * span, hi + 0.05 * span)
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + plot_h - (y - y0) / (y1 - y0) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect class="frame" x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0
        );
        let _ = writeln!(out, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.4}</text>"#, TOP + plot_h + 18.0);
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.4}</text>"#, LEFT - 8.0, y + 4.0);
    }
    let _ = writeln!(
        out,
        r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle">Objective 1</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        out,
        r#"<text class="axis-label" x="15" y="{:.2}" text-anchor="middle" transform="rotate(-90 15 {:.2})">Objective 2</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (slot, s) in series.iter().enumerate() {
        let _ = writeln!(out, r#"<g class="series" data-label="{}">"#, escape(&s.label));
        for p in &s.points {
            marker(&mut out, slot, sx(p[0]), sy(p[1]));
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r#"<g class="legend">"#);
    for (slot, s) in series.iter().enumerate() {
        let y = TOP + 15.0 + 20.0 * slot as f64;
        let x = WIDTH - RIGHT + 15.0;
        let mut swatch = String::new();
        marker(&mut swatch, slot, x, y);
        out.push_str(&swatch.replace("class=\"marker ", "class=\"legend-swatch "));
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 10.0, y + 4.0, escape(&s.label));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    Ok(Plot { svg: out, warnings })
}
