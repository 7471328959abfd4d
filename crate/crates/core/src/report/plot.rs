use std::fmt::Write;

use super::{eval_f64, real_roots};
use crate::curvemodel::RationalCurve;
use crate::error::{Error, Result};
use crate::wronskian::{point_table, PointKind};

const SAMPLES: usize = 1024;
const SIZE: f64 = 640.0;
const MARGIN: f64 = 20.0;

/// The affine chart `x_i = 1, y_j = 1` with coordinates `X = x_{1-i}`, `Y = y_{1-j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub i: usize,
    pub j: usize,
}

impl Chart {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i > 1 || j > 1 {
            return Err(Error::Invalid(format!("chart indices must be 0 or 1, got ({i},{j})")));
        }
        Ok(Chart { i, j })
    }

    /// Affine coordinates of `[x0, x1, y0, y1]`, `None` at infinity of the chart.
    fn affine(&self, c: [f64; 4]) -> Option<(f64, f64)> {
        let (dx, dy) = (c[self.i], c[2 + self.j]);
        if dx == 0.0 || dy == 0.0 {
            return None;
        }
        let p = (c[1 - self.i] / dx, c[3 - self.j] / dy);
        (p.0.is_finite() && p.1.is_finite()).then_some(p)
    }
}

/// Parameters `(1:u)`, `u ∈ [-1,1)`, then `(v:1)`, `v ∈ (-1,1]` backwards,
/// closed at `(-1:1)`: a loop through all of P¹(R).
fn parameters() -> Vec<(f64, f64)> {
    let half = SAMPLES / 2;
    let mut out = Vec::with_capacity(SAMPLES + 1);
    for k in 0..half {
        out.push((1.0, -1.0 + 2.0 * k as f64 / half as f64));
    }
    for k in 0..half {
        out.push((1.0 - 2.0 * k as f64 / half as f64, 1.0));
    }
    out.push((-1.0, 1.0));
    out
}

struct Marker {
    label: usize,
    pos: (f64, f64),
    kind: PointKind,
    weights: [u32; 3],
}

fn quantile(v: &mut [f64], q: f64) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    v[((v.len() - 1) as f64 * q).round() as usize]
}

/// SVG of the real trace of the curve in a chart, with its singular points
/// and Weierstrass points marked by system and listed with weights.
pub fn plot_svg(c: &RationalCurve, chart: Chart) -> Result<String> {
    let rows = point_table(c)?;
    let [p0, p1] = c.phi();
    let [q0, q1] = c.psi();

    // trace, split where a denominator changes sign
    let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    let mut prev_sign: Option<(bool, bool)> = None;
    for (s, t) in parameters() {
        let v = [eval_f64(p0, s, t), eval_f64(p1, s, t), eval_f64(q0, s, t), eval_f64(q1, s, t)];
        let sign = (v[chart.i] > 0.0, v[2 + chart.j] > 0.0);
        if prev_sign.is_some_and(|p| p != sign) && !segments.last().expect("nonempty").is_empty() {
            segments.push(Vec::new());
        }
        prev_sign = Some(sign);
        match chart.affine(v) {
            Some(p) => segments.last_mut().expect("nonempty").push(p),
            None => segments.push(Vec::new()),
        }
    }

    let mut markers = Vec::new();
    let mut legend = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        let label = k + 1;
        let roots = match (r.point.as_rational(), r.point.field_like().modulus()) {
            (None, Some(m)) => real_roots(m),
            _ => vec![0.0],
        };
        let mut placed: Vec<(f64, f64)> = Vec::new();
        let mut at_infinity = false;
        for root in &roots {
            match chart.affine(r.point.approx(*root)) {
                Some(p) if !placed.iter().any(|q| (q.0 - p.0).abs() + (q.1 - p.1).abs() < 1e-9) => placed.push(p),
                Some(_) => {}
                None => at_infinity = true,
            }
        }
        let note = if roots.is_empty() {
            " (not real)"
        } else if placed.is_empty() && at_infinity {
            " (outside chart)"
        } else {
            ""
        };
        let kind = match r.kind {
            PointKind::Cusp => "cusp",
            PointKind::Node => "node",
            PointKind::Smooth => "smooth",
        };
        let [a, b, w] = r.xi_weights;
        let count = if r.points > 1 { format!(" x{}", r.points) } else { String::new() };
        legend.push(format!("{label}: {} {kind}{count} w=({a},{b},{w}){note}", r.point));
        for pos in placed {
            markers.push(Marker {
                label,
                pos,
                kind: r.kind,
                weights: r.xi_weights,
            });
        }
    }

    // view box from the bulk of the trace and all markers
    let pts: Vec<(f64, f64)> = segments.iter().flatten().copied().collect();
    let (mut xs, mut ys): (Vec<f64>, Vec<f64>) = pts.iter().copied().unzip();
    let (mut x0, mut x1, mut y0, mut y1) = if pts.is_empty() {
        (-1.0, 1.0, -1.0, 1.0)
    } else if markers.len() >= 2 {
        let m = markers[0].pos;
        (m.0, m.0, m.1, m.1)
    } else {
        (quantile(&mut xs, 0.1), quantile(&mut xs, 0.9), quantile(&mut ys, 0.1), quantile(&mut ys, 0.9))
    };
    for m in &markers {
        x0 = x0.min(m.pos.0);
        x1 = x1.max(m.pos.0);
        y0 = y0.min(m.pos.1);
        y1 = y1.max(m.pos.1);
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0) * 1.6;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let (x0, y0) = (cx - span / 2.0, cy - span / 2.0);
    let inner = SIZE - 2.0 * MARGIN;
    let to_px = |p: (f64, f64)| (MARGIN + (p.0 - x0) / span * inner, MARGIN + (1.0 - (p.1 - y0) / span) * inner);
    let far = |p: (f64, f64)| (p.0 - cx).abs() > 2.0 * span || (p.1 - cy).abs() > 2.0 * span;

    let height = SIZE + 24.0 + 18.0 * legend.len() as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<clipPath id="view"><rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}"/></clipPath>"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="#999"/>"##
    );
    if x0 < 0.0 && x0 + span > 0.0 {
        let (a, _) = to_px((0.0, 0.0));
        let _ = writeln!(svg, r##"<line x1="{a:.2}" y1="{MARGIN}" x2="{a:.2}" y2="{}" stroke="#ddd"/>"##, SIZE - MARGIN);
    }
    if y0 < 0.0 && y0 + span > 0.0 {
        let (_, b) = to_px((0.0, 0.0));
        let _ = writeln!(svg, r##"<line x1="{MARGIN}" y1="{b:.2}" x2="{}" y2="{b:.2}" stroke="#ddd"/>"##, SIZE - MARGIN);
    }
    let _ = writeln!(svg, r#"<g clip-path="url(#view)" fill="none" stroke="black" stroke-width="1.5">"#);
    for seg in &segments {
        for run in seg.split(|p| far(*p)) {
            if run.len() < 2 {
                continue;
            }
            let d: Vec<String> = run
                .iter()
                .map(|&p| {
                    let (a, b) = to_px(p);
                    format!("{a:.2},{b:.2}")
                })
                .collect();
            let _ = writeln!(svg, r#"<polyline points="{}"/>"#, d.join(" "));
        }
    }
    let _ = writeln!(svg, "</g>");

    for m in &markers {
        let (a, b) = to_px(m.pos);
        match m.kind {
            PointKind::Cusp => {
                let _ = writeln!(svg, r#"<rect x="{:.2}" y="{:.2}" width="12" height="12" fill="black"/>"#, a - 6.0, b - 6.0);
            }
            PointKind::Node => {
                let _ = writeln!(
                    svg,
                    r#"<polygon points="{a:.2},{:.2} {:.2},{b:.2} {a:.2},{:.2} {:.2},{b:.2}" fill="black"/>"#,
                    b - 8.0,
                    a + 8.0,
                    b + 8.0,
                    a - 8.0
                );
            }
            PointKind::Smooth => {}
        }
        if m.weights[0] > 0 {
            let _ = writeln!(svg, r##"<circle cx="{a:.2}" cy="{b:.2}" r="10" fill="none" stroke="#1f77b4" stroke-width="2"/>"##);
        }
        if m.weights[1] > 0 {
            let _ = writeln!(svg, r##"<circle cx="{a:.2}" cy="{b:.2}" r="6" fill="none" stroke="#2ca02c" stroke-width="2"/>"##);
        }
        if m.weights[2] > 0 {
            let _ = writeln!(
                svg,
                r##"<polygon points="{a:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="#d62728" stroke-width="2"/>"##,
                b - 14.0,
                a + 12.0,
                b + 8.0,
                a - 12.0,
                b + 8.0
            );
        }
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#, a + 12.0, b - 10.0, m.label);
    }

    let mut y = SIZE + 8.0;
    let _ = writeln!(
        svg,
        r##"<text x="{MARGIN}" y="{y}" font-size="12">chart x{}=1, y{}=1; blue: (1,0), green: (0,1), red: (1,1), black: singular</text>"##,
        chart.i, chart.j
    );
    for line in &legend {
        y += 18.0;
        let _ = writeln!(svg, r#"<text x="{MARGIN}" y="{y}" font-size="12">{}</text>"#, escape(line));
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
