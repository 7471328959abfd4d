use std::fmt::Write;

use super::{AnalysisReport, CheckStatus};

fn kind_str(k: crate::wronskian::PointKind) -> &'static str {
    match k {
        crate::wronskian::PointKind::Cusp => "cusp",
        crate::wronskian::PointKind::Node => "node",
        crate::wronskian::PointKind::Smooth => "smooth",
    }
}

/// Plain-text rendering of a report, one section per table.
pub fn render_table(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "curve ({}): {}  type {}", r.curve.kind, r.curve.input, r.curve.bidegree);

    if !r.points.is_empty() {
        let width = r.points.iter().map(|p| p.point.text.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<width$}  {:<6}  {:>2}  {:>5}  {:>6}  {:>6}  {:>6}  loci",
            "point", "kind", "#", "delta", "w(1,0)", "w(0,1)", "w(1,1)"
        );
        for p in &r.points {
            let delta = p.delta.map_or("?".to_string(), |d| d.to_string());
            let loci = p.loci.join(", ");
            let _ = writeln!(
                out,
                "{:<width$}  {:<6}  {:>2}  {:>5}  {:>6}  {:>6}  {:>6}  {loci}",
                p.point.text,
                kind_str(p.kind),
                p.points,
                delta,
                p.weights[0],
                p.weights[1],
                p.weights[2]
            );
        }
    }

    if !r.systems.is_empty() {
        let _ = writeln!(out);
        for s in &r.systems {
            let _ = writeln!(out, "xi{} = {} * ({})", s.system, s.xi.scalar, s.xi.normalized);
            for rec in &s.records {
                let _ = writeln!(
                    out,
                    "  {}  weight {}  x{}  [{}]",
                    rec.point.text,
                    rec.weight,
                    rec.points,
                    rec.loci.join(", ")
                );
            }
        }
    }

    if !r.hessians.is_empty() {
        let _ = writeln!(out);
        for h in &r.hessians {
            let _ = writeln!(out, "{} {}: {}", h.name, h.bidegree, h.polynomial);
        }
    }

    if !r.checks.is_empty() {
        let _ = writeln!(out);
        for c in &r.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Info => "formula",
            };
            let computed = c.computed.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(out, "{:<40} computed {:>4}  formula {:>4}  {status}", c.name, computed, c.formula);
        }
    }

    if let Some(cr) = &r.conjectures {
        let _ = writeln!(out);
        for p in &cr.points {
            let _ = writeln!(
                out,
                "mixed Hessian at {}: {} vs 4*{}+{}+{} = {}  {}",
                p.point,
                p.hessian_mult,
                p.delta,
                p.w10,
                p.w01,
                p.expected,
                if p.pass { "ok" } else { "differs" }
            );
        }
        let _ = writeln!(out, "mixed Hessian total {} (expected {})", cr.hessian_total, cr.expected_total);
        let _ = writeln!(out, "sum of w(1,1)+12 delta {} (expected {})", cr.oneone_total, cr.oneone_expected);
    }

    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
