use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use biweier::bipoly::{parse_algebraic_many, BiDegree, Point};
use biweier::curvemodel::{ImplicitCurve, RationalCurve, SingularityInput};
use biweier::oneone::local_11_hessian;
use biweier::oracle::verify_conjecture_31;
use biweier::report::{
    analyze_implicit, analyze_rational, hessian_dtos, osculate_implicit, osculate_rational, plot_svg, render_table,
    Chart, HessianDto,
};
use biweier::wronskian::System;
use clap::{Args, Parser, Subcommand};

/// Osculating curves, Hessians and Weierstrass points of curves in P1xP1.
///
/// Exit codes: 0 success, 1 input error, 2 failed cross-check.
#[derive(Parser)]
#[command(name = "biweier", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weierstrass points, weights and counting cross-checks.
    Analyze {
        #[command(flatten)]
        curve: CurveArgs,
        /// Extra linear system `alpha,beta` (rational curves only); repeatable.
        #[arg(long, value_parser = parse_system)]
        system: Vec<System>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Osculating curve of a system at a point or parameter.
    Osculate {
        #[command(flatten)]
        curve: CurveArgs,
        /// `a0:a1;b0:b1` for an implicit curve, `s:t` for a parametrization.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_parser = parse_system, default_value = "1,1")]
        system: System,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Hessian covariants of an implicit curve.
    Hessian {
        #[arg(long, allow_hyphen_values = true)]
        implicit: String,
        #[arg(long = "type", value_parser = parse_bidegree)]
        bidegree: BiDegree,
        /// Also emit the local (1,1) Hessian in the chart `i,j`.
        #[arg(long, value_parser = parse_pair)]
        chart: Option<(u32, u32)>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Mixed-Hessian attribution checks for a parametrization with its equation.
    CheckConjectures {
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        implicit: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// SVG of the real trace in an affine chart with marked points.
    Plot {
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        /// `i,j` for the chart `x_i = 1, y_j = 1`.
        #[arg(long, value_parser = parse_pair, default_value = "1,1")]
        chart: (u32, u32),
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// Bihomogeneous equation in x0, x1, y0, y1.
    #[arg(long, requires = "bidegree", allow_hyphen_values = true)]
    implicit: Option<String>,
    /// Bidegree `a,b` of the equation.
    #[arg(long = "type", value_parser = parse_bidegree)]
    bidegree: Option<BiDegree>,
    /// JSON singularity data for an implicit curve.
    #[arg(long, requires = "implicit")]
    singularities: Option<PathBuf>,
    /// Parametrization `phi0; phi1; psi0; psi1` in s, t.
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// JSON output (the default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Plain-text table output.
    #[arg(long)]
    table: bool,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `m,n`, found {s:?}"))?;
    let n = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

fn parse_bidegree(s: &str) -> Result<BiDegree, String> {
    parse_pair(s).map(|(a, b)| BiDegree::new(a, b))
}

fn parse_system(s: &str) -> Result<System, String> {
    let (a, b) = parse_pair(s)?;
    if a == 0 && b == 0 {
        return Err("the system (0,0) is trivial".into());
    }
    Ok(System::new(a, b))
}

enum Failure {
    Input(String),
    Check,
}

impl From<biweier::Error> for Failure {
    fn from(e: biweier::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

enum Curve {
    Implicit(ImplicitCurve, String),
    Rational(RationalCurve, String, Option<ImplicitCurve>),
}

fn load_curve(a: &CurveArgs) -> Result<Curve, Failure> {
    let implicit = match (&a.implicit, a.bidegree) {
        (Some(e), Some(d)) => Some(ImplicitCurve::parse(e, d)?),
        (Some(_), None) => return Err(Failure::Input("--implicit needs --type a,b".into())),
        _ => None,
    };
    match (&a.param, implicit) {
        (Some(p), f) => {
            if a.singularities.is_some() {
                return Err(Failure::Input("--singularities applies to implicit curves only".into()));
            }
            Ok(Curve::Rational(RationalCurve::parse(p)?, p.clone(), f))
        }
        (None, Some(f)) => Ok(Curve::Implicit(f, a.implicit.clone().expect("given"))),
        (None, None) => Err(Failure::Input("give --implicit EXPR --type a,b or --param \"phi0;phi1;psi0;psi1\"".into())),
    }
}

fn emit(json: serde_json::Result<String>, table: Option<String>) -> CliResult {
    let text = match table {
        Some(t) => t,
        None => json.map_err(|e| Failure::Input(e.to_string()))? + "\n",
    };
    // a closed pipe (`| head`) is not an error
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Input(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn run(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::Analyze { curve, system, out } => {
            let report = match load_curve(&curve)? {
                Curve::Rational(c, text, f) => analyze_rational(&c, &text, &system, f.as_ref())?,
                Curve::Implicit(f, text) => {
                    if !system.is_empty() {
                        return Err(Failure::Input("--system needs a parametrized curve".into()));
                    }
                    let sing = match &curve.singularities {
                        Some(path) => {
                            let text = fs::read_to_string(path)
                                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                            Some(SingularityInput::from_json(&text)?)
                        }
                        None => None,
                    };
                    analyze_implicit(&f, &text, sing.as_ref())?
                }
            };
            emit(serde_json::to_string_pretty(&report), out.table.then(|| render_table(&report)))?;
            if report.failed() {
                return Err(Failure::Check);
            }
            Ok(())
        }
        Cmd::Osculate { curve, at, system, out } => {
            let report = match load_curve(&curve)? {
                Curve::Rational(c, ..) => {
                    let (s, t) = at
                        .split_once(':')
                        .ok_or_else(|| Failure::Input(format!("expected a parameter \"s:t\", found {at:?}")))?;
                    let v = parse_algebraic_many(&[s.trim(), t.trim()])?;
                    osculate_rational(&c, &v[0], &v[1], system)?
                }
                Curve::Implicit(f, _) => osculate_implicit(&f, &Point::parse(&at)?, system)?,
            };
            let table = format!(
                "point {}\nsystem {}: {}\ncontact {} (r = {})\n",
                report.point.text, report.system, report.polynomial, report.contact, report.r
            );
            emit(serde_json::to_string_pretty(&report), out.table.then_some(table))
        }
        Cmd::Hessian {
            implicit,
            bidegree,
            chart,
            out,
        } => {
            let f = ImplicitCurve::parse(&implicit, bidegree)?;
            let mut hs = hessian_dtos(&f);
            if let Some((i, j)) = chart {
                if i > 1 || j > 1 {
                    return Err(Failure::Input(format!("chart indices must be 0 or 1, got ({i},{j})")));
                }
                let h = local_11_hessian(&f, (i as usize, j as usize));
                hs.push(HessianDto {
                    name: format!("local (1,1) chart ({i},{j})"),
                    bidegree: h.bidegree(),
                    polynomial: h.normalized().to_string(),
                });
            }
            if hs.is_empty() {
                return Err(Failure::Input(format!("no Hessian is defined for type {bidegree}")));
            }
            let table = hs.iter().map(|h| format!("{} {}: {}\n", h.name, h.bidegree, h.polynomial)).collect();
            emit(serde_json::to_string_pretty(&hs), out.table.then_some(table))
        }
        Cmd::CheckConjectures { param, implicit, out } => {
            let c = RationalCurve::parse(&param)?;
            let f = ImplicitCurve::parse(&implicit, c.bidegree())?;
            let r = verify_conjecture_31(&c, &f)?;
            let mut table = String::new();
            for p in &r.points {
                table += &format!(
                    "{}: mixed Hessian {} vs 4*{}+{}+{} = {} {}\n",
                    p.point,
                    p.hessian_mult,
                    p.delta,
                    p.w10,
                    p.w01,
                    p.expected,
                    if p.pass { "ok" } else { "differs" }
                );
            }
            table += &format!("total {} (expected {})\n", r.hessian_total, r.expected_total);
            table += &format!("sum w(1,1)+12 delta {} (expected {})\n", r.oneone_total, r.oneone_expected);
            emit(serde_json::to_string_pretty(&r), out.table.then_some(table))?;
            if !(r.per_point_pass() && r.totals_pass()) {
                return Err(Failure::Check);
            }
            Ok(())
        }
        Cmd::Plot { param, chart, out } => {
            let c = RationalCurve::parse(&param)?;
            let chart = Chart::new(chart.0 as usize, chart.1 as usize)?;
            let svg = plot_svg(&c, chart)?;
            fs::write(&out, svg).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => {
            eprintln!("error: a cross-check failed");
            ExitCode::from(2)
        }
    }
}
