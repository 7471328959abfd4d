//! Serializable analysis reports, text tables and SVG plots.

mod plot;
mod table;

pub use plot::{plot_svg, Chart};
pub use table::render_table;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bipoly::{BiDegree, BiPoly, Point};
use crate::curvemodel::{genus, FiberDirection, ImplicitCurve, RationalCurve, SingularityInput};
use crate::error::{Error, Result};
use crate::exactalg::{poly_to_string, rat_to_f64, rat_to_string, BinaryForm, FieldElt, Poly, Rat, Scalar};
use crate::fibers::{count_fiber_weierstrass, hessian, mixed_hessian, osculating_fiber, CountInput};
use crate::oneone::{count_11_weierstrass, fiber_product, osculating_11, tangent_fiber, BranchClass};
use crate::oracle::{contact_at_parameter, deltas, mult_implicit_smooth, verify_conjecture_31, Contact, ConjectureReport};
use crate::wronskian::{
    branch_data, count_branches, omega, partners, point_table, singular_l_values, weierstrass_records, xi,
    xi_degree, ParameterLocus, PointKind, PointRow, System,
};

/// An exact algebraic number with a decimal approximation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    /// Minimal polynomial of `u`, absent for rationals.
    pub min_poly: Option<String>,
    /// The number as a polynomial in `u`.
    pub value: String,
    /// Non-authoritative; absent when the embedding is not real.
    pub approx_nonauthoritative: Option<String>,
}

impl AlgebraicNumber {
    pub fn from_field(x: &FieldElt) -> Self {
        match x.as_rational() {
            Some(r) => AlgebraicNumber {
                min_poly: None,
                value: rat_to_string(&r),
                approx_nonauthoritative: Some(format!("{:.6}", rat_to_f64(&r))),
            },
            None => {
                let m = x.modulus().expect("irrational element has a field");
                AlgebraicNumber {
                    min_poly: Some(poly_to_string(m, "u")),
                    value: x.to_poly_string("u"),
                    approx_nonauthoritative: real_roots(m).first().map(|&r| format!("{:.6}", x.approx(r))),
                }
            }
        }
    }
}

/// Real roots of a squarefree polynomial, in decreasing order (approximate).
pub fn real_roots(p: &Poly<Rat>) -> Vec<f64> {
    let c: Vec<f64> = p.coeffs().iter().map(rat_to_f64).collect();
    let Some(d) = p.degree() else { return Vec::new() };
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
    match d {
        0 => Vec::new(),
        1 => vec![-c[0] / c[1]],
        2 => {
            let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
            if disc < 0.0 {
                return Vec::new();
            }
            let r = disc.sqrt();
            let mut v = vec![(-c[1] + r) / (2.0 * c[2]), (-c[1] - r) / (2.0 * c[2])];
            v.sort_by(|a, b| b.total_cmp(a));
            v
        }
        _ => {
            let bound = 1.0 + c[..d].iter().map(|k| (k / c[d]).abs()).fold(0.0, f64::max);
            let n = 20000;
            let mut out = Vec::new();
            let step = 2.0 * bound / n as f64;
            for k in 0..n {
                let (mut lo, mut hi) = (-bound + k as f64 * step, -bound + (k + 1) as f64 * step);
                let (flo, fhi) = (eval(lo), eval(hi));
                if flo == 0.0 {
                    out.push(lo);
                    continue;
                }
                if flo * fhi > 0.0 {
                    continue;
                }
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if eval(lo) * eval(mid) <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            out.sort_by(|a, b| b.total_cmp(a));
            out
        }
    }
}

/// A point with exact coordinates after normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDto {
    pub text: String,
    pub coords: Vec<AlgebraicNumber>,
}

impl PointDto {
    pub fn from_point(p: &Point) -> Self {
        PointDto {
            text: p.to_string(),
            coords: p.normalized().coords().iter().map(AlgebraicNumber::from_field).collect(),
        }
    }
}

/// Echo of the input curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEcho {
    /// `"implicit"` or `"rational"`.
    pub kind: String,
    pub input: String,
    pub bidegree: BiDegree,
}

/// `ξ` of a system: normalized form and the scalar removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiSummary {
    pub normalized: String,
    pub scalar: String,
    pub degree: usize,
    pub expected_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDto {
    pub loci: Vec<String>,
    pub point: PointDto,
    /// Number of conjugate points the record stands for.
    pub points: usize,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemReport {
    pub system: String,
    pub xi: XiSummary,
    pub records: Vec<RecordDto>,
}

/// A row of the per-point overview.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRowDto {
    pub point: PointDto,
    pub loci: Vec<String>,
    pub points: usize,
    pub kind: PointKind,
    pub delta: Option<u32>,
    /// Weights in `(1,0), (0,1), (1,1)` from `ξ`.
    pub weights: [u32; 3],
    /// The same weights from gap sequences.
    pub gap_weights: [u32; 3],
    pub branches: Vec<crate::wronskian::BranchData>,
}

/// A computed total against its counting formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub name: String,
    /// Absent when only the formula side is available.
    pub computed: Option<i64>,
    pub formula: i64,
    pub status: CheckStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Formula value only.
    Info,
}

impl CountCheck {
    fn new(name: impl Into<String>, computed: Option<i64>, formula: i64) -> Self {
        let status = match computed {
            None => CheckStatus::Info,
            Some(c) if c == formula => CheckStatus::Pass,
            Some(_) => CheckStatus::Fail,
        };
        CountCheck {
            name: name.into(),
            computed,
            formula,
            status,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HessianDto {
    pub name: String,
    pub bidegree: BiDegree,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub curve: CurveEcho,
    pub systems: Vec<SystemReport>,
    pub points: Vec<PointRowDto>,
    pub checks: Vec<CountCheck>,
    pub hessians: Vec<HessianDto>,
    pub conjectures: Option<ConjectureReport>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    /// Whether some formula cross-check failed.
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn system_report(c: &RationalCurve, sys: System) -> Result<SystemReport> {
    let w = xi(c, sys)?;
    let (scalar, normalized) = w.normalize();
    let records = weierstrass_records(c, sys)?
        .iter()
        .map(|r| RecordDto {
            loci: r.loci.iter().map(|l| l.to_string()).collect(),
            point: PointDto::from_point(&r.image_point),
            points: r.points,
            weight: r.weight,
        })
        .collect();
    Ok(SystemReport {
        system: sys.to_string(),
        xi: XiSummary {
            normalized: normalized.to_string(),
            scalar: rat_to_string(&scalar),
            degree: w.degree(),
            expected_degree: xi_degree(c.bidegree(), sys),
        },
        records,
    })
}

fn smooth_total(rows: &[PointRow], k: usize, skip_tangent: bool) -> i64 {
    rows.iter()
        .filter(|r| r.kind == PointKind::Smooth)
        .filter(|r| !skip_tangent || r.branches.iter().all(|b| b.tangent_fiber.is_none()))
        .map(|r| (r.xi_weights[k] * r.points as u32) as i64)
        .sum()
}

/// Full analysis of a parametrized curve: the three standard systems plus
/// `extra`, the per-point overview, counting cross-checks, and the conjecture
/// checks when an equation is supplied.
pub fn analyze_rational(
    c: &RationalCurve,
    input: &str,
    extra: &[System],
    equation: Option<&ImplicitCurve>,
) -> Result<AnalysisReport> {
    let d = c.bidegree();
    let mut warnings = Vec::new();
    let mut systems = vec![System::X10, System::Y01];
    if d.a + d.b >= 3 {
        systems.push(System::XY11);
    } else {
        warnings.push(format!("the (1,1) system is skipped for type {d}"));
    }
    for s in extra {
        if !systems.contains(s) {
            systems.push(*s);
        }
    }
    let sys_reports: Vec<SystemReport> = systems.iter().map(|&s| system_report(c, s)).collect::<Result<_>>()?;
    for s in &sys_reports {
        if s.xi.degree != s.xi.expected_degree {
            warnings.push(format!(
                "deg xi{} = {} differs from {}; the parametrization may be improper",
                s.system, s.xi.degree, s.xi.expected_degree
            ));
        }
    }
    if let Some(f) = equation {
        if f.bidegree() != d || !c.satisfies(f.f()) {
            return Err(Error::Inconsistent("the parametrization does not lie on the implicit curve".into()));
        }
    }

    let mut points = Vec::new();
    let mut checks = Vec::new();
    let mut conjectures = None;
    if d.a + d.b >= 3 {
        let rows = point_table(c)?;
        let ds = deltas(c, equation, &rows)?;
        for (r, delta) in rows.iter().zip(ds) {
            points.push(PointRowDto {
                point: PointDto::from_point(&r.point),
                loci: r.loci.iter().map(|l| l.to_string()).collect(),
                points: r.points,
                kind: r.kind,
                delta,
                weights: r.xi_weights,
                gap_weights: r.gap_weights,
                branches: r.branches.clone(),
            });
        }
        if rows.iter().any(|r| r.loci.iter().any(|l| l.degree > 2)) {
            warnings.push("loci of degree > 2 are reported unmerged".into());
        }
        let agree = rows.iter().filter(|r| r.xi_weights == r.gap_weights).count();
        checks.push(CountCheck::new("points where gap and xi weights agree", Some(agree as i64), rows.len() as i64));

        let input = |dir| CountInput {
            bidegree: d,
            genus: 0,
            branch_l_values: singular_l_values(&rows, dir),
        };
        let w10 = count_fiber_weierstrass(&input(FiberDirection::X), FiberDirection::X)?;
        let w01 = count_fiber_weierstrass(&input(FiberDirection::Y), FiberDirection::Y)?;
        checks.push(CountCheck::new("W(1,0)", Some(smooth_total(&rows, 0, false)), w10));
        checks.push(CountCheck::new("W(0,1)", Some(smooth_total(&rows, 1, false)), w01));
        let delta = crate::curvemodel::total_delta_rational(c);
        let w11 = count_11_weierstrass(d, delta, &count_branches(&rows))?;
        checks.push(CountCheck::new("W(1,1)", Some(smooth_total(&rows, 2, true)), w11));
        if let Some(f) = equation {
            if d.a >= 2 && d.b >= 2 {
                let cr = verify_conjecture_31(c, f)?;
                if !cr.per_point_pass() {
                    warnings.push("conjecture check: the mixed Hessian attribution fails at some point".into());
                }
                if !cr.totals_pass() {
                    warnings.push("conjecture check: a total differs from its expected value".into());
                }
                conjectures = Some(cr);
            }
        }
    }
    for (k, s) in systems.iter().enumerate() {
        let total: i64 = sys_reports[k].records.iter().map(|r| (r.weight as usize * r.points) as i64).sum();
        checks.push(CountCheck::new(format!("total weight {s} vs deg xi"), Some(total), xi_degree(d, *s) as i64));
    }

    let hessians = match equation {
        Some(f) => hessian_dtos(f),
        None => Vec::new(),
    };
    Ok(AnalysisReport {
        curve: CurveEcho {
            kind: "rational".into(),
            input: input.into(),
            bidegree: d,
        },
        systems: sys_reports,
        points,
        checks,
        hessians,
        conjectures,
        warnings,
    })
}

/// The Hessian covariants that are defined for the curve's type.
pub fn hessian_dtos(f: &ImplicitCurve) -> Vec<HessianDto> {
    let mut out = Vec::new();
    let mut push = |name: &str, h: Result<BiPoly>| {
        if let Ok(h) = h {
            out.push(HessianDto {
                name: name.into(),
                bidegree: h.bidegree(),
                polynomial: h.normalized().to_string(),
            });
        }
    };
    push("H(1,0)", hessian(f, FiberDirection::X));
    push("H(0,1)", hessian(f, FiberDirection::Y));
    push("mixed", mixed_hessian(f));
    out
}

fn branch_class(b: &crate::curvemodel::BranchInput) -> BranchClass {
    match b.tangent_fiber {
        Some(fiber) => BranchClass::J { m: b.m, l: b.l, fiber },
        None => BranchClass::I { m: b.m, c: b.c_value() },
    }
}

/// Analysis of an implicit curve: Hessians, and the counting formulas when
/// singularity data are given.
pub fn analyze_implicit(f: &ImplicitCurve, input: &str, sing: Option<&SingularityInput>) -> Result<AnalysisReport> {
    let d = f.bidegree();
    let mut warnings = Vec::new();
    let mut checks = Vec::new();
    match sing {
        None => warnings.push("singularity data required; counts skipped".into()),
        Some(s) => {
            for p in &s.points {
                let pt = s.parse_point(p)?;
                if !f.contains(&pt) {
                    return Err(Error::Inconsistent(format!("singular point {pt} is not on the curve")));
                }
                if !f.is_singular_at(&pt) {
                    return Err(Error::Inconsistent(format!("point {pt} is not singular")));
                }
            }
            let g = genus(d, s.total_delta())?.genus;
            let branches: Vec<_> = s.points.iter().flat_map(|p| p.branches.iter()).collect();
            let l_values = |dir: FiberDirection| -> Vec<u32> {
                branches
                    .iter()
                    .map(|b| if b.tangent_fiber == Some(dir) { b.l } else { b.m })
                    .collect()
            };
            for (name, dir) in [("W(1,0)", FiberDirection::X), ("W(0,1)", FiberDirection::Y)] {
                let input = CountInput {
                    bidegree: d,
                    genus: g,
                    branch_l_values: l_values(dir),
                };
                checks.push(CountCheck::new(name, None, count_fiber_weierstrass(&input, dir)?));
            }
            if d.a + d.b >= 3 {
                let classes: Vec<BranchClass> = branches.iter().map(|b| branch_class(b)).collect();
                let w = count_11_weierstrass(d, s.total_delta(), &classes)?;
                checks.push(CountCheck::new("W(1,1)", None, w));
                warnings.push("W(1,1) does not subtract smooth points with a tangent fiber".into());
            }
        }
    }
    Ok(AnalysisReport {
        curve: CurveEcho {
            kind: "implicit".into(),
            input: input.into(),
            bidegree: d,
        },
        systems: Vec::new(),
        points: Vec::new(),
        checks,
        hessians: hessian_dtos(f),
        conjectures: None,
        warnings,
    })
}

/// An osculating curve with its oracle contact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsculateReport {
    pub point: PointDto,
    pub system: String,
    pub polynomial: String,
    /// Coefficients by monomial, normalized so the last is 1.
    pub coefficients: Vec<(String, AlgebraicNumber)>,
    /// `r(α,β)`.
    pub r: usize,
    pub contact: Contact,
    pub hyperosculating: Option<bool>,
}

fn monic(g: &BiPoly<FieldElt>) -> BiPoly<FieldElt> {
    match g.terms().iter().next_back() {
        Some((_, c)) => g.scale(&c.invert().expect("nonzero coefficient")),
        None => g.clone(),
    }
}

fn osculate_report(p: &Point, sys: System, g: &BiPoly<FieldElt>, contact: Contact) -> OsculateReport {
    let g = monic(g);
    let coefficients = g
        .terms()
        .iter()
        .map(|(e, c)| (crate::bipoly::monomial_string(e), AlgebraicNumber::from_field(c)))
        .collect();
    let r = sys.r();
    OsculateReport {
        point: PointDto::from_point(p),
        system: sys.to_string(),
        polynomial: g.to_string(),
        coefficients,
        r,
        hyperosculating: match contact {
            Contact::Exact(k) => Some(k as usize > r),
            Contact::AtLeast(k) => (k as usize > r).then_some(true),
        },
        contact,
    }
}

/// The locus of a parameter over `Q` or a quadratic field.
pub fn locus_of_parameter(s0: &FieldElt, t0: &FieldElt) -> Result<ParameterLocus> {
    if s0.is_zero() {
        if t0.is_zero() {
            return Err(Error::Invalid("the parameter (0:0) is not a point of P1".into()));
        }
        return Ok(ParameterLocus::rational(&Rat::zero(), &Rat::one()));
    }
    let v = t0.clone() * s0.invert()?;
    if let Some(r) = v.as_rational() {
        return Ok(ParameterLocus::rational(&Rat::one(), &r));
    }
    let m = v.modulus().expect("irrational").clone();
    if m.degree() != Some(2) {
        return Err(Error::Invalid("parameters must lie in Q or a quadratic field".into()));
    }
    // conjugate of a + b u is a + b(-p - u) for u^2 + p u + q
    let val = v.value();
    let (a, b) = (val.coeff(0), val.coeff(1));
    let p = m.coeff(1);
    let trace = Rat::from_int(2) * a.clone() - b.clone() * p;
    let u = FieldElt::generator(&m)?;
    let conj = FieldElt::rational(a) + FieldElt::rational(b) * (-FieldElt::rational(m.coeff(1)) - u);
    let norm = (v * conj).as_rational().expect("norm is rational");
    Ok(ParameterLocus::new(&BinaryForm::new(vec![norm, -trace, Rat::one()])))
}

/// Osculating curve of a standard system at the image of `(s0:t0)`.
pub fn osculate_rational(c: &RationalCurve, s0: &FieldElt, t0: &FieldElt, sys: System) -> Result<OsculateReport> {
    let locus = locus_of_parameter(s0, t0)?;
    let p = c.point_at(s0, t0)?;
    if branch_data(c, &locus)?.m > 1 || !partners(c, &locus).is_empty() {
        return Err(Error::SingularPoint);
    }
    let g = if sys == System::XY11 {
        match omega(c, sys)?.one_one_at(s0, t0) {
            Some(o) => o.to_bipoly(),
            None => fiber_product(&p).to_bipoly(),
        }
    } else {
        omega(c, sys)?.at(s0, t0)
    };
    let k = contact_at_parameter(c, &g, s0, t0)?;
    Ok(osculate_report(&p, sys, &g, Contact::Exact(k)))
}

/// Osculating curve of a standard system at a smooth point of an implicit curve.
pub fn osculate_implicit(f: &ImplicitCurve, p: &Point, sys: System) -> Result<OsculateReport> {
    if !f.contains(p) {
        return Err(Error::NotOnCurve);
    }
    if f.is_singular_at(p) {
        return Err(Error::SingularPoint);
    }
    let g = if sys == System::X10 {
        osculating_fiber(p, FiberDirection::X)
    } else if sys == System::Y01 {
        osculating_fiber(p, FiberDirection::Y)
    } else if sys == System::XY11 {
        match tangent_fiber(f, p)? {
            Some(_) => fiber_product(p).to_bipoly(),
            None => osculating_11(f, p)?.to_bipoly(),
        }
    } else {
        return Err(Error::Invalid(format!("osculation is available for (1,0), (0,1), (1,1); got {sys}")));
    };
    let contact = mult_implicit_smooth(f, &g, p, None)?;
    Ok(osculate_report(p, sys, &g, contact))
}

/// Evaluates a form at a real parameter.
pub(crate) fn eval_f64(f: &BinaryForm, s: f64, t: f64) -> f64 {
    let d = f.degree();
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| rat_to_f64(c) * s.powi((d - k) as i32) * t.powi(k as i32))
        .sum()
}
