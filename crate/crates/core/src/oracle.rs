//! Independent intersection multiplicities: orders of pullbacks along a
//! parametrization, or along a formal local branch at a smooth point of an
//! implicit curve. Also the per-point checks of the two counting conjectures.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bipoly::{BiPoly, Point, Var};
use crate::curvemodel::{ImplicitCurve, RationalCurve};
use crate::error::{Error, Result};
use crate::exactalg::{FieldElt, Poly, Scalar};
use crate::fibers::mixed_hessian;
use crate::wronskian::{loci_of, point_table, ParameterLocus, PointRow};

/// A power series known modulo `τ^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSeries {
    pub coeffs: Poly<FieldElt>,
    pub n: usize,
}

impl LocalSeries {
    pub fn new(coeffs: Poly<FieldElt>, n: usize) -> Self {
        LocalSeries {
            coeffs: coeffs.truncate(n),
            n,
        }
    }

    /// An exact polynomial, valid to any order.
    pub fn exact(coeffs: Poly<FieldElt>) -> Self {
        LocalSeries { coeffs, n: usize::MAX }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.coeffs + &o.coeffs, self.n.min(o.n))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.coeffs - &o.coeffs, self.n.min(o.n))
    }

    pub fn mul(&self, o: &Self) -> Self {
        // a product is valid up to the smaller validity shifted by the other order
        let a = self.coeffs.low_order().unwrap_or(0);
        let b = o.coeffs.low_order().unwrap_or(0);
        let n = self.n.saturating_add(b).min(o.n.saturating_add(a));
        Self::new(&self.coeffs * &o.coeffs, n)
    }

    /// The order, or `Err(n)` when the series vanishes below the truncation.
    pub fn order(&self) -> std::result::Result<usize, usize> {
        match self.coeffs.low_order() {
            Some(k) if k < self.n => Ok(k),
            _ => Err(self.n),
        }
    }
}

/// A contact order, possibly only bounded below by truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Contact {
    Exact(u32),
    AtLeast(u32),
}

impl Contact {
    /// Whether the contact is at least `k`.
    pub fn at_least(&self, k: u32) -> bool {
        match *self {
            Contact::Exact(v) | Contact::AtLeast(v) => v >= k,
        }
    }

    pub fn exact(&self) -> Option<u32> {
        match *self {
            Contact::Exact(v) => Some(v),
            Contact::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Contact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contact::Exact(v) => write!(f, "{v}"),
            Contact::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Contact order at the locus: multiplicity of its factor in the pullback
/// of `G`, i.e. the intersection multiplicity at each conjugate branch.
pub fn mult_rational(c: &RationalCurve, g: &BiPoly, locus: &ParameterLocus) -> Result<u32> {
    let mut pb = c.pullback(g);
    if pb.is_zero() {
        return Err(Error::NonProperIntersection);
    }
    let mut k = 0;
    while let Some(q) = pb.div_exact(&locus.factor) {
        pb = q;
        k += 1;
    }
    Ok(k)
}

/// Every locus of the pullback of `G` with its multiplicity.
pub fn intersection_loci(c: &RationalCurve, g: &BiPoly) -> Result<Vec<(ParameterLocus, u32)>> {
    let pb = c.pullback(g);
    if pb.is_zero() {
        return Err(Error::NonProperIntersection);
    }
    if pb.degree() == 0 {
        return Ok(Vec::new());
    }
    loci_of(&pb)
}

/// Order of `G(Φ)` at the parameter `(s0:t0)`; `G` may have algebraic coefficients.
pub fn contact_at_parameter(c: &RationalCurve, g: &BiPoly<FieldElt>, s0: &FieldElt, t0: &FieldElt) -> Result<u32> {
    let series = c.series_at(s0, t0);
    let pb = g.pullback_series(&series, None);
    pb.low_order().map(|k| k as u32).ok_or(Error::NonProperIntersection)
}

/// The local branch of a smooth point: the four coordinates as series in a
/// local parameter `τ`, valid modulo `τ^n`.
pub fn smooth_branch(c: &ImplicitCurve, p: &Point, n: usize) -> Result<[Poly<FieldElt>; 4]> {
    if !c.contains(p) {
        return Err(Error::NotOnCurve);
    }
    if c.is_singular_at(p) {
        return Err(Error::SingularPoint);
    }
    let q = p.normalized();
    // chart: the coordinate normalized to 1 in each pair
    let i = if q.x[1].is_one() { 1 } else { 0 };
    let j = if q.y[1].is_one() { 1 } else { 0 };
    let (xv, yv) = (Var::x(1 - i), Var::y(1 - j));
    let fy = c.f().partial(yv).evaluate(&q);
    let fx = c.f().partial(xv).evaluate(&q);
    // prefer solving for the y coordinate
    let solve_y = !fy.is_zero();
    let lin = if solve_y { fy } else { fx };
    let inv = lin.inv().expect("smooth point");
    let base = q.coords();
    let tau = Poly::new(vec![FieldElt::zero(), FieldElt::one()]);
    let build = |dep: &Poly<FieldElt>| -> [Poly<FieldElt>; 4] {
        let mut comps: [Poly<FieldElt>; 4] = base.clone().map(Poly::constant);
        let (free_k, dep_k) = if solve_y {
            (xv.index(), yv.index())
        } else {
            (yv.index(), xv.index())
        };
        comps[free_k] = &comps[free_k] + &tau;
        comps[dep_k] = &comps[dep_k] + dep;
        comps
    };
    let f = c.f().to_field();
    let mut dep: Poly<FieldElt> = Poly::zero();
    for k in 1..n {
        let val = f.pullback_series(&build(&dep), Some(k + 1));
        let ck = val.coeff(k);
        if !ck.is_zero() {
            dep = &dep - &Poly::monomial(ck * inv.clone(), k);
        }
    }
    Ok(build(&dep))
}

/// Contact order of `G` with `C` at a smooth point, computed along the local
/// branch modulo `τ^n` (default `4(a+b)`, retried once at twice that).
pub fn mult_implicit_smooth(c: &ImplicitCurve, g: &BiPoly<FieldElt>, p: &Point, n: Option<usize>) -> Result<Contact> {
    let d = c.bidegree();
    let base = n.unwrap_or(4 * (d.a + d.b) as usize).max(2);
    let mut last = 0;
    for n in [base, 2 * base] {
        let branch = smooth_branch(c, p, n)?;
        let s = LocalSeries::new(g.pullback_series(&branch, Some(n)), n);
        match s.order() {
            Ok(k) => return Ok(Contact::Exact(k as u32)),
            Err(m) => last = m,
        }
    }
    Ok(Contact::AtLeast(last as u32))
}

/// Generic-polar intersection number along one branch at `(s0:t0)`: the
/// order of `λ F_X(Φ) φ_i + μ F_Y(Φ) ψ_j` for generic `λ, μ`, in the chart
/// `x_i = y_j = 1` around the image point.
fn polar_order(c: &RationalCurve, f: &BiPoly, s0: &FieldElt, t0: &FieldElt) -> Result<u32> {
    let p = c.point_at(s0, t0)?.normalized();
    let i = if p.x[1].is_one() { 1 } else { 0 };
    let j = if p.y[1].is_one() { 1 } else { 0 };
    let series = c.series_at(s0, t0);
    let fx = f.partial(Var::x(1 - i)).to_field().pullback_series(&series, None);
    let fy = f.partial(Var::y(1 - j)).to_field().pullback_series(&series, None);
    let a = &fx * &series[i];
    let b = &fy * &series[2 + j];
    match (a.low_order(), b.low_order()) {
        (None, None) => Err(Error::NonProperIntersection),
        (x, y) => Ok(x.unwrap_or(usize::MAX).min(y.unwrap_or(usize::MAX)) as u32),
    }
}

/// Delta invariant of the image point of a table row, from the polar formula
/// `δ = ((C·P)_p - m + r) / 2` with `m` the multiplicity and `r` the number of branches.
pub fn delta_at(c: &RationalCurve, f: &ImplicitCurve, row: &PointRow) -> Result<u32> {
    let per_locus = |l: &ParameterLocus| l.degree / row.points;
    let mut polar = 0u32;
    for l in &row.loci {
        let (s0, t0) = l.parameter();
        polar += polar_order(c, f.f(), &s0, &t0)? * per_locus(l) as u32;
    }
    let m: u32 = row.branches.iter().map(|b| b.m).sum();
    let r = row.branches.len() as u32;
    let twice = polar + r;
    if twice < m || (twice - m) % 2 != 0 {
        return Err(Error::Inconsistent(format!("polar data at {} give a non-integral delta", row.point)));
    }
    Ok((twice - m) / 2)
}

/// Per-point deltas: from the polar formula when `F` is known, otherwise
/// only when there is a single singular point (which then carries the whole
/// arithmetic genus).
pub fn deltas(c: &RationalCurve, f: Option<&ImplicitCurve>, rows: &[PointRow]) -> Result<Vec<Option<u32>>> {
    match f {
        Some(f) => rows.iter().map(|r| delta_at(c, f, r).map(Some)).collect(),
        None => {
            let d = c.bidegree();
            let pa = ((d.a as i64 - 1) * (d.b as i64 - 1)).max(0) as u32;
            let singular: Vec<usize> = (0..rows.len()).filter(|&k| rows[k].kind != crate::wronskian::PointKind::Smooth).collect();
            Ok((0..rows.len())
                .map(|k| {
                    if rows[k].kind == crate::wronskian::PointKind::Smooth {
                        Some(0)
                    } else if singular.len() == 1 {
                        Some(pa)
                    } else {
                        None
                    }
                })
                .collect())
        }
    }
}

/// One point of the per-point conjecture checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjecturePoint {
    pub point: String,
    pub points: usize,
    pub delta: u32,
    pub w10: u32,
    pub w01: u32,
    pub w11: u32,
    /// Intersection multiplicity of the mixed Hessian with `C` at the point.
    pub hessian_mult: u32,
    /// `4δ + w(1,0) + w(0,1)`.
    pub expected: u32,
    pub pass: bool,
}

/// Evidence for the two counting conjectures on a rational curve with known equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub points: Vec<ConjecturePoint>,
    /// Degree of the pullback of the mixed Hessian.
    pub hessian_total: u32,
    /// `4ab - 2a - 2b`.
    pub expected_total: u32,
    /// Loci of the mixed Hessian not at any listed point.
    pub unlisted_loci: Vec<String>,
    /// `Σ (w(1,1) + 12δ)` over all points.
    pub oneone_total: u32,
    /// `12ab - 8a - 8b`.
    pub oneone_expected: u32,
}

impl ConjectureReport {
    pub fn per_point_pass(&self) -> bool {
        self.points.iter().all(|p| p.pass) && self.unlisted_loci.is_empty()
    }

    pub fn totals_pass(&self) -> bool {
        self.hessian_total == self.expected_total && self.oneone_total == self.oneone_expected
    }
}

/// Compares, at every point of interest, the multiplicity of the mixed
/// Hessian against `4δ + w(1,0) + w(0,1)`, and checks the totals
/// `4ab - 2a - 2b` and `Σ(w(1,1) + 12δ) = 12ab - 8a - 8b`.
pub fn verify_conjecture_31(c: &RationalCurve, f: &ImplicitCurve) -> Result<ConjectureReport> {
    if !c.satisfies(f.f()) {
        return Err(Error::Inconsistent("the parametrization does not lie on the implicit curve".into()));
    }
    let d = c.bidegree();
    let h = mixed_hessian(f)?;
    let hl = intersection_loci(c, &h)?;
    let hessian_total = c.pullback(&h).degree() as u32;
    let rows = point_table(c)?;
    let ds = deltas(c, Some(f), &rows)?;
    let mut points = Vec::new();
    let mut listed: Vec<&ParameterLocus> = Vec::new();
    let mut oneone_total = 0;
    for (row, delta) in rows.iter().zip(ds) {
        let delta = delta.expect("known with F");
        let mut hm = 0;
        for l in &row.loci {
            listed.push(l);
            let k = hl.iter().find(|(x, _)| x == l).map_or(0, |(_, m)| *m);
            hm += k * (l.degree / row.points) as u32;
        }
        let [w10, w01, w11] = row.xi_weights;
        let expected = 4 * delta + w10 + w01;
        oneone_total += (w11 + 12 * delta) * row.points as u32;
        points.push(ConjecturePoint {
            point: row.point.to_string(),
            points: row.points,
            delta,
            w10,
            w01,
            w11,
            hessian_mult: hm,
            expected,
            pass: hm == expected,
        });
    }
    let unlisted_loci = hl
        .iter()
        .filter(|(l, _)| !listed.contains(&l))
        .map(|(l, m)| format!("{l} (multiplicity {m})"))
        .collect();
    let (a, b) = (d.a, d.b);
    Ok(ConjectureReport {
        points,
        hessian_total,
        expected_total: 4 * a * b - 2 * a - 2 * b,
        unlisted_loci,
        oneone_total,
        oneone_expected: 12 * a * b - 8 * a - 8 * b,
    })
}

/// Contact of the curve `G` with the parametrized curve at each zero of the
/// locus, over the locus field.
pub fn contact_at_locus(c: &RationalCurve, g: &BiPoly<FieldElt>, locus: &ParameterLocus) -> Result<u32> {
    let (s0, t0) = locus.parameter();
    contact_at_parameter(c, g, &s0, &t0)
}
