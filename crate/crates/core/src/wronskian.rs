//! Rational curves: osculating determinants `ω`, Wronskians `ξ`, Weierstrass
//! loci with weights, gap sequences and branch invariants, cusps and nodes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bipoly::{det_bareiss, det_bareiss_int, det_laplace, first_row_cofactors, BiDegree, BiPoly, Exps, Point};
use crate::curvemodel::{FiberDirection, RationalCurve};
use crate::error::{Error, Result};
use crate::exactalg::{
    gcd_forms, irreducible_factorization, rat_int, series_at, BinaryForm, FieldElt, Poly, Rat, Scalar,
};
use crate::oneone::{BranchClass, OneOneCurve};

/// A linear system of `(α,β)`-curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct System {
    pub alpha: u32,
    pub beta: u32,
}

impl System {
    pub const X10: System = System { alpha: 1, beta: 0 };
    pub const Y01: System = System { alpha: 0, beta: 1 };
    pub const XY11: System = System { alpha: 1, beta: 1 };

    pub fn new(alpha: u32, beta: u32) -> Self {
        System { alpha, beta }
    }

    /// Projective dimension `r = (α+1)(β+1) - 1`.
    pub fn r(&self) -> usize {
        ((self.alpha + 1) * (self.beta + 1) - 1) as usize
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// `φ_i ψ_j` in the order `00, 01, 10, 11`.
pub fn segre_forms(c: &RationalCurve) -> [BinaryForm; 4] {
    let [p0, p1] = c.phi();
    let [q0, q1] = c.psi();
    [p0 * q0, p0 * q1, p1 * q0, p1 * q1]
}

/// Pullbacks of the monomial basis `x0^(α-i) x1^i y0^(β-j) y1^j`, ordered by `(i, j)`.
pub fn basis_pullbacks(c: &RationalCurve, sys: System) -> Vec<BinaryForm> {
    let [p0, p1] = c.phi();
    let [q0, q1] = c.psi();
    let mut out = Vec::with_capacity(sys.r() + 1);
    for i in 0..=sys.alpha {
        let x = &p0.pow(sys.alpha - i) * &p1.pow(i);
        for j in 0..=sys.beta {
            out.push(&x * &(&q0.pow(sys.beta - j) * &q1.pow(j)));
        }
    }
    out
}

/// The osculating-curve determinant: coefficient forms of the monomials of
/// the system, to be evaluated at a parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Omega {
    pub system: System,
    pub terms: Vec<(Exps, BinaryForm)>,
}

impl Omega {
    /// The osculating curve's defining form at `(s0:t0)`.
    pub fn at(&self, s0: &FieldElt, t0: &FieldElt) -> BiPoly<FieldElt> {
        let deg = BiDegree::new(self.system.alpha, self.system.beta);
        BiPoly::from_terms(deg, self.terms.iter().map(|(e, f)| (*e, f.eval(s0, t0)))).expect("system bidegree")
    }

    /// `ω(s0,t0)` as a (1,1)-curve; `None` where it vanishes identically.
    pub fn one_one_at(&self, s0: &FieldElt, t0: &FieldElt) -> Option<OneOneCurve> {
        assert_eq!(self.system, System::XY11);
        let g: Vec<FieldElt> = self.terms.iter().map(|(_, f)| f.eval(s0, t0)).collect();
        OneOneCurve::new(g.try_into().expect("four")).ok()
    }

    /// Common factor of all coefficient forms.
    pub fn content(&self) -> Result<BinaryForm> {
        let mut g = BinaryForm::zero();
        for (_, f) in &self.terms {
            if !f.is_zero() {
                g = if g.is_zero() { f.normalized() } else { gcd_forms(&g, f)? };
            }
        }
        Ok(g)
    }
}

fn need_11(c: &RationalCurve) -> Result<()> {
    let d = c.bidegree();
    if d.a + d.b < 3 {
        return Err(Error::Invalid(format!("the (1,1) system needs a + b >= 3, got type {d}")));
    }
    Ok(())
}

fn neg(f: &BinaryForm) -> BinaryForm {
    f.scale(&-Rat::one())
}

/// `ω(1,0) = φ1 x0 - φ0 x1`, `ω(0,1) = ψ1 y0 - ψ0 y1`, and `ω(1,1)` the 4×4
/// determinant with first row `x0y0, x0y1, x1y0, x1y1` and the second
/// derivatives of the Segre components below.
pub fn omega(c: &RationalCurve, sys: System) -> Result<Omega> {
    let terms = if sys == System::X10 {
        let [p0, p1] = c.phi();
        vec![([1, 0, 0, 0], p1.clone()), ([0, 1, 0, 0], neg(p0))]
    } else if sys == System::Y01 {
        let [q0, q1] = c.psi();
        vec![([0, 0, 1, 0], q1.clone()), ([0, 0, 0, 1], neg(q0))]
    } else if sys == System::XY11 {
        need_11(c)?;
        let seg = segre_forms(c);
        let rows: Vec<Vec<BinaryForm>> = [(2, 0), (1, 1), (0, 2)]
            .iter()
            .map(|&(i, j)| seg.iter().map(|f| f.partial(i, j)).collect())
            .collect();
        let cof = first_row_cofactors(&rows)?;
        let monos: [Exps; 4] = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];
        monos.into_iter().zip(cof).collect()
    } else {
        return Err(Error::Invalid(format!("omega is defined for (1,0), (0,1), (1,1); got {sys}")));
    };
    Ok(Omega { system: sys, terms })
}

fn degenerate() -> Error {
    Error::Degenerate("degenerate system on this curve: the Wronskian vanishes identically".into())
}

/// The Wronskian `ξ` of the system: 2×2 determinants of first partials for
/// `(1,0)` and `(0,1)`, the 4×4 determinant of third partials of the Segre
/// components for `(1,1)`, and [`xi_general`] otherwise.
pub fn xi(c: &RationalCurve, sys: System) -> Result<BinaryForm> {
    let two = |f: [&BinaryForm; 2]| {
        let m = vec![
            vec![f[0].partial_s(), f[1].partial_s()],
            vec![f[0].partial_t(), f[1].partial_t()],
        ];
        det_laplace(&m)
    };
    let w = if sys == System::X10 {
        two(c.phi())?
    } else if sys == System::Y01 {
        two(c.psi())?
    } else if sys == System::XY11 {
        need_11(c)?;
        let seg = segre_forms(c);
        let m: Vec<Vec<BinaryForm>> = (0..4)
            .map(|k| seg.iter().map(|f| f.partial(3 - k, k)).collect())
            .collect();
        det_laplace(&m)?
    } else {
        return xi_general(c, sys.alpha, sys.beta);
    };
    if w.is_zero() {
        return Err(degenerate());
    }
    Ok(w)
}

/// The `(r+1)×(r+1)` Wronskian of the pulled-back monomial basis of the
/// `(α,β)` system, rows `∂^r/∂s^(r-k)∂t^k`; a form of degree
/// `(r+1)(bα+aβ-r)`.
///
/// Computed by evaluating the numeric determinant at `(1, c)` for enough
/// integers `c` and interpolating.
pub fn xi_general(c: &RationalCurve, alpha: u32, beta: u32) -> Result<BinaryForm> {
    let sys = System::new(alpha, beta);
    let d = c.bidegree();
    let r = sys.r();
    let pd = (d.b * alpha + d.a * beta) as usize;
    if pd < r {
        return Err(Error::Invalid(format!(
            "pullback degree {pd} is below the dimension r = {r} of the {sys} system"
        )));
    }
    // columns scaled to integer coefficients; the determinant is divided back
    let mut unscale = Rat::one();
    let basis: Vec<Vec<BigInt>> = basis_pullbacks(c, sys)
        .iter()
        .map(|f| {
            let (k, prim) = f.normalize();
            unscale *= &k;
            prim.coeffs().iter().map(|c| c.to_integer()).collect()
        })
        .collect();
    // entry (k, col): coefficients in u = t/s of the k-th partial, low degree first
    let entries: Vec<Vec<Vec<BigInt>>> = (0..=r)
        .map(|k| basis.iter().map(|f| int_partial(f, r - k, k)).collect())
        .collect();
    let deg = (r + 1) * (pd - r);
    let half = (deg / 2) as i64;
    let xs: Vec<BigInt> = (0..=deg as i64).map(|k| BigInt::from(k - half)).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for x in &xs {
        let m: Vec<Vec<BigInt>> = entries
            .iter()
            .map(|row| row.iter().map(|p| p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)).collect())
            .collect();
        ys.push(Rat::from_integer(det_bareiss_int(&m)?) * &unscale);
    }
    let xs: Vec<Rat> = xs.into_iter().map(Rat::from_integer).collect();
    let p = Poly::interpolate(&xs, &ys);
    if p.is_zero() {
        return Err(degenerate());
    }
    Ok(BinaryForm::from_dehomogenized(&p, deg))
}

/// `∂^(i+j)/∂s^i∂t^j` of a form given by its integer coefficients (`s^(d-k) t^k`
/// at index `k`), dehomogenized at `s = 1`: coefficient of `u^k` at index `k`.
fn int_partial(f: &[BigInt], i: usize, j: usize) -> Vec<BigInt> {
    let d = f.len() - 1;
    let falling = |n: usize, m: usize| -> BigInt { (0..m).map(|q| BigInt::from(n - q)).product() };
    let mut out = Vec::new();
    for (k, c) in f.iter().enumerate() {
        if k < j || d - k < i {
            continue;
        }
        let coeff = c * falling(d - k, i) * falling(k, j);
        let idx = k - j;
        if out.len() <= idx {
            out.resize(idx + 1, BigInt::zero());
        }
        out[idx] = coeff;
    }
    out
}

/// Expected degree of `ξ` for the system.
pub fn xi_degree(d: BiDegree, sys: System) -> usize {
    let r = sys.r();
    let pd = (d.b * sys.alpha + d.a * sys.beta) as usize;
    (r + 1) * pd.saturating_sub(r)
}

/// An irreducible factor of a form, standing for its zeros in P¹.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterLocus {
    pub factor: BinaryForm,
    pub degree: usize,
}

impl ParameterLocus {
    /// The caller guarantees irreducibility.
    pub fn new(factor: &BinaryForm) -> Self {
        let f = factor.normalized();
        ParameterLocus {
            degree: f.degree(),
            factor: f,
        }
    }

    /// The locus of the rational parameter `(s0:t0)`.
    pub fn rational(s0: &Rat, t0: &Rat) -> Self {
        Self::new(&BinaryForm::new(vec![t0.clone(), -s0.clone()]))
    }

    /// A representative zero `(s0:t0)`: `(0:1)` for the factor `s`, otherwise
    /// `(1:u)` with `u` a root of `f(1,u)` (a rational or a field generator).
    pub fn parameter(&self) -> (FieldElt, FieldElt) {
        let q = self.factor.dehomogenize();
        if q.degree() != Some(self.degree) {
            return (FieldElt::zero(), FieldElt::one());
        }
        let u = FieldElt::generator(&q).expect("positive degree");
        (FieldElt::one(), u)
    }

    /// All zeros over the locus field when it has degree at most 2.
    pub fn conjugate_parameters(&self) -> Vec<(FieldElt, FieldElt)> {
        let (s0, t0) = self.parameter();
        if self.degree != 2 {
            return vec![(s0, t0)];
        }
        // u^2 + p u + q: the other root is -p - u
        let q = self.factor.dehomogenize().monic();
        let other = -FieldElt::in_field_of(&t0, Poly::constant(q.coeff(1))) - t0.clone();
        vec![(s0.clone(), t0), (s0, other)]
    }

}

impl fmt::Display for ParameterLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factor)
    }
}

/// Irreducible factors with multiplicities, as loci.
pub fn loci_of(f: &BinaryForm) -> Result<Vec<(ParameterLocus, u32)>> {
    let fac = irreducible_factorization(f)?;
    Ok(fac.factors.iter().map(|(g, m)| (ParameterLocus::new(g), *m)).collect())
}

/// Whether two points can be compared exactly (same field or rational).
fn comparable(p: &Point, q: &Point) -> bool {
    match (p.field_like().modulus(), q.field_like().modulus()) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    }
}

/// Loci mapping to one image point, with the weight of that point.
#[derive(Clone, Debug)]
pub struct WeierstrassRecord {
    pub system: System,
    pub loci: Vec<ParameterLocus>,
    /// A representative image point, over the field of the first locus.
    pub image_point: Point,
    /// Number of conjugate image points the record stands for.
    pub points: usize,
    /// Weight of each of those points.
    pub weight: u32,
}

/// A locus and its image, prepared for grouping.
struct Imaged {
    locus: ParameterLocus,
    mult: u32,
    point: Point,
    /// Distinct image points of the locus's zeros.
    points: usize,
}

fn image(c: &RationalCurve, locus: &ParameterLocus) -> Result<(Point, usize)> {
    let params = locus.conjugate_parameters();
    let (s0, t0) = &params[0];
    let p = c.point_at(s0, t0)?;
    let mut points = locus.degree;
    if params.len() == 2 {
        let q = c.point_at(&params[1].0, &params[1].1)?;
        if p == q {
            points = 1;
        }
    }
    Ok((p, points))
}

/// Groups loci by image point; weights of loci with a common image add up.
fn group(c: &RationalCurve, sys: System, loci: Vec<(ParameterLocus, u32)>) -> Result<Vec<WeierstrassRecord>> {
    let mut items = Vec::new();
    for (locus, mult) in loci {
        let (point, points) = image(c, &locus)?;
        items.push(Imaged { locus, mult, point, points });
    }
    let mut used = vec![false; items.len()];
    let mut out = Vec::new();
    for i in 0..items.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let head = &items[i];
        let mut loci = vec![head.locus.clone()];
        let mut weight = head.mult * (head.locus.degree / head.points) as u32;
        for j in i + 1..items.len() {
            let it = &items[j];
            if !used[j] && it.points == head.points && comparable(&head.point, &it.point) && head.point == it.point {
                used[j] = true;
                loci.push(it.locus.clone());
                weight += it.mult * (it.locus.degree / it.points) as u32;
            }
        }
        out.push(WeierstrassRecord {
            system: sys,
            loci,
            image_point: head.point.clone(),
            points: head.points,
            weight,
        });
    }
    Ok(out)
}

/// Weierstrass points of the system with their weights, from the zero orders of `ξ`.
pub fn weierstrass_records(c: &RationalCurve, sys: System) -> Result<Vec<WeierstrassRecord>> {
    let w = xi(c, sys)?;
    group(c, sys, loci_of(&w)?)
}

/// Strictly increasing contact orders `h_0 < … < h_r` of the system at a branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapSequence {
    pub h: Vec<u32>,
}

impl GapSequence {
    /// `Σ (h_i - i)`.
    pub fn weight(&self) -> u32 {
        self.h.iter().enumerate().map(|(i, &h)| h - i as u32).sum()
    }
}

/// Valuation echelon: distinct orders attained by the span of the series.
fn attainable_orders(mut v: Vec<Poly<FieldElt>>) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(v.len());
    while !v.is_empty() {
        let (k, ord) = v
            .iter()
            .enumerate()
            .map(|(k, p)| (k, p.low_order()))
            .min_by_key(|(_, o)| o.unwrap_or(usize::MAX))
            .expect("nonempty");
        let ord = ord.ok_or_else(|| Error::Degenerate("the pulled-back basis is linearly dependent".into()))?;
        let piv = v.swap_remove(k);
        let lead_inv = piv.coeff(ord).inv().expect("nonzero");
        for p in v.iter_mut() {
            if p.low_order() == Some(ord) {
                let f = p.coeff(ord) * lead_inv.clone();
                *p = &*p - &piv.scale(&f);
            }
        }
        out.push(ord as u32);
    }
    out.sort_unstable();
    Ok(out)
}

/// Gap sequence of the `(α,β)` system at the branch through the locus.
pub fn gap_sequence(c: &RationalCurve, locus: &ParameterLocus, sys: System) -> Result<GapSequence> {
    let (s0, t0) = locus.parameter();
    let series: Vec<Poly<FieldElt>> = basis_pullbacks(c, sys).iter().map(|f| series_at(f, &s0, &t0)).collect();
    Ok(GapSequence { h: attainable_orders(series)? })
}

/// Local invariants of the branch through a parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchData {
    /// Contact with the x-fiber through the point.
    pub mu_x: u32,
    /// Contact with the y-fiber through the point.
    pub mu_y: u32,
    pub m: u32,
    pub tangent_fiber: Option<FiberDirection>,
    pub l: Option<u32>,
    pub c: Option<u32>,
    pub class: BranchClass,
}

fn fiber_order(pair: [&BinaryForm; 2], s0: &FieldElt, t0: &FieldElt) -> Option<usize> {
    let v0 = pair[0].eval(s0, t0);
    let v1 = pair[1].eval(s0, t0);
    let g = &series_at(pair[0], s0, t0).scale(&v1) - &series_at(pair[1], s0, t0).scale(&v0);
    g.low_order()
}

/// `m`, the tangent fiber and `l`, or `c` from the (1,1) gap sequence.
pub fn branch_data(c: &RationalCurve, locus: &ParameterLocus) -> Result<BranchData> {
    let (s0, t0) = locus.parameter();
    let mx = fiber_order(c.phi(), &s0, &t0);
    let my = fiber_order(c.psi(), &s0, &t0);
    let (mu_x, mu_y) = match (mx, my) {
        (Some(x), Some(y)) => (x as u32, y as u32),
        _ => return Err(Error::Degenerate("degenerate parametrization: the curve is a fiber".into())),
    };
    let m = mu_x.min(mu_y);
    if mu_x != mu_y {
        let l = mu_x.max(mu_y);
        let fiber = if mu_x > mu_y { FiberDirection::X } else { FiberDirection::Y };
        return Ok(BranchData {
            mu_x,
            mu_y,
            m,
            tangent_fiber: Some(fiber),
            l: Some(l),
            c: None,
            class: BranchClass::J { m, l, fiber },
        });
    }
    need_11(c)?;
    // the gap sequence is {0, m, 2m, c}
    let h = gap_sequence(c, locus, System::XY11)?;
    let cc = h.h.iter().sum::<u32>() - 3 * m;
    Ok(BranchData {
        mu_x,
        mu_y,
        m,
        tangent_fiber: None,
        l: None,
        c: Some(cc),
        class: BranchClass::I { m, c: cc },
    })
}

/// Parameters of singular branches: the zeros of `gcd(ξ(1,0), ξ(0,1))`.
pub fn cusp_loci(c: &RationalCurve) -> Result<Vec<ParameterLocus>> {
    let g = gcd_forms(&xi(c, System::X10)?, &xi(c, System::Y01)?)?;
    if g.degree() == 0 {
        return Ok(Vec::new());
    }
    Ok(loci_of(&g)?.into_iter().map(|(l, _)| l).collect())
}

/// `(f0(s,t) f1(s',t') - f1(s,t) f0(s',t')) / (s t' - s' t)` at `(s,t) = (1,c)`,
/// as a form in `(s',t')`.
fn divided_difference(pair: [&BinaryForm; 2], c: &Rat) -> BinaryForm {
    let one = Rat::one();
    let v0 = pair[0].eval(&one, c);
    let v1 = pair[1].eval(&one, c);
    let num = &pair[1].scale(&v0) - &pair[0].scale(&v1);
    let lin = BinaryForm::new(vec![-c.clone(), Rat::one()]);
    num.div_exact(&lin).expect("the diagonal divides the difference")
}

/// Sylvester resultant of two forms given with their nominal degrees.
fn sylvester(f: &BinaryForm, df: usize, g: &BinaryForm, dg: usize) -> Result<Rat> {
    let n = df + dg;
    if n == 0 {
        return Ok(Rat::one());
    }
    let coef = |h: &BinaryForm, dh: usize, k: usize| if h.is_zero() || h.degree() != dh { Rat::zero() } else { h.coeff(k) };
    let mut m = vec![vec![Rat::zero(); n]; n];
    for i in 0..dg {
        for k in 0..=df {
            m[i][i + k] = coef(f, df, k);
        }
    }
    for i in 0..df {
        for k in 0..=dg {
            m[dg + i][i + k] = coef(g, dg, k);
        }
    }
    det_bareiss(&m)
}

/// Resultant in `(s',t')` of the two divided differences: a form in `(s,t)`
/// of degree `2(a-1)(b-1)` vanishing at parameters sharing their image with
/// another parameter, and at cusp parameters.
pub fn double_point_form(c: &RationalCurve) -> Result<BinaryForm> {
    let d = c.bidegree();
    if d.a < 2 || d.b < 2 {
        return Ok(BinaryForm::constant(Rat::one()));
    }
    let (df, dg) = ((d.b - 1) as usize, (d.a - 1) as usize);
    let deg = 2 * df * dg;
    let xs: Vec<Rat> = (0..=deg).map(|k| rat_int(k as i64)).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for x in &xs {
        let f = divided_difference(c.phi(), x);
        let g = divided_difference(c.psi(), x);
        ys.push(sylvester(&f, df, &g, dg)?);
    }
    let p = Poly::interpolate(&xs, &ys);
    if p.is_zero() {
        return Err(Error::Degenerate("the parametrization is not birational".into()));
    }
    Ok(BinaryForm::from_dehomogenized(&p, deg))
}

/// Another parameter with the same image as a given one.
#[derive(Clone, Debug)]
pub enum Partner {
    /// `(s':t')` over the field of the locus.
    Parameter(FieldElt, FieldElt),
    /// Partners given by the zeros of this polynomial in `u' = t'/s'`,
    /// irreducible of degree > 1 over the locus field.
    Unresolved(Poly<FieldElt>),
}

/// Partner parameters of the locus's representative zero.
pub fn partners(c: &RationalCurve, locus: &ParameterLocus) -> Vec<Partner> {
    let (s0, t0) = locus.parameter();
    let num = |pair: [&BinaryForm; 2]| {
        let v0 = pair[0].eval(&s0, &t0);
        let v1 = pair[1].eval(&s0, &t0);
        let p0 = pair[0].dehomogenize().map(FieldElt::from_rat);
        let p1 = pair[1].dehomogenize().map(FieldElt::from_rat);
        let at_inf = pair[1].coeff(pair[1].degree()).to_field() * v0.clone()
            - pair[0].coeff(pair[0].degree()).to_field() * v1.clone();
        (&p1.scale(&v0) - &p0.scale(&v1), at_inf)
    };
    let (nf, inf_f) = num(c.phi());
    let (ng, inf_g) = num(c.psi());
    let mut g = nf.gcd(&ng);
    let mut out = Vec::new();
    if !s0.is_zero() {
        let own = Poly::new(vec![-t0.clone(), FieldElt::one()]);
        while !g.is_zero() && g.degree().unwrap_or(0) > 0 {
            let (q, r) = g.div_rem(&own);
            if !r.is_zero() {
                break;
            }
            g = q;
        }
        // the parameter (0:1) is a partner when both numerators vanish there
        if inf_f.is_zero() && inf_g.is_zero() {
            out.push(Partner::Parameter(FieldElt::zero(), FieldElt::one()));
        }
    }
    if g.is_zero() {
        return out;
    }
    match g.degree() {
        Some(0) | None => {}
        Some(1) => {
            let m = g.monic();
            out.push(Partner::Parameter(FieldElt::one(), -m.coeff(0)));
        }
        Some(_) => out.push(Partner::Unresolved(g.monic())),
    }
    out
}

/// A multiple point with several branches.
#[derive(Clone, Debug)]
pub struct NodeInfo {
    pub loci: Vec<ParameterLocus>,
    pub point: Point,
    /// Number of parameters over the point (branches).
    pub branches: usize,
}

/// Points with at least two branches, found from [`double_point_form`].
pub fn multiple_points(c: &RationalCurve) -> Result<Vec<NodeInfo>> {
    let dp = double_point_form(c)?;
    if dp.degree() == 0 {
        return Ok(Vec::new());
    }
    let mut found: Vec<(ParameterLocus, Point, usize)> = Vec::new();
    for (locus, _) in loci_of(&dp)? {
        let ps = partners(c, &locus);
        if ps.is_empty() {
            continue;
        }
        let extra: usize = ps
            .iter()
            .map(|p| match p {
                Partner::Parameter(..) => 1,
                Partner::Unresolved(g) => g.degree().unwrap_or(0),
            })
            .sum();
        let (point, _) = image(c, &locus)?;
        found.push((locus, point, extra + 1));
    }
    let mut used = vec![false; found.len()];
    let mut out = Vec::new();
    for i in 0..found.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut loci = vec![found[i].0.clone()];
        for j in i + 1..found.len() {
            if !used[j] && comparable(&found[i].1, &found[j].1) && found[i].1 == found[j].1 {
                used[j] = true;
                loci.push(found[j].0.clone());
            }
        }
        out.push(NodeInfo {
            loci,
            point: found[i].1.clone(),
            branches: found[i].2,
        });
    }
    Ok(out)
}

/// Kind of a row in the per-point table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Cusp,
    Node,
    Smooth,
}

/// One point of interest with its weights in the three systems.
#[derive(Clone, Debug)]
pub struct PointRow {
    pub point: Point,
    pub loci: Vec<ParameterLocus>,
    /// Number of conjugate points the row stands for.
    pub points: usize,
    pub kind: PointKind,
    /// Weights `(1,0), (0,1), (1,1)` from the zero orders of `ξ`.
    pub xi_weights: [u32; 3],
    /// The same weights from gap sequences, summed over branches.
    pub gap_weights: [u32; 3],
    pub branches: Vec<BranchData>,
}

/// All points carrying a singularity or a positive weight in one of the three systems.
pub fn point_table(c: &RationalCurve) -> Result<Vec<PointRow>> {
    let systems = [System::X10, System::Y01, System::XY11];
    let xis: Vec<BinaryForm> = systems.iter().map(|&s| xi(c, s)).collect::<Result<_>>()?;
    let facs: Vec<Vec<(ParameterLocus, u32)>> = xis.iter().map(loci_of).collect::<Result<_>>()?;
    let cusps = cusp_loci(c)?;
    let nodes = multiple_points(c)?;

    let mut all: Vec<ParameterLocus> = Vec::new();
    let mut push = |l: &ParameterLocus| {
        if !all.contains(l) {
            all.push(l.clone());
        }
    };
    for f in &facs {
        for (l, _) in f {
            push(l);
        }
    }
    cusps.iter().for_each(&mut push);
    nodes.iter().flat_map(|n| n.loci.iter()).for_each(&mut push);

    let mut rows: Vec<PointRow> = Vec::new();
    for locus in all {
        let (point, points) = image(c, &locus)?;
        let per = (locus.degree / points) as u32;
        let mut xw = [0u32; 3];
        let mut gw = [0u32; 3];
        for (k, &sys) in systems.iter().enumerate() {
            xw[k] = facs[k].iter().find(|(l, _)| *l == locus).map_or(0, |(_, m)| *m) * per;
            gw[k] = gap_sequence(c, &locus, sys)?.weight() * per;
        }
        let bd = branch_data(c, &locus)?;
        let node = nodes.iter().any(|n| n.loci.contains(&locus));
        let kind = if bd.m > 1 {
            PointKind::Cusp
        } else if node {
            PointKind::Node
        } else {
            PointKind::Smooth
        };
        let branches = vec![bd; per as usize];
        match rows
            .iter_mut()
            .find(|r| r.points == points && comparable(&r.point, &point) && r.point == point)
        {
            Some(r) => {
                r.loci.push(locus);
                for k in 0..3 {
                    r.xi_weights[k] += xw[k];
                    r.gap_weights[k] += gw[k];
                }
                r.branches.extend(branches);
                if kind == PointKind::Cusp || r.kind == PointKind::Smooth {
                    r.kind = kind;
                }
                if r.branches.len() > 1 && r.kind == PointKind::Smooth {
                    r.kind = PointKind::Node;
                }
            }
            None => rows.push(PointRow {
                point,
                loci: vec![locus],
                points,
                kind: if per > 1 && kind == PointKind::Smooth { PointKind::Node } else { kind },
                xi_weights: xw,
                gap_weights: gw,
                branches,
            }),
        }
    }
    Ok(rows)
}

/// Branch classes entering the (1,1) count: every singular branch and every
/// smooth branch with a tangent fiber, with multiplicity for conjugates.
pub fn count_branches(rows: &[PointRow]) -> Vec<BranchClass> {
    let mut out = Vec::new();
    for r in rows {
        let singular = r.kind != PointKind::Smooth;
        for b in &r.branches {
            if singular || b.tangent_fiber.is_some() {
                for _ in 0..r.points {
                    out.push(b.class);
                }
            }
        }
    }
    out
}

/// `l` values (contact with the fiber of the given direction) of the
/// singular branches, with multiplicity for conjugates.
pub fn singular_l_values(rows: &[PointRow], dir: FiberDirection) -> Vec<u32> {
    let mut out = Vec::new();
    for r in rows.iter().filter(|r| r.kind != PointKind::Smooth) {
        for b in &r.branches {
            let l = match dir {
                FiberDirection::X => b.mu_x,
                FiberDirection::Y => b.mu_y,
            };
            for _ in 0..r.points {
                out.push(l);
            }
        }
    }
    out
}

/// Scalar `K` and exponent `n` when `f = K s^n t^n`.
pub fn monomial_sn_tn(f: &BinaryForm) -> Option<(Rat, usize)> {
    let d = f.degree();
    if d % 2 != 0 {
        return None;
    }
    let n = d / 2;
    let ok = f.coeffs().iter().enumerate().all(|(k, c)| (k == n) != c.is_zero());
    ok.then(|| (f.coeff(n), n))
}

/// Integer content helper used for golden comparisons: `f = unit * primitive`.
pub fn scalar_and_primitive(f: &BinaryForm) -> (Rat, BinaryForm) {
    f.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn ex61() -> RationalCurve {
        RationalCurve::parse("-s*t + t^2; s^2; t^3; s^3").unwrap()
    }

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn wronskians_of_example() {
        let c = ex61();
        assert_eq!(xi(&c, System::X10).unwrap(), form(&[2, -4, 0]));
        assert_eq!(xi(&c, System::Y01).unwrap(), form(&[0, 0, -9, 0, 0]));
        // -77760 s^4 t^2 (2s^2 - 8st + 5t^2)
        let want = form(&[0, 0, 2, -8, 5, 0, 0, 0, 0]).scale(&rat(-77760, 1));
        let w = xi(&c, System::XY11).unwrap();
        assert_eq!(w.degree(), 8);
        let (k, prim) = w.normalize();
        let (k2, prim2) = want.normalize();
        assert_eq!(prim, prim2);
        assert_eq!(k, k2);
        assert_eq!(k, rat(-77760, 1));
    }

    #[test]
    fn general_wronskian_matches_symbolic() {
        let c = ex61();
        for sys in [System::X10, System::Y01, System::XY11] {
            let a = xi(&c, sys).unwrap().normalized();
            let b = xi_general(&c, sys.alpha, sys.beta).unwrap().normalized();
            assert_eq!(a, b, "{sys}");
        }
    }

    #[test]
    fn omega_of_example() {
        let c = ex61();
        let w = omega(&c, System::X10).unwrap();
        let v = w.at(&FieldElt::from_int(2), &FieldElt::one());
        assert_eq!(v.to_string(), "4*x0 + x1");
        let w = omega(&c, System::XY11).unwrap();
        let content = w.content().unwrap();
        // s^2 t
        assert_eq!(content, form(&[0, 1, 0, 0]));
        assert!(w.one_one_at(&FieldElt::zero(), &FieldElt::one()).is_none());
        assert!(w.one_one_at(&FieldElt::one(), &FieldElt::zero()).is_none());
        let s = BinaryForm::s();
        let t = BinaryForm::t();
        let pre = &(&s.pow(2) * &t);
        let want = [
            &s.pow(5) * &(&s - &t),
            &(&s.pow(2) * &t.pow(3)) * &(&s.scale(&rat(2, 1)) - &t.scale(&rat(5, 1))),
            &(&s.pow(3) * &t) * &form(&[2, -6, 5]),
            &t.pow(4) * &form(&[1, -3, 1]),
        ];
        let got: Vec<BinaryForm> = w.terms.iter().map(|(_, f)| f.clone()).collect();
        let want: Vec<BinaryForm> = want.iter().map(|f| pre * f).collect();
        // equal up to one common scalar
        let k = got[0].normalize().0 / want[0].normalize().0;
        for (g, w) in got.iter().zip(&want) {
            assert_eq!(*g, w.scale(&k));
        }
        assert!(omega(&RationalCurve::parse("s; t; s; t").unwrap(), System::XY11).is_err());
    }

    #[test]
    fn records_of_example() {
        let c = ex61();
        let r = weierstrass_records(&c, System::X10).unwrap();
        let mut got: Vec<(String, u32)> = r.iter().map(|r| (r.image_point.to_string(), r.weight)).collect();
        got.sort();
        assert_eq!(got, vec![("(-1/4:1;1/8:1)".to_string(), 1), ("(1:0;1:0)".to_string(), 1)]);
        let r = weierstrass_records(&c, System::XY11).unwrap();
        let total: u32 = r.iter().map(|r| r.weight * r.points as u32).sum();
        assert_eq!(total, 8);
        let quad = r.iter().find(|r| r.loci[0].degree == 2).unwrap();
        assert_eq!((quad.points, quad.weight), (2, 1));
    }

    #[test]
    fn gap_sequences() {
        let c = ex61();
        let s = ParameterLocus::new(&BinaryForm::s());
        assert_eq!(gap_sequence(&c, &s, System::XY11).unwrap().h, vec![0, 2, 3, 5]);
        let t = ParameterLocus::new(&BinaryForm::t());
        let g = gap_sequence(&c, &t, System::Y01).unwrap();
        assert_eq!((g.h.clone(), g.weight()), (vec![0, 3], 2));
        let generic = ParameterLocus::rational(&rat(1, 1), &rat(3, 1));
        assert_eq!(gap_sequence(&c, &generic, System::XY11).unwrap().h, vec![0, 1, 2, 3]);
    }

    #[test]
    fn branch_data_of_example() {
        let c = ex61();
        let b = branch_data(&c, &ParameterLocus::new(&BinaryForm::s())).unwrap();
        assert_eq!((b.m, b.l, b.tangent_fiber), (2, Some(3), Some(FiberDirection::Y)));
        let b = branch_data(&c, &ParameterLocus::new(&BinaryForm::t())).unwrap();
        assert_eq!((b.m, b.l, b.tangent_fiber), (1, Some(3), Some(FiberDirection::Y)));
        let node = ParameterLocus::new(&form(&[1, -1, 1]));
        let b = branch_data(&c, &node).unwrap();
        assert_eq!((b.m, b.c), (1, Some(3)));
    }

    #[test]
    fn cusps_and_nodes() {
        let c = ex61();
        let cusps = cusp_loci(&c).unwrap();
        assert_eq!(cusps, vec![ParameterLocus::new(&BinaryForm::s())]);
        let dp = double_point_form(&c).unwrap();
        assert_eq!(dp.degree(), 4);
        let nodes = multiple_points(&c).unwrap();
        assert_eq!(nodes.len(), 1);
        assert_eq!(nodes[0].loci, vec![ParameterLocus::new(&form(&[1, -1, 1]))]);
        assert!(nodes[0].point.as_rational().is_some());
    }

    #[test]
    fn table_of_example() {
        let c = ex61();
        let rows = point_table(&c).unwrap();
        let find = |kind: PointKind| rows.iter().find(|r| r.kind == kind).unwrap();
        assert_eq!(find(PointKind::Cusp).xi_weights, [1, 2, 4]);
        assert_eq!(find(PointKind::Node).xi_weights, [0, 0, 0]);
        for r in &rows {
            assert_eq!(r.xi_weights, r.gap_weights, "{}", r.point);
        }
    }

    #[test]
    fn example_63_family() {
        let c = RationalCurve::parse("s^3; t^3; s^2; t^2").unwrap();
        let w = xi(&c, System::XY11).unwrap();
        let (k, n) = monomial_sn_tn(&w).unwrap();
        assert_eq!(n, 4);
        assert!(!k.is_zero());
        let w = xi_general(&c, 1, 1).unwrap();
        assert_eq!(w.degree(), xi_degree(c.bidegree(), System::XY11));
    }
}
