//! The (1,1) linear system on an implicit curve.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::bipoly::{first_row_cofactors, BiDegree, BiPoly, Point, Var};
use crate::curvemodel::{FiberDirection, ImplicitCurve};
use crate::error::{Error, Result};
use crate::exactalg::{rat_to_string, FieldElt, Scalar};
use crate::fibers::is_fiber_weierstrass;

/// `γ00 x0y0 + γ01 x0y1 + γ10 x1y0 + γ11 x1y1`.
#[derive(Clone, Debug)]
pub struct OneOneCurve {
    pub gamma: [FieldElt; 4],
}

const MONOS: [[u32; 4]; 4] = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];

fn segre(p: &Point) -> Vec<FieldElt> {
    let mut v = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            v.push(p.x[i].clone() * p.y[j].clone());
        }
    }
    v
}

impl OneOneCurve {
    pub fn new(gamma: [FieldElt; 4]) -> Result<Self> {
        if gamma.iter().all(|g| g.is_zero()) {
            return Err(Error::ZeroForm("(1,1)-curve"));
        }
        Ok(OneOneCurve { gamma })
    }

    /// `γ_ij`, the coefficient of `x_i y_j`.
    pub fn get(&self, i: usize, j: usize) -> &FieldElt {
        &self.gamma[2 * i + j]
    }

    pub fn to_bipoly(&self) -> BiPoly<FieldElt> {
        BiPoly::from_terms(BiDegree::new(1, 1), MONOS.iter().copied().zip(self.gamma.iter().cloned()))
            .expect("bidegree (1,1)")
    }

    pub fn evaluate(&self, p: &Point) -> FieldElt {
        segre(p)
            .into_iter()
            .zip(self.gamma.iter())
            .fold(FieldElt::zero(), |acc, (m, g)| acc + m * g.clone())
    }

    /// A (1,1)-curve is reducible exactly when `γ00 γ11 = γ01 γ10`.
    pub fn is_reducible(&self) -> bool {
        let g = &self.gamma;
        (g[0].clone() * g[3].clone() - g[1].clone() * g[2].clone()).is_zero()
    }

    /// Scaled so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> OneOneCurve {
        let piv = self.gamma.iter().find(|g| !g.is_zero()).expect("nonzero curve");
        let inv = piv.invert().expect("nonzero");
        OneOneCurve {
            gamma: self.gamma.clone().map(|g| g * inv.clone()),
        }
    }

    /// Equality up to a nonzero scalar.
    pub fn same_curve(&self, other: &OneOneCurve) -> bool {
        let (a, b) = (&self.gamma, &other.gamma);
        (0..4).all(|i| (0..4).all(|j| (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_zero()))
    }
}

impl PartialEq for OneOneCurve {
    fn eq(&self, other: &Self) -> bool {
        self.same_curve(other)
    }
}

fn elt_string(c: &FieldElt) -> String {
    match c.as_rational() {
        Some(r) => rat_to_string(&r),
        None => format!("({})", c.to_poly_string("u")),
    }
}

impl fmt::Display for OneOneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

impl Serialize for OneOneCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.gamma.iter().map(elt_string).collect();
        v.serialize(s)
    }
}

/// The unique (1,1)-curve through three points, from the 4×4 determinant
/// with rows `(x0y0, x0y1, x1y0, x1y1)` and the Segre images of `p, q, r`.
pub fn curve_through_three(p: &Point, q: &Point, r: &Point) -> Result<OneOneCurve> {
    if p == q || p == r || q == r {
        return Err(Error::Degenerate("degenerate triple: points must be pairwise distinct".into()));
    }
    let rows = vec![segre(p), segre(q), segre(r)];
    let c = first_row_cofactors(&rows)?;
    let gamma: [FieldElt; 4] = c.try_into().expect("four cofactors");
    OneOneCurve::new(gamma).map_err(|_| Error::Degenerate("degenerate triple: the points lie on a common fiber".into()))
}

/// The fiber direction tangent to `C` at a smooth point `p`, if any.
pub fn tangent_fiber(c: &ImplicitCurve, p: &Point) -> Result<Option<FiberDirection>> {
    for dir in [FiberDirection::X, FiberDirection::Y] {
        if is_fiber_weierstrass(c, p, dir)? {
            return Ok(Some(dir));
        }
    }
    Ok(None)
}

fn check_smooth(c: &ImplicitCurve, p: &Point) -> Result<()> {
    if !c.contains(p) {
        return Err(Error::NotOnCurve);
    }
    if c.is_singular_at(p) {
        return Err(Error::SingularPoint);
    }
    let d = c.bidegree();
    if d.a + d.b < 3 {
        return Err(Error::Invalid(format!("the (1,1) system needs a + b >= 3, got type {d}")));
    }
    Ok(())
}

/// Product of the two fibers through `p`.
pub fn fiber_product(p: &Point) -> OneOneCurve {
    let (a, b) = (&p.x, &p.y);
    OneOneCurve {
        gamma: [
            a[1].clone() * b[1].clone(),
            -(a[1].clone() * b[0].clone()),
            -(a[0].clone() * b[1].clone()),
            a[0].clone() * b[0].clone(),
        ],
    }
}

/// First and second partials of `F` at a point.
struct Jet {
    g: [FieldElt; 4],
    h: [[FieldElt; 4]; 4],
}

impl Jet {
    fn new(f: &BiPoly<FieldElt>, p: &Point) -> Jet {
        let c = p.coords();
        let g = Var::ALL.map(|v| f.partial(v).eval_at(&c));
        let h = Var::ALL.map(|u| Var::ALL.map(|v| f.partials(&[u, v]).eval_at(&c)));
        Jet { g, h }
    }

    fn fx(&self, i: usize) -> FieldElt {
        self.g[i].clone()
    }

    fn fy(&self, j: usize) -> FieldElt {
        self.g[2 + j].clone()
    }

    /// `F_xiyj - F_xixi F_yj / 2F_xi - F_yjyj F_xi / 2F_yj`.
    fn bracket(&self, i: usize, j: usize) -> FieldElt {
        let two = FieldElt::from_int(2);
        let (fx, fy) = (self.fx(i), self.fy(j));
        let fxx = self.h[i][i].clone();
        let fyy = self.h[2 + j][2 + j].clone();
        let fxy = self.h[i][2 + j].clone();
        let ix = (two.clone() * fx.clone()).inv().expect("F_xi(p) != 0");
        let iy = (two * fy.clone()).inv().expect("F_yj(p) != 0");
        fxy - fxx * fy * ix - fyy * fx * iy
    }
}

/// The osculating (1,1)-curve `T_p` at a smooth point: the product of the
/// fibers through `p` when one of them is tangent, otherwise the closed form
/// matching the vanishing coordinates of `p`.
pub fn osculating_11(c: &ImplicitCurve, p: &Point) -> Result<OneOneCurve> {
    check_smooth(c, p)?;
    if tangent_fiber(c, p)?.is_some() {
        return Ok(fiber_product(p));
    }
    // the zero-coordinate forms assume the other coordinate of each pair is 1
    let p = &p.normalized();
    let jet = Jet::new(&c.f().to_field(), p);
    let zx = (0..2).find(|&i| p.x[i].is_zero());
    let zy = (0..2).find(|&j| p.y[j].is_zero());
    let mut g: [FieldElt; 4] = std::array::from_fn(|_| FieldElt::zero());
    let mut set = |i: usize, j: usize, v: FieldElt| g[2 * i + j] = v;
    match (zx, zy) {
        (None, None) => {
            for i in 0..2 {
                for j in 0..2 {
                    set(i, j, jet.bracket(i, j));
                }
            }
        }
        (Some(i0), None) => {
            for j in 0..2 {
                set(i0, j, jet.bracket(i0, j));
                set(1 - i0, j, jet.fy(j));
            }
        }
        (None, Some(j0)) => {
            for i in 0..2 {
                set(i, j0, jet.bracket(i, j0));
                set(i, 1 - j0, jet.fx(i));
            }
        }
        (Some(i0), Some(j0)) => {
            set(i0, j0, jet.bracket(i0, j0));
            set(i0, 1 - j0, jet.fx(i0));
            set(1 - i0, j0, jet.fy(j0));
        }
    }
    OneOneCurve::new(g)
}

type Mat = [[FieldElt; 2]; 2];

/// A matrix `M` with `M (0,1)^T = pair`, so that `x_old = M x_new` sends
/// `(0:1)` to the given point.
fn mover(pair: &[FieldElt; 2]) -> Mat {
    let (e0, e1) = if pair[1].is_zero() {
        (FieldElt::zero(), FieldElt::one())
    } else {
        (FieldElt::one(), FieldElt::zero())
    };
    [[e0, pair[0].clone()], [e1, pair[1].clone()]]
}

fn origin() -> Point {
    Point::from_ints([0, 1, 0, 1])
}

/// `F` in coordinates where `p` becomes `(0:1;0:1)`, with the two matrices.
fn moved(c: &ImplicitCurve, p: &Point) -> (BiPoly<FieldElt>, Mat, Mat) {
    let mx = mover(&p.x);
    let my = mover(&p.y);
    (c.f().to_field().transform(&mx, &my), mx, my)
}

/// Same result as [`osculating_11`], computed by moving `p` to `(0:1;0:1)`,
/// applying the formula there and transforming back.
pub fn osculating_11_by_coordinate_change(c: &ImplicitCurve, p: &Point) -> Result<OneOneCurve> {
    check_smooth(c, p)?;
    if tangent_fiber(c, p)?.is_some() {
        return Ok(fiber_product(p));
    }
    let (g, mx, my) = moved(c, p);
    let jet = Jet::new(&g, &origin());
    let gn = [[jet.bracket(0, 0), jet.fx(0)], [jet.fy(0), FieldElt::zero()]];
    // T_new = x^T Gn y must equal T_old(Mx x, My y) = x^T Mx^T Go My y
    let adj = |m: &Mat| -> Mat {
        [
            [m[1][1].clone(), -m[0][1].clone()],
            [-m[1][0].clone(), m[0][0].clone()],
        ]
    };
    let mul = |a: &Mat, b: &Mat| -> Mat {
        std::array::from_fn(|i| std::array::from_fn(|j| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()))
    };
    let ax = adj(&mx);
    let ax_t: Mat = std::array::from_fn(|i| std::array::from_fn(|j| ax[j][i].clone()));
    let go = mul(&mul(&ax_t, &gn), &adj(&my));
    OneOneCurve::new([go[0][0].clone(), go[0][1].clone(), go[1][0].clone(), go[1][1].clone()])
}

/// The local hyperosculation criterion at a smooth point without a tangent
/// fiber: `p` is moved to `(0:1;0:1)` and the two expressions for `k5` are
/// compared.
pub fn is_11_weierstrass_local(c: &ImplicitCurve, p: &Point) -> Result<bool> {
    check_smooth(c, p)?;
    if let Some(dir) = tangent_fiber(c, p)? {
        let name = match dir {
            FiberDirection::X => "x",
            FiberDirection::Y => "y",
        };
        return Err(Error::Inapplicable(format!("a {name}-fiber is tangent at {p}")));
    }
    let (g, _, _) = moved(c, p);
    let q = origin().coords();
    let at = |vars: &[Var]| g.partials(vars).eval_at(&q);
    let (x, y) = (Var::X0, Var::Y0);
    let fx = at(&[x]);
    let fy = at(&[y]);
    let fxx = at(&[x, x]);
    let fyy = at(&[y, y]);
    let fxy = at(&[x, y]);
    let fxxx = at(&[x, x, x]);
    let fyyy = at(&[y, y, y]);
    let fxxy = at(&[x, x, y]);
    let fxyy = at(&[x, y, y]);
    let n = FieldElt::from_int;
    let inv = |v: FieldElt| v.inv().expect("nonzero first partial");
    let k1 = fyy.clone() * inv(n(2) * fy.clone());
    let k2 = fxx.clone() * inv(n(2) * fx.clone());
    let k3 = fyyy * inv(n(6) * fy.clone());
    let k4 = fxxx * inv(n(6) * fx.clone());
    let g00 = fxy - fyy * fx.clone() * inv(n(2) * fy.clone()) - fxx * fy.clone() * inv(n(2) * fx.clone());
    let lhs = (fxxy - n(2) * k2 * g00.clone() - n(2) * k4 * fy.clone()) * inv(n(2) * fx.clone());
    let rhs = (fxyy - n(2) * k1 * g00 - n(2) * k3 * fx) * inv(n(2) * fy);
    Ok(lhs == rhs)
}

/// The local (1,1)-Hessian `H` in the chart `x_i = 1, y_j = 1`, built from
/// partials with respect to the affine variables `x_{1-i}`, `y_{1-j}`.
/// Bidegree `(6a-4, 6b-4)`.
pub fn local_11_hessian(c: &ImplicitCurve, chart: (usize, usize)) -> BiPoly {
    let (i, j) = chart;
    assert!(i < 2 && j < 2, "chart indices are 0 or 1");
    let (x, y) = (Var::x(1 - i), Var::y(1 - j));
    let f = c.f();
    let d = |v: &[Var]| f.partials(v);
    let fx = d(&[x]);
    let fy = d(&[y]);
    let fxx = d(&[x, x]);
    let fyy = d(&[y, y]);
    let fxy = d(&[x, y]);
    let fxxx = d(&[x, x, x]);
    let fyyy = d(&[y, y, y]);
    let fxxy = d(&[x, x, y]);
    let fxyy = d(&[x, y, y]);
    let k = |n: i64| crate::exactalg::rat_int(n);
    let line1 = &fx.pow(4) * &(&(&fy * &fyyy).scale(&k(2)) - &(&fyy * &fyy).scale(&k(3)));
    let line2 = &(&fx.pow(3) * &fy).scale(&k(6)) * &(&(&fy * &fxyy) - &(&fxy * &fyy));
    let line3 = &(&fx * &fy.pow(3)).scale(&k(6)) * &(&(&fx * &fxxy) - &(&fxx * &fxy));
    let line4 = &fy.pow(4) * &(&(&fx * &fxxx).scale(&k(2)) - &(&fxx * &fxx).scale(&k(3)));
    &(&(&line1 - &line2) + &line3) - &line4
}

/// A branch class in the (1,1) count: `I` has no tangent fiber, `J` has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum BranchClass {
    I { m: u32, c: u32 },
    J { m: u32, l: u32, fiber: FiberDirection },
}

impl BranchClass {
    pub fn m(&self) -> u32 {
        match *self {
            BranchClass::I { m, .. } | BranchClass::J { m, .. } => m,
        }
    }

    /// Contribution subtracted in the count: `3m+c-6` or `2m+2l-6`.
    pub fn contribution(&self) -> i64 {
        match *self {
            BranchClass::I { m, c } => 3 * m as i64 + c as i64 - 6,
            BranchClass::J { m, l, .. } => 2 * m as i64 + 2 * l as i64 - 6,
        }
    }
}

/// `12ab - 8a - 8b - 12Σδ - Σ_I(3m+c-6) - Σ_J(2m+2l-6)`, summed branch-wise;
/// `J` includes smooth points with a tangent fiber (`m = 1`).
pub fn count_11_weierstrass(deg: BiDegree, total_delta: u64, branches: &[BranchClass]) -> Result<i64> {
    let (a, b) = (deg.a as i64, deg.b as i64);
    let base = 12 * a * b - 8 * a - 8 * b - 12 * total_delta as i64;
    let w = base - branches.iter().map(BranchClass::contribution).sum::<i64>();
    if w < 0 {
        return Err(Error::Inconsistent(format!("inconsistent data: (1,1) count {w} < 0")));
    }
    Ok(w)
}

/// Checks that `l` (or `c`) equals `k*m + m_k` for some `k >= 1` with
/// `m = m_1 = ... = m_{k-1}` and respects the degree bound: `b` for an
/// x-fiber, `a` for a y-fiber, `a+b` without tangent fiber.
///
/// `seq = [m, m_1, m_2, ...]`; entries past the end are 1.
pub fn validate_branch_bounds(branch: &BranchClass, deg: BiDegree, seq: &[u32]) -> bool {
    let m = branch.m();
    if seq.first() != Some(&m) || seq.windows(2).any(|w| w[1] > w[0]) || seq.contains(&0) {
        return false;
    }
    let (value, bound) = match *branch {
        BranchClass::I { c, .. } => (c, deg.a + deg.b),
        BranchClass::J { l, fiber: FiberDirection::X, .. } => (l, deg.b),
        BranchClass::J { l, fiber: FiberDirection::Y, .. } => (l, deg.a),
    };
    if value > bound {
        return false;
    }
    let mk = |k: usize| seq.get(k).copied().unwrap_or(1);
    let mut k = 1usize;
    while (k as u32) * m <= value {
        if (1..k).all(|i| mk(i) == m) && (k as u32) * m + mk(k) == value {
            return true;
        }
        k += 1;
    }
    false
}
