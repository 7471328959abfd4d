#![allow(dead_code)]

use biweier::bipoly::{BiDegree, BiPoly, Point};
use biweier::curvemodel::{ImplicitCurve, RationalCurve};
use biweier::exactalg::{rat, rat_int, BinaryForm, FieldElt, Rat};
use proptest::prelude::*;

pub const P61: &str = "-s*t + t^2; s^2; t^3; s^3";
pub const F61: &str = "x0^3*y1^2 + 3*x0*x1^2*y0*y1 - x1^3*y0^2 + x1^3*y0*y1";
pub const P63: &str = "s^3; t^3; s^2; t^2";
pub const F63: &str = "x0^2*y1^3 - x1^2*y0^3";

pub fn ex61() -> (RationalCurve, ImplicitCurve) {
    (
        RationalCurve::parse(P61).unwrap(),
        ImplicitCurve::parse(F61, BiDegree::new(3, 2)).unwrap(),
    )
}

pub fn ex63() -> (RationalCurve, ImplicitCurve) {
    (
        RationalCurve::parse(P63).unwrap(),
        ImplicitCurve::parse(F63, BiDegree::new(2, 3)).unwrap(),
    )
}

/// Both example curves, indexed by `k % 2`.
pub fn example(k: usize) -> (RationalCurve, ImplicitCurve) {
    if k % 2 == 0 {
        ex61()
    } else {
        ex63()
    }
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn form(max_deg: usize) -> impl Strategy<Value = BinaryForm> {
    (0..=max_deg)
        .prop_flat_map(|d| prop::collection::vec(-6i64..=6, d + 1))
        .prop_map(|c| BinaryForm::from_ints(&c))
}

pub fn nonzero_form(max_deg: usize) -> impl Strategy<Value = BinaryForm> {
    form(max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn monomials(d: BiDegree) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for i in 0..=d.a {
        for j in 0..=d.b {
            out.push([d.a - i, i, d.b - j, j]);
        }
    }
    out
}

pub fn bipoly_from(d: BiDegree, coeffs: &[i64]) -> BiPoly {
    BiPoly::from_terms(d, monomials(d).into_iter().zip(coeffs.iter().map(|&c| rat_int(c)))).unwrap()
}

pub fn bipoly(d: BiDegree) -> impl Strategy<Value = BiPoly> {
    let n = ((d.a + 1) * (d.b + 1)) as usize;
    prop::collection::vec(-7i64..=7, n).prop_map(move |c| bipoly_from(d, &c))
}

/// A parameter `(s:t)` with small integer entries, not `(0:0)`.
pub fn parameter() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -6i64..=6).prop_filter("nonzero", |p| *p != (0, 0))
}

pub fn field_param(s: i64, t: i64) -> (FieldElt, FieldElt) {
    (FieldElt::rational(rat_int(s)), FieldElt::rational(rat_int(t)))
}

pub fn point_at(c: &RationalCurve, s: i64, t: i64) -> Point {
    let (s0, t0) = field_param(s, t);
    c.point_at(&s0, &t0).unwrap()
}

/// Coefficients of a (1,1)-form in the order `x0y0, x0y1, x1y0, x1y1`.
pub fn one_one_coeffs<K: biweier::exactalg::Scalar>(g: &BiPoly<K>) -> [FieldElt; 4] {
    [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]].map(|e| g.coeff(&e).to_field())
}

/// Whether two polynomials agree up to a nonzero scalar.
pub fn proportional(f: &BiPoly<FieldElt>, g: &BiPoly<FieldElt>) -> bool {
    use num_traits::Zero;
    let Some((e0, _)) = f.terms().iter().next() else {
        return g.is_zero();
    };
    if g.coeff(e0).is_zero() {
        return false;
    }
    let keys: Vec<_> = f.terms().keys().chain(g.terms().keys()).collect();
    keys.iter().all(|e| (f.coeff(e) * g.coeff(e0) - g.coeff(e) * f.coeff(e0)).is_zero())
}
