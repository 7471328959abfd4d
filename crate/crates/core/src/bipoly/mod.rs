//! Bihomogeneous polynomials `F(x0,x1,y0,y1)` on P¹×P¹.

mod det;
mod parse;
mod point;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{rat_to_string, BinaryForm, FieldElt, Poly, Rat, Scalar};

pub use det::{det_bareiss, det_bareiss_int, det_laplace, det_laplace_along, first_row_cofactors, Line, RingElem};
pub use parse::{parse_algebraic, parse_algebraic_many, parse_form, parse_polynomial, MPoly};
pub use point::Point;

/// Bidegree `(a,b)`: degree `a` in `(x0,x1)` and `b` in `(y0,y1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub a: u32,
    pub b: u32,
}

impl BiDegree {
    pub const fn new(a: u32, b: u32) -> Self {
        BiDegree { a, b }
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X0,
    X1,
    Y0,
    Y1,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X0, Var::X1, Var::Y0, Var::Y1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn x(i: usize) -> Var {
        [Var::X0, Var::X1][i]
    }

    pub fn y(j: usize) -> Var {
        [Var::Y0, Var::Y1][j]
    }

    pub fn name(self) -> &'static str {
        ["x0", "x1", "y0", "y1"][self.index()]
    }
}

pub type Exps = [u32; 4];

/// A bihomogeneous polynomial with coefficients in `K`.
///
/// Every stored exponent `[i0,i1,j0,j1]` has `i0+i1 = a` and `j0+j1 = b`, and
/// no stored coefficient is zero. The zero polynomial keeps its bidegree.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<K = Rat> {
    deg: BiDegree,
    terms: BTreeMap<Exps, K>,
}

fn exps_bidegree(e: &Exps) -> BiDegree {
    BiDegree::new(e[0] + e[1], e[2] + e[3])
}

pub fn monomial_string(e: &Exps) -> String {
    let parts: Vec<String> = Var::ALL
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.name().to_string() } else { format!("{}^{k}", v.name()) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl<K: Scalar> BiPoly<K> {
    pub fn zero(deg: BiDegree) -> Self {
        BiPoly {
            deg,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from terms, rejecting monomials of the wrong bidegree.
    pub fn from_terms(deg: BiDegree, terms: impl IntoIterator<Item = (Exps, K)>) -> Result<Self> {
        let mut p = Self::zero(deg);
        for (e, c) in terms {
            let d = exps_bidegree(&e);
            if d != deg {
                return Err(Error::Bidegree {
                    monomial: monomial_string(&e),
                    found_a: d.a,
                    found_b: d.b,
                    a: deg.a,
                    b: deg.b,
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn monomial(c: K, e: Exps) -> Self {
        let mut p = Self::zero(exps_bidegree(&e));
        p.add_term(e, c);
        p
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::monomial(K::one(), e)
    }

    fn add_term(&mut self, e: Exps, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let v = old + c;
                if !v.is_zero() {
                    self.terms.insert(e, v);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn bidegree(&self) -> BiDegree {
        self.deg
    }

    pub fn terms(&self) -> &BTreeMap<Exps, K> {
        &self.terms
    }

    pub fn coeff(&self, e: &Exps) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut p = Self::zero(self.deg);
        for (e, v) in &self.terms {
            p.add_term(*e, v.clone() * c.clone());
        }
        p
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> BiPoly<L> {
        let mut p = BiPoly::zero(self.deg);
        for (e, v) in &self.terms {
            p.add_term(*e, f(v));
        }
        p
    }

    pub fn to_field(&self) -> BiPoly<FieldElt> {
        self.map(|c| c.to_field())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(K::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂F/∂v`; differentiating in a grading of degree 0 gives the zero
    /// polynomial of bidegree `(a-1, b)` or `(a, b-1)` saturated at 0.
    pub fn partial(&self, v: Var) -> Self {
        let i = v.index();
        let deg = if i < 2 {
            BiDegree::new(self.deg.a.saturating_sub(1), self.deg.b)
        } else {
            BiDegree::new(self.deg.a, self.deg.b.saturating_sub(1))
        };
        let mut p = Self::zero(deg);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            p.add_term(f, c.clone() * K::from_int(e[i] as i64));
        }
        p
    }

    /// Iterated partial derivative, e.g. `&[Var::X0, Var::X0, Var::Y0]`.
    pub fn partials(&self, vars: &[Var]) -> Self {
        vars.iter().fold(self.clone(), |acc, &v| acc.partial(v))
    }

    /// Value at explicit coordinates `[x0,x1,y0,y1]`.
    pub fn eval_at(&self, c: &[K; 4]) -> K {
        let mut pows: Vec<Vec<K>> = Vec::with_capacity(4);
        for (k, ck) in c.iter().enumerate() {
            let top = if k < 2 { self.deg.a } else { self.deg.b } as usize;
            let mut v = vec![K::one(); top + 1];
            for i in 1..=top {
                v[i] = v[i - 1].clone() * ck.clone();
            }
            pows.push(v);
        }
        let mut acc = K::zero();
        for (e, coef) in &self.terms {
            let mut t = coef.clone();
            for k in 0..4 {
                if e[k] > 0 {
                    t = t * pows[k][e[k] as usize].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Value at a point (coordinates in a number field).
    pub fn evaluate(&self, p: &Point) -> FieldElt {
        self.to_field().eval_at(&p.coords())
    }

    /// Substitutes `x_old = Mx x_new`, `y_old = My y_new`:
    /// the result is `F(Mx x, My y)`.
    pub fn transform(&self, mx: &[[K; 2]; 2], my: &[[K; 2]; 2]) -> Self {
        // powers of the linear forms as dense binary forms (index = exponent of the second variable)
        fn lin_pows<K: Scalar>(row: &[K; 2], top: u32) -> Vec<Vec<K>> {
            let mut out = vec![vec![K::one()]];
            for k in 1..=top as usize {
                let prev = &out[k - 1];
                let mut v = vec![K::zero(); k + 1];
                for (i, c) in prev.iter().enumerate() {
                    v[i] = v[i].clone() + c.clone() * row[0].clone();
                    v[i + 1] = v[i + 1].clone() + c.clone() * row[1].clone();
                }
                out.push(v);
            }
            out
        }
        fn mul_dense<K: Scalar>(p: &[K], q: &[K]) -> Vec<K> {
            let mut v = vec![K::zero(); p.len() + q.len() - 1];
            for (i, a) in p.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in q.iter().enumerate() {
                    v[i + j] = v[i + j].clone() + a.clone() * b.clone();
                }
            }
            v
        }
        let (a, b) = (self.deg.a, self.deg.b);
        let px = [lin_pows(&mx[0], a), lin_pows(&mx[1], a)];
        let py = [lin_pows(&my[0], b), lin_pows(&my[1], b)];
        let mut out = Self::zero(self.deg);
        for (e, c) in &self.terms {
            let xs = mul_dense(&px[0][e[0] as usize], &px[1][e[1] as usize]);
            let ys = mul_dense(&py[0][e[2] as usize], &py[1][e[3] as usize]);
            for (i, cx) in xs.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                let cx = cx.clone() * c.clone();
                for (j, cy) in ys.iter().enumerate() {
                    if cy.is_zero() {
                        continue;
                    }
                    let i = i as u32;
                    let j = j as u32;
                    out.add_term([a - i, i, b - j, j], cx.clone() * cy.clone());
                }
            }
        }
        out
    }

    /// Left side minus right side of one of the Euler identities, numbered
    /// 1..=13: the two first-order identities followed by the eleven
    /// second-order ones. Each result vanishes identically.
    pub fn euler_defect(&self, id: usize) -> Result<Self> {
        use Var::*;
        let (a, b) = (self.deg.a as i64, self.deg.b as i64);
        let f = self;
        let v = |x: Var| BiPoly::<K>::var(x);
        let d = |vs: &[Var]| f.partials(vs);
        let k = |n: i64| K::from_int(n);
        let (lhs, rhs) = match id {
            1 => (&(&v(X0) * &d(&[X0])) + &(&v(X1) * &d(&[X1])), f.scale(&k(a))),
            2 => (&(&v(Y0) * &d(&[Y0])) + &(&v(Y1) * &d(&[Y1])), f.scale(&k(b))),
            3 => (
                &(&v(X0) * &d(&[X0, X0])) + &(&v(X1) * &d(&[X0, X1])),
                d(&[X0]).scale(&k(a - 1)),
            ),
            4 => (
                &(&v(X0) * &d(&[X0, X1])) + &(&v(X1) * &d(&[X1, X1])),
                d(&[X1]).scale(&k(a - 1)),
            ),
            5 => (
                &(&(&v(X0).pow(2) * &d(&[X0, X0])) + &(&(&v(X0) * &v(X1)) * &d(&[X0, X1])).scale(&k(2)))
                    + &(&v(X1).pow(2) * &d(&[X1, X1])),
                f.scale(&k((a - 1) * a)),
            ),
            6 => (
                &(&v(Y0) * &d(&[Y0, Y0])) + &(&v(Y1) * &d(&[Y0, Y1])),
                d(&[Y0]).scale(&k(b - 1)),
            ),
            7 => (
                &(&v(Y0) * &d(&[Y0, Y1])) + &(&v(Y1) * &d(&[Y1, Y1])),
                d(&[Y1]).scale(&k(b - 1)),
            ),
            8 => (
                &(&(&v(Y0).pow(2) * &d(&[Y0, Y0])) + &(&(&v(Y0) * &v(Y1)) * &d(&[Y0, Y1])).scale(&k(2)))
                    + &(&v(Y1).pow(2) * &d(&[Y1, Y1])),
                f.scale(&k((b - 1) * b)),
            ),
            9 => (
                &(&v(X0) * &d(&[X0, Y0])) + &(&v(X1) * &d(&[X1, Y0])),
                d(&[Y0]).scale(&k(a)),
            ),
            10 => (
                &(&v(X0) * &d(&[X0, Y1])) + &(&v(X1) * &d(&[X1, Y1])),
                d(&[Y1]).scale(&k(a)),
            ),
            11 => (
                &(&v(Y0) * &d(&[X0, Y0])) + &(&v(Y1) * &d(&[X0, Y1])),
                d(&[X0]).scale(&k(b)),
            ),
            12 => (
                &(&v(Y0) * &d(&[X1, Y0])) + &(&v(Y1) * &d(&[X1, Y1])),
                d(&[X1]).scale(&k(b)),
            ),
            13 => {
                let xy = |x: Var, y: Var| &(&v(x) * &v(y)) * &d(&[x, y]);
                (
                    &(&(&xy(X0, Y0) + &xy(X1, Y0)) + &xy(X0, Y1)) + &xy(X1, Y1),
                    f.scale(&k(a * b)),
                )
            }
            _ => return Err(Error::InvalidIdentity(id)),
        };
        Ok(&lhs - &rhs)
    }

    /// Substitutes local power series for the four coordinates and returns the
    /// resulting series, truncated below `trunc` when given.
    pub fn pullback_series(&self, comps: &[Poly<FieldElt>; 4], trunc: Option<usize>) -> Poly<FieldElt> {
        let cut = |p: Poly<FieldElt>| match trunc {
            Some(n) => p.truncate(n),
            None => p,
        };
        let mut pows: Vec<Vec<Poly<FieldElt>>> = Vec::with_capacity(4);
        for (k, c) in comps.iter().enumerate() {
            let top = if k < 2 { self.deg.a } else { self.deg.b } as usize;
            let mut v = vec![Poly::constant(FieldElt::one())];
            for i in 1..=top {
                let next = cut(&v[i - 1] * c);
                v.push(next);
            }
            pows.push(v);
        }
        let mut acc = Poly::zero();
        for (e, coef) in &self.terms {
            let mut t = Poly::constant(coef.to_field());
            for k in 0..4 {
                if e[k] > 0 {
                    t = cut(&t * &pows[k][e[k] as usize]);
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl BiPoly<Rat> {
    /// Pullback along `(phi0:phi1;psi0:psi1)` with `deg phi = b'`, `deg psi = a'`.
    /// The result has degree `a*b' + b*a'` when nonzero.
    pub fn pullback(&self, comps: [&BinaryForm; 4]) -> BinaryForm {
        let mut pows: Vec<Vec<BinaryForm>> = Vec::with_capacity(4);
        for (k, c) in comps.iter().enumerate() {
            let top = if k < 2 { self.deg.a } else { self.deg.b } as usize;
            let mut v = vec![BinaryForm::constant(Rat::one())];
            for i in 1..=top {
                let next = &v[i - 1] * *c;
                v.push(next);
            }
            pows.push(v);
        }
        let mut acc = BinaryForm::zero();
        for (e, coef) in &self.terms {
            let mut t = BinaryForm::constant(coef.clone());
            for k in 0..4 {
                if e[k] > 0 {
                    t = &t * &pows[k][e[k] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Parses an expression in `x0,x1,y0,y1` of the declared bidegree.
    pub fn parse(text: &str, deg: BiDegree) -> Result<Self> {
        let m = parse_polynomial(text, &["x0", "x1", "y0", "y1"])?;
        Self::from_terms(deg, m.into_iter().map(|(e, c)| ([e[0], e[1], e[2], e[3]], c)))
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    pub fn normalized(&self) -> Self {
        let Some(first) = self.terms.iter().next_back().map(|(_, c)| c.clone()) else {
            return self.clone();
        };
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        for c in self.terms.values() {
            let n = (c * Rat::from_integer(den.clone())).to_integer();
            num = num_integer::Integer::gcd(&num, &n);
        }
        let mut s = Rat::new(den, num);
        if first < Rat::zero() {
            s = -s;
        }
        self.scale(&s)
    }
}

/// Parses a bihomogeneous polynomial of the declared bidegree.
pub fn parse_bipoly(text: &str, deg: BiDegree) -> Result<BiPoly> {
    BiPoly::parse(text, deg)
}

impl<K: Scalar> Add for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn add(self, rhs: &BiPoly<K>) -> BiPoly<K> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(self.deg, rhs.deg, "adding polynomials of different bidegree");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl<K: Scalar> Sub for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn sub(self, rhs: &BiPoly<K>) -> BiPoly<K> {
        self + &(-rhs)
    }
}

impl<K: Scalar> Neg for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn neg(self) -> BiPoly<K> {
        BiPoly {
            deg: self.deg,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<K: Scalar> Mul for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn mul(self, rhs: &BiPoly<K>) -> BiPoly<K> {
        let deg = BiDegree::new(self.deg.a + rhs.deg.a, self.deg.b + rhs.deg.b);
        let mut p = BiPoly::zero(deg);
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let g = [e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]];
                p.add_term(g, c.clone() * d.clone());
            }
        }
        p
    }
}

fn coeff_string<K: Scalar>(c: &K) -> (bool, String) {
    let f = c.to_field();
    match f.as_rational() {
        Some(r) => (r < Rat::zero(), rat_to_string(&if r < Rat::zero() { -r } else { r })),
        None => (false, format!("({})", f.to_poly_string("u"))),
    }
}

impl<K: Scalar> fmt::Display for BiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (neg, mag) = coeff_string(c);
            let mono = monomial_string(e);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<K: Scalar> Serialize for BiPoly<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
