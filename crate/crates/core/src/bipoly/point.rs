use std::fmt;

use num_traits::{One, Zero};

use super::parse::parse_algebraic_many;
use crate::error::{Error, Result};
use crate::exactalg::{rat_int, rat_to_string, FieldElt, Rat, Scalar};

/// A point `(x0:x1; y0:y1)` of P¹×P¹ with coordinates in `Q` or a number field.
///
/// Equality is projective in each factor.
#[derive(Clone, Debug)]
pub struct Point {
    pub x: [FieldElt; 2],
    pub y: [FieldElt; 2],
}

impl Point {
    pub fn new(x0: FieldElt, x1: FieldElt, y0: FieldElt, y1: FieldElt) -> Result<Self> {
        if (x0.is_zero() && x1.is_zero()) || (y0.is_zero() && y1.is_zero()) {
            return Err(Error::Invalid("a coordinate pair of a point is (0,0)".into()));
        }
        Ok(Point { x: [x0, x1], y: [y0, y1] })
    }

    pub fn rational(c: [Rat; 4]) -> Result<Self> {
        let [a, b, c, d] = c.map(FieldElt::rational);
        Self::new(a, b, c, d)
    }

    /// Panics on a zero coordinate pair.
    pub fn from_ints(c: [i64; 4]) -> Self {
        Self::rational(c.map(rat_int)).expect("valid point")
    }

    /// Parses `"a0 : a1 ; b0 : b1"`; coordinates may use one shared `sqrt(n)`.
    pub fn parse(text: &str) -> Result<Self> {
        let (xs, ys) = text.split_once(';').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected \"a0:a1;b0:b1\"".into(),
        })?;
        let mut parts = Vec::new();
        for half in [xs, ys] {
            let (p, q) = half.split_once(':').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected a pair \"u:v\", found {half:?}"),
            })?;
            parts.push(p.trim());
            parts.push(q.trim());
        }
        let v = parse_algebraic_many(&parts)?;
        let [a, b, c, d]: [FieldElt; 4] = v.try_into().expect("four coordinates");
        Self::new(a, b, c, d)
    }

    pub fn coords(&self) -> [FieldElt; 4] {
        [self.x[0].clone(), self.x[1].clone(), self.y[0].clone(), self.y[1].clone()]
    }

    /// The number field of the coordinates, if any is irrational.
    pub fn field_like(&self) -> FieldElt {
        self.coords()
            .into_iter()
            .find(|c| c.field().is_some())
            .unwrap_or_else(FieldElt::one)
    }

    fn norm_pair(p: &[FieldElt; 2]) -> [FieldElt; 2] {
        let piv = if p[1].is_zero() { &p[0] } else { &p[1] };
        let inv = piv.invert().expect("nonzero pair");
        [p[0].clone() * inv.clone(), p[1].clone() * inv]
    }

    /// Scales each pair so that its second entry (or the first, when the second is 0) is 1.
    pub fn normalized(&self) -> Point {
        Point {
            x: Self::norm_pair(&self.x),
            y: Self::norm_pair(&self.y),
        }
    }

    /// Rational coordinates after normalization, when all are rational.
    pub fn as_rational(&self) -> Option<[Rat; 4]> {
        let n = self.normalized();
        let v: Option<Vec<Rat>> = n.coords().iter().map(|c| c.as_rational()).collect();
        v.map(|v| v.try_into().expect("four"))
    }

    /// Numeric coordinates of the normalized point under `u -> root`.
    pub fn approx(&self, root: f64) -> [f64; 4] {
        self.normalized().coords().map(|c| c.approx(root))
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        let cross = |p: &[FieldElt; 2], q: &[FieldElt; 2]| {
            (p[0].clone() * q[1].clone() - p[1].clone() * q[0].clone()).is_zero()
        };
        cross(&self.x, &other.x) && cross(&self.y, &other.y)
    }
}

fn coord_string(c: &FieldElt) -> String {
    match c.as_rational() {
        Some(r) => rat_to_string(&r),
        None => c.to_poly_string("u"),
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        write!(
            f,
            "({}:{};{}:{})",
            coord_string(&n.x[0]),
            coord_string(&n.x[1]),
            coord_string(&n.y[0]),
            coord_string(&n.y[1])
        )
    }
}

impl<K: Scalar> From<[K; 4]> for Point {
    fn from(c: [K; 4]) -> Self {
        let [a, b, c, d] = c.map(|v| v.to_field());
        Point::new(a, b, c, d).expect("valid point")
    }
}
