//! Arithmetic in `Q[u]/(f)` for an irreducible `f`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::{rat_to_f64, rat_to_string, Rat, Scalar};
use crate::error::{Error, Result};

/// The number field `Q[u]/(modulus)`; the modulus is monic, irreducible and of degree ≥ 2.
#[derive(Debug, PartialEq)]
pub struct NumberField {
    modulus: Poly<Rat>,
}

impl NumberField {
    pub fn modulus(&self) -> &Poly<Rat> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }
}

/// An element of `Q` or of a number field `Q[u]/(f)`.
///
/// Elements without a field are plain rationals and combine freely with
/// elements of any field. Combining elements of two different fields panics.
#[derive(Clone, Debug)]
pub struct FieldElt {
    field: Option<Arc<NumberField>>,
    value: Poly<Rat>,
}

impl FieldElt {
    pub fn rational(r: Rat) -> Self {
        FieldElt {
            field: None,
            value: Poly::constant(r),
        }
    }

    /// A root of `modulus` (assumed irreducible). A linear modulus gives its
    /// rational root; otherwise the class of `u` in `Q[u]/(modulus)`.
    pub fn generator(modulus: &Poly<Rat>) -> Result<Self> {
        match modulus.degree() {
            None | Some(0) => Err(Error::Invalid("modulus must have positive degree".into())),
            Some(1) => {
                let m = modulus.monic();
                Ok(FieldElt::rational(-m.coeff(0)))
            }
            Some(_) => {
                let field = Arc::new(NumberField {
                    modulus: modulus.monic(),
                });
                Ok(FieldElt {
                    field: Some(field),
                    value: Poly::var(),
                })
            }
        }
    }

    /// Builds `value mod modulus` in the field of `like`.
    pub fn in_field_of(like: &FieldElt, value: Poly<Rat>) -> Self {
        match &like.field {
            None => {
                assert!(value.degree().unwrap_or(0) == 0, "non-constant value without a field");
                FieldElt {
                    field: None,
                    value,
                }
            }
            Some(f) => FieldElt {
                value: value.rem(&f.modulus),
                field: Some(f.clone()),
            },
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    pub fn value(&self) -> &Poly<Rat> {
        &self.value
    }

    pub fn modulus(&self) -> Option<&Poly<Rat>> {
        self.field.as_ref().map(|f| &f.modulus)
    }

    /// The rational value, when this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.value.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    fn join(a: &FieldElt, b: &FieldElt) -> Option<Arc<NumberField>> {
        match (&a.field, &b.field) {
            (None, None) => None,
            (Some(f), None) | (None, Some(f)) => Some(f.clone()),
            (Some(f), Some(g)) => {
                assert!(
                    Arc::ptr_eq(f, g) || f.modulus == g.modulus,
                    "mixing elements of different number fields"
                );
                Some(f.clone())
            }
        }
    }

    fn with(field: Option<Arc<NumberField>>, value: Poly<Rat>) -> Self {
        match field {
            None => FieldElt { field: None, value },
            Some(f) => FieldElt {
                value: value.rem(&f.modulus),
                field: Some(f),
            },
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = FieldElt::one();
        for _ in 0..e {
            r = r * self.clone();
        }
        r
    }

    /// Numeric value under the embedding `u -> root`.
    pub fn approx(&self, root: f64) -> f64 {
        self.value
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * root + rat_to_f64(c))
    }

    /// Renders the value as a polynomial in `var`.
    pub fn to_poly_string(&self, var: &str) -> String {
        poly_to_string(&self.value, var)
    }
}

pub fn poly_to_string(p: &Poly<Rat>, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rat::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&rat_to_string(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", rat_to_string(&a)));
        }
    }
    out
}

impl PartialEq for FieldElt {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a == b;
        }
        match (&self.field, &other.field) {
            (Some(f), Some(g)) => (Arc::ptr_eq(f, g) || f.modulus == g.modulus) && self.value == other.value,
            _ => false,
        }
    }
}

impl fmt::Display for FieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly_string("u"))
    }
}

impl Add for FieldElt {
    type Output = FieldElt;
    fn add(self, rhs: FieldElt) -> FieldElt {
        let field = FieldElt::join(&self, &rhs);
        FieldElt::with(field, &self.value + &rhs.value)
    }
}

impl Sub for FieldElt {
    type Output = FieldElt;
    fn sub(self, rhs: FieldElt) -> FieldElt {
        let field = FieldElt::join(&self, &rhs);
        FieldElt::with(field, &self.value - &rhs.value)
    }
}

impl Mul for FieldElt {
    type Output = FieldElt;
    fn mul(self, rhs: FieldElt) -> FieldElt {
        let field = FieldElt::join(&self, &rhs);
        FieldElt::with(field, &self.value * &rhs.value)
    }
}

impl Neg for FieldElt {
    type Output = FieldElt;
    fn neg(self) -> FieldElt {
        FieldElt {
            field: self.field,
            value: -&self.value,
        }
    }
}

impl Zero for FieldElt {
    fn zero() -> Self {
        FieldElt::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for FieldElt {
    fn one() -> Self {
        FieldElt::rational(Rat::one())
    }
}

impl Scalar for FieldElt {
    fn from_rat(r: &Rat) -> Self {
        FieldElt::rational(r.clone())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.field {
            None => Some(FieldElt::rational(self.value.coeff(0).recip())),
            Some(f) => {
                let (g, x, _) = self.value.ext_gcd(&f.modulus);
                debug_assert_eq!(g.degree(), Some(0), "modulus is not irreducible");
                Some(FieldElt::with(Some(f.clone()), x))
            }
        }
    }

    fn to_field(&self) -> FieldElt {
        self.clone()
    }
}

impl FieldElt {
    /// Inverse with an error for zero.
    pub fn invert(&self) -> Result<Self> {
        self.inv().ok_or(Error::DivisionByZero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn quad() -> FieldElt {
        // 5u^2 - 8u + 2
        FieldElt::generator(&Poly::new(vec![rat(2, 1), rat(-8, 1), rat(5, 1)])).unwrap()
    }

    fn lin(u: &FieldElt, a: i64, b: i64, d: i64) -> FieldElt {
        // (a*u + b)/d
        FieldElt::in_field_of(u, Poly::new(vec![rat(b, d), rat(a, d)]))
    }

    #[test]
    fn identity_product() {
        let u = quad();
        assert_eq!(u.clone() * FieldElt::one(), u);
    }

    #[test]
    fn square_reduces_by_modulus() {
        let u = quad();
        assert_eq!(u.clone() * u.clone(), lin(&u, 8, -2, 5));
    }

    #[test]
    fn inverse_by_extended_euclid() {
        let u = quad();
        let inv = u.invert().unwrap();
        assert_eq!(inv, lin(&u, -5, 8, 2));
        assert_eq!(u * inv, FieldElt::one());
    }

    #[test]
    fn inverting_zero_fails() {
        assert!(matches!(FieldElt::zero().invert(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn linear_modulus_degenerates_to_rational() {
        let r = FieldElt::generator(&Poly::new(vec![rat(-3, 1), rat(2, 1)])).unwrap();
        assert_eq!(r.as_rational(), Some(rat(3, 2)));
        assert!(r.field().is_none());
    }
}
