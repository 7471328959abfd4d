//! Binary forms `f(s,t)` over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::scalar::{rat_int, rat_to_string, Rat, Scalar};

/// Homogeneous polynomial in `(s,t)`. Coefficient `k` multiplies `s^(d-k) t^k`.
///
/// The zero form is stored only at degree 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree+1 coefficients");
        if coeffs.iter().all(|c| c.is_zero()) {
            return Self::zero();
        }
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        BinaryForm {
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c * s^i * t^j`.
    pub fn monomial(c: Rat, s_exp: usize, t_exp: usize) -> Self {
        let mut v = vec![Rat::zero(); s_exp + t_exp + 1];
        v[t_exp] = c;
        Self::new(v)
    }

    pub fn s() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `s^(d-k) t^k`.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BinaryForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rat::one()), |acc, _| &acc * self)
    }

    pub fn partial_s(&self) -> Self {
        let d = self.degree();
        if d == 0 || self.is_zero() {
            return Self::zero();
        }
        Self::new(
            (0..d)
                .map(|k| &self.coeffs[k] * rat_int((d - k) as i64))
                .collect(),
        )
    }

    pub fn partial_t(&self) -> Self {
        let d = self.degree();
        if d == 0 || self.is_zero() {
            return Self::zero();
        }
        Self::new(
            (1..=d)
                .map(|k| &self.coeffs[k] * rat_int(k as i64))
                .collect(),
        )
    }

    /// `∂^(i+j) / ∂s^i ∂t^j`.
    pub fn partial(&self, i: usize, j: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..i {
            f = f.partial_s();
        }
        for _ in 0..j {
            f = f.partial_t();
        }
        f
    }

    pub fn eval<K: Scalar>(&self, s: &K, t: &K) -> K {
        // homogeneous Horner: sum c_k s^(d-k) t^k
        let d = self.degree();
        let mut spow = vec![K::one(); d + 1];
        for k in 1..=d {
            spow[k] = spow[k - 1].clone() * s.clone();
        }
        let mut acc = K::zero();
        let mut tp = K::one();
        for k in 0..=d {
            if !self.coeffs[k].is_zero() {
                acc = acc + K::from_rat(&self.coeffs[k]) * spow[d - k].clone() * tp.clone();
            }
            tp = tp * t.clone();
        }
        acc
    }

    /// `f(1, u)` as a univariate polynomial in `u = t/s`.
    pub fn dehomogenize(&self) -> Poly<Rat> {
        Poly::new(self.coeffs.clone())
    }

    /// `f(s, 1)` as a univariate polynomial in `v = s/t`.
    pub fn dehomogenize_at_t(&self) -> Poly<Rat> {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Homogenizes `p(u)` to a form of the given degree (`u = t/s`).
    pub fn from_dehomogenized(p: &Poly<Rat>, degree: usize) -> Self {
        assert!(p.degree().map_or(true, |d| d <= degree), "degree too small");
        if p.is_zero() {
            return Self::zero();
        }
        Self::new((0..=degree).map(|k| p.coeff(k)).collect())
    }

    /// Multiplicity of the factor `s`.
    pub fn s_multiplicity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// Multiplicity of the factor `t`.
    pub fn t_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Splits the form as `unit * primitive`, where the primitive part has
    /// coprime integer coefficients and a positive first nonzero coefficient.
    pub fn normalize(&self) -> (Rat, BinaryForm) {
        if self.is_zero() {
            return (Rat::zero(), Self::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for n in &ints {
            g = g.gcd(n);
        }
        let first = ints.iter().find(|n| !n.is_zero()).expect("nonzero form");
        if first.is_negative() {
            g = -g;
        }
        let prim = BinaryForm {
            coeffs: ints.iter().map(|n| Rat::from_integer(n / &g)).collect(),
        };
        (Rat::new(g, den), prim)
    }

    pub fn normalized(&self) -> BinaryForm {
        self.normalize().1
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (df, dd) = (self.degree(), d.degree());
        if dd > df {
            return None;
        }
        let lo = d.t_multiplicity();
        let piv = d.coeffs[lo].clone();
        let dq = df - dd;
        let mut q = vec![Rat::zero(); dq + 1];
        for k in 0..=dq {
            let mut acc = self.coeff(k + lo);
            for j in 0..k {
                acc -= &q[j] * d.coeff(k + lo - j);
            }
            q[k] = acc / &piv;
        }
        let q = Self::new(q);
        (&q * d == *self).then_some(q)
    }

    /// Order of vanishing at the parameter `(s0:t0)`.
    pub fn order_at<K: Scalar>(&self, s0: &K, t0: &K) -> Option<usize> {
        series_at(self, s0, t0).low_order()
    }

    /// Ordering used to list factors: by degree, then coefficients descending.
    pub fn display_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.coeffs.cmp(&self.coeffs))
    }
}

/// Local expansion of `f` at the parameter `(s0:t0)` in the affine coordinate
/// of the chart containing it: `f(1, u0 + τ)` when `s0 ≠ 0` (after scaling
/// to `s0 = 1`), otherwise `f(τ, 1)`.
pub fn series_at<K: Scalar>(f: &BinaryForm, s0: &K, t0: &K) -> Poly<K> {
    if !s0.is_zero() {
        let u0 = t0.clone() * s0.inv().expect("nonzero");
        f.dehomogenize().map(K::from_rat).taylor_shift(&u0)
    } else {
        f.dehomogenize_at_t().map(K::from_rat)
    }
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    fn add(self, rhs: &BinaryForm) -> BinaryForm {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree(), rhs.degree(), "adding forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;
    fn sub(self, rhs: &BinaryForm) -> BinaryForm {
        self + &(-rhs)
    }
}

impl Neg for &BinaryForm {
    type Output = BinaryForm;
    fn neg(self) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        if self.is_zero() || rhs.is_zero() {
            return BinaryForm::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        BinaryForm::new(v)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut mono = Vec::new();
            match d - k {
                0 => {}
                1 => mono.push("s".to_string()),
                e => mono.push(format!("s^{e}")),
            }
            match k {
                0 => {}
                1 => mono.push("t".to_string()),
                e => mono.push(format!("t^{e}")),
            }
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

impl Serialize for BinaryForm {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(rat_to_string).collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BinaryForm {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(de)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient list"));
        }
        let coeffs = v
            .iter()
            .map(|s| super::scalar::parse_rat(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BinaryForm::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    #[test]
    fn partials_follow_monomial_rule() {
        // s^2 t - 3 t^3
        let f = BinaryForm::from_ints(&[0, 1, 0, -3]);
        assert_eq!(f.partial_s(), BinaryForm::from_ints(&[0, 2, 0]));
        assert_eq!(f.partial_t(), BinaryForm::from_ints(&[1, 0, -9]));
    }

    #[test]
    fn normalize_extracts_scalar() {
        let f = BinaryForm::from_ints(&[2, -4, 0]);
        let (u, p) = f.normalize();
        assert_eq!(u, rat(2, 1));
        assert_eq!(p, BinaryForm::from_ints(&[1, -2, 0]));
        let g = BinaryForm::from_ints(&[0, 0, -9, 0, 0]);
        assert_eq!(g.normalize().0, rat(-9, 1));
    }

    #[test]
    fn multiplicities_of_coordinate_factors() {
        let f = BinaryForm::from_ints(&[0, 0, 1, -1, 0]); // s^2 t^2 - s t^3 = s t^2 (s - t)
        assert_eq!(f.t_multiplicity(), 2);
        assert_eq!(f.s_multiplicity(), 1);
    }

    #[test]
    fn exact_division() {
        let a = BinaryForm::from_ints(&[1, -1]);
        let b = BinaryForm::from_ints(&[0, 3, 1]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&a), Some(b));
        assert_eq!(p.div_exact(&BinaryForm::from_ints(&[1, 1])), None);
    }

    #[test]
    fn display_reads_naturally() {
        let f = BinaryForm::from_ints(&[2, -8, 5]);
        assert_eq!(f.to_string(), "2*s^2 - 8*s*t + 5*t^2");
    }

    #[test]
    fn order_at_parameter() {
        let f = BinaryForm::from_ints(&[0, 0, 1, -1, 0]);
        assert_eq!(f.order_at(&rat(1, 1), &rat(0, 1)), Some(2));
        assert_eq!(f.order_at(&rat(0, 1), &rat(1, 1)), Some(1));
        assert_eq!(f.order_at(&rat(1, 1), &rat(1, 1)), Some(1));
        assert_eq!(f.order_at(&rat(1, 1), &rat(2, 1)), Some(0));
    }
}
