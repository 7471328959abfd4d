use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::FieldElt;
use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Coefficient domain shared by every polynomial type in the crate.
///
/// Implemented by [`Rat`] and by [`FieldElt`] (elements of a number field
/// `Q[u]/(f)`).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_rat(r: &Rat) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn to_field(&self) -> FieldElt;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&rat(n, 1))
    }
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_field(&self) -> FieldElt {
        FieldElt::rational(self.clone())
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"7"`, `"-3/4"` or `"2.5"`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational number: {t:?}"),
    };
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let ip_abs = ip.trim().trim_start_matches(['-', '+']);
        let whole = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(ip_abs).map_err(|_| bad())?
        };
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = if fp.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(fp).map_err(|_| bad())?
        };
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rat::new(whole * &den + frac, den);
        return Ok(if neg { -v } else { v });
    }
    BigInt::from_str(t).map(Rat::from_integer).map_err(|_| bad())
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, k| acc * rat(k, 1))
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
