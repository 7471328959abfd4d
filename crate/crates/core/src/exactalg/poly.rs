//! Dense univariate polynomials over a [`Scalar`] domain.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::scalar::{Rat, Scalar};

/// Dense univariate polynomial, coefficients stored low degree first.
/// Trailing zeros are always trimmed; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `u`.
    pub fn var() -> Self {
        Poly::new(vec![K::zero(), K::one()])
    }

    pub fn monomial(c: K, exp: usize) -> Self {
        let mut v = vec![K::zero(); exp + 1];
        v[exp] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * K::from_int(k as i64))
                .collect(),
        )
    }

    /// Exponent of the lowest nonzero term; `None` for zero.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![K::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v)
    }

    /// Keeps only the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `p(u + c)`.
    pub fn taylor_shift(&self, c: &K) -> Self {
        // Horner in the shifted variable
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![c.clone(), K::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(a.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Poly::constant(K::one());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Division with remainder. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().inv().expect("leading coefficient is invertible");
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, x, y)` with `x*self + y*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(K::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(K::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<Rat> {
    /// Newton interpolation through `(x_i, y_i)`.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Rat> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            let lin = Poly::new(vec![-xs[i].clone(), Rat::one()]);
            acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
        }
        acc
    }
}

impl<K: Scalar> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<K: Scalar> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<K: Scalar> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<K: Scalar> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn p(v: &[i64]) -> Poly<Rat> {
        Poly::new(v.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[2, -8, 5]);
        let b = p(&[0, 1]);
        let (g, x, y) = a.ext_gcd(&b);
        assert_eq!(g, p(&[1]));
        assert_eq!(&(&x * &a) + &(&y * &b), g);
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let a = p(&[3, -1, 0, 2]);
        let c = rat(5, 3);
        let sh = a.taylor_shift(&c);
        assert_eq!(sh.coeff(0), a.eval(&c));
        assert_eq!(sh.eval(&rat(1, 1)), a.eval(&(c + rat(1, 1))));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let a = p(&[7, 0, -3, 1]);
        let xs: Vec<Rat> = (0..4).map(|k| rat(k, 1)).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| a.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), a);
    }
}
