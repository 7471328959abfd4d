//! gcd, square-free decomposition and factorization of binary forms over `Q`.
//!
//! Forms are dehomogenized at `s = 1`; the factor `s` (the parameter `(0:1)`)
//! is tracked separately as the degree drop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::form::BinaryForm;
use super::poly::Poly;
use super::scalar::{rat_int, Rat};
use crate::error::{Error, Result};

/// `unit * Π factor^multiplicity`, factors normalized (primitive, positive leading entry).
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(BinaryForm, u32)>,
    /// Indices into `factors` whose irreducibility could not be established.
    pub uncertified: Vec<usize>,
}

impl Factorization {
    pub fn expand(&self) -> BinaryForm {
        let mut acc = BinaryForm::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn multiplicity_of(&self, factor: &BinaryForm) -> u32 {
        let n = factor.normalized();
        self.factors
            .iter()
            .find(|(f, _)| *f == n)
            .map_or(0, |(_, m)| *m)
    }
}

/// Normalized greatest common divisor of two forms.
pub fn gcd_forms(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::GcdOfZero),
        (true, false) => return Ok(g.normalized()),
        (false, true) => return Ok(f.normalized()),
        _ => {}
    }
    let sm = f.s_multiplicity().min(g.s_multiplicity());
    let h = f.dehomogenize().gcd(&g.dehomogenize());
    let e = h.degree().unwrap_or(0);
    let core = BinaryForm::from_dehomogenized(&h, e);
    Ok((&core * &BinaryForm::s().pow(sm as u32)).normalized())
}

fn sort_factors(v: &mut [(BinaryForm, u32)]) {
    v.sort_by(|a, b| a.0.display_cmp(&b.0));
}

/// Square-free decomposition (Yun's algorithm on the dehomogenization).
pub fn squarefree_factorization(f: &BinaryForm) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroForm("square-free factorization"));
    }
    let (unit, _) = f.normalize();
    let mut factors = Vec::new();
    let sm = f.s_multiplicity();
    if sm > 0 {
        factors.push((BinaryForm::s(), sm as u32));
    }
    for (p, m) in yun(&f.dehomogenize()) {
        let d = p.degree().unwrap();
        factors.push((BinaryForm::from_dehomogenized(&p, d).normalized(), m));
    }
    sort_factors(&mut factors);
    Ok(Factorization {
        unit,
        factors,
        uncertified: Vec::new(),
    })
}

/// Yun's square-free decomposition of a nonzero univariate polynomial;
/// returns monic square-free parts of positive degree with multiplicities.
fn yun(p: &Poly<Rat>) -> Vec<(Poly<Rat>, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let mut c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Factorization into irreducibles over `Q`: square-free decomposition,
/// rational-root stripping, then Kronecker's method on what remains.
pub fn irreducible_factorization(f: &BinaryForm) -> Result<Factorization> {
    let sq = squarefree_factorization(f)?;
    let mut factors = Vec::new();
    let mut flagged = Vec::new();
    for (part, m) in &sq.factors {
        if part.degree() <= 1 {
            factors.push((part.clone(), *m));
            continue;
        }
        let (pieces, rest) = split_irreducible(&to_integer_poly(&part.dehomogenize()));
        for p in pieces {
            factors.push((int_poly_to_form(&p), *m));
        }
        if let Some(r) = rest {
            flagged.push(int_poly_to_form(&r));
            factors.push((int_poly_to_form(&r), *m));
        }
    }
    sort_factors(&mut factors);
    let uncertified = factors
        .iter()
        .enumerate()
        .filter(|(_, (f, _))| flagged.contains(f))
        .map(|(i, _)| i)
        .collect();
    Ok(Factorization {
        unit: sq.unit,
        factors,
        uncertified,
    })
}

type IntPoly = Vec<BigInt>;

fn to_integer_poly(p: &Poly<Rat>) -> IntPoly {
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let mut v: IntPoly = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    for c in &mut v {
        *c /= &g;
    }
    v
}

fn int_to_rat_poly(p: &IntPoly) -> Poly<Rat> {
    Poly::new(p.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn int_poly_to_form(p: &IntPoly) -> BinaryForm {
    let q = int_to_rat_poly(p);
    let d = q.degree().unwrap_or(0);
    BinaryForm::from_dehomogenized(&q, d).normalized()
}

const DIVISOR_LIMIT: u64 = 1 << 40;
const KRONECKER_BUDGET: usize = 200_000;

/// Positive divisors of `n`, or `None` when `n` is too large to enumerate.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(BigInt::from(k));
            if k * k != n {
                large.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Splits a square-free primitive integer polynomial into irreducible
/// factors; the second component is a leftover piece that could not be
/// certified within the search budget.
fn split_irreducible(p: &IntPoly) -> (Vec<IntPoly>, Option<IntPoly>) {
    let mut done = Vec::new();
    let mut work = vec![p.clone()];
    let mut leftover: Option<IntPoly> = None;
    while let Some(q) = work.pop() {
        let deg = q.len() - 1;
        if deg == 0 {
            continue;
        }
        if deg == 1 {
            done.push(q);
            continue;
        }
        match find_factor(&q) {
            Search::Found(f) => {
                let qq = int_to_rat_poly(&q);
                let ff = int_to_rat_poly(&f);
                let cof = qq.div_exact(&ff).expect("verified divisor");
                work.push(to_integer_poly(&ff));
                work.push(to_integer_poly(&cof));
            }
            Search::Irreducible => done.push(q),
            Search::GaveUp => {
                leftover = Some(match leftover {
                    None => q,
                    Some(l) => to_integer_poly(&(&int_to_rat_poly(&l) * &int_to_rat_poly(&q))),
                });
            }
        }
    }
    (done, leftover)
}

enum Search {
    Found(IntPoly),
    Irreducible,
    GaveUp,
}

fn eval_int(p: &IntPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn find_factor(p: &IntPoly) -> Search {
    let n = p.len() - 1;
    let possible = possible_factor_degrees(p);
    if (1..=n / 2).all(|d| !possible[d]) {
        return Search::Irreducible;
    }
    if possible[1] {
        if let Some(r) = rational_root(p) {
            return Search::Found(r);
        }
    }
    if n <= 3 {
        return Search::Irreducible;
    }
    let mut gave_up = false;
    for d in (2..=n / 2).filter(|&d| possible[d]) {
        match kronecker_degree(p, d) {
            Search::Found(f) => return Search::Found(f),
            Search::GaveUp => gave_up = true,
            Search::Irreducible => {}
        }
    }
    if gave_up {
        Search::GaveUp
    } else {
        Search::Irreducible
    }
}

const SIEVE_PRIMES: [u64; 16] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];
const SIEVE_ROUNDS: usize = 6;

/// `possible[d]` is false when no factor of degree `d` exists over `Q`, read
/// off from distinct-degree factorizations modulo small good primes.
fn possible_factor_degrees(p: &IntPoly) -> Vec<bool> {
    let n = p.len() - 1;
    let mut possible = vec![true; n + 1];
    let mut rounds = 0;
    for &q in &SIEVE_PRIMES {
        let Some(degs) = modp::factor_degrees(p, q) else {
            continue;
        };
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for k in degs {
            for s in (k..=n).rev() {
                sums[s] |= sums[s - k];
            }
        }
        for (a, b) in possible.iter_mut().zip(&sums) {
            *a &= *b;
        }
        rounds += 1;
        if rounds == SIEVE_ROUNDS || (1..=n / 2).all(|d| !possible[d]) {
            break;
        }
    }
    possible
}

/// Dense polynomials over `F_q`, low degree first, for the degree sieve.
mod modp {
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};

    type P = Vec<u64>;

    fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn mulmod(a: u64, b: u64, q: u64) -> u64 {
        ((a as u128 * b as u128) % q as u128) as u64
    }

    fn inv(a: u64, q: u64) -> u64 {
        // q prime
        let (mut r, mut b, mut e) = (1u64, a % q, q - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b, q);
            }
            b = mulmod(b, b, q);
            e >>= 1;
        }
        r
    }

    fn rem(a: &P, m: &P, q: u64) -> P {
        let mut a = a.clone();
        let dm = m.len() - 1;
        let li = inv(m[dm], q);
        while a.len() > dm {
            let c = mulmod(*a.last().unwrap(), li, q);
            let shift = a.len() - 1 - dm;
            for (k, mk) in m.iter().enumerate() {
                a[shift + k] = (a[shift + k] + q - mulmod(c, *mk, q)) % q;
            }
            a = trim(a);
        }
        a
    }

    fn div(a: &P, m: &P, q: u64) -> P {
        let mut a = a.clone();
        let dm = m.len() - 1;
        let li = inv(m[dm], q);
        let mut out = vec![0; a.len().saturating_sub(dm)];
        while a.len() > dm {
            let c = mulmod(*a.last().unwrap(), li, q);
            let shift = a.len() - 1 - dm;
            out[shift] = c;
            for (k, mk) in m.iter().enumerate() {
                a[shift + k] = (a[shift + k] + q - mulmod(c, *mk, q)) % q;
            }
            a = trim(a);
        }
        out
    }

    fn mul_rem(a: &P, b: &P, m: &P, q: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(*x, *y, q)) % q;
            }
        }
        rem(&trim(out), m, q)
    }

    fn gcd(a: &P, b: &P, q: u64) -> P {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(&a, &b, q);
            a = b;
            b = r;
        }
        a
    }

    fn pow_rem(b: &P, mut e: u64, m: &P, q: u64) -> P {
        let mut r = vec![1u64];
        let mut b = rem(b, m, q);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_rem(&r, &b, m, q);
            }
            b = mul_rem(&b, &b, m, q);
            e >>= 1;
        }
        r
    }

    fn sub(a: &P, b: &P, q: u64) -> P {
        let mut out = vec![0; a.len().max(b.len())];
        for (k, o) in out.iter_mut().enumerate() {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            *o = (x + q - y) % q;
        }
        trim(out)
    }

    /// Degrees of the irreducible factors of `p mod q`, or `None` when `q`
    /// divides the leading coefficient or `p mod q` is not square-free.
    pub(super) fn factor_degrees(p: &[BigInt], q: u64) -> Option<Vec<usize>> {
        let qb = BigInt::from(q);
        let f: P = p
            .iter()
            .map(|c| {
                let r = c % &qb;
                let r = if r < BigInt::zero() { r + &qb } else { r };
                r.to_u64().expect("reduced")
            })
            .collect();
        let mut f = trim(f);
        if f.len() != p.len() {
            return None;
        }
        let df: P = trim(f.iter().enumerate().skip(1).map(|(k, c)| mulmod(k as u64 % q, *c, q)).collect());
        if df.is_empty() || gcd(&f, &df, q).len() > 1 {
            return None;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut degs = Vec::new();
        let mut k = 1;
        while 2 * k <= f.len() - 1 {
            h = pow_rem(&h, q, &f, q);
            let g = gcd(&f, &sub(&h, &x, q), q);
            let dg = g.len() - 1;
            if dg > 0 {
                degs.extend(std::iter::repeat(k).take(dg / k));
                f = div(&f, &g, q);
                h = rem(&h, &f, q);
            }
            k += 1;
        }
        if f.len() > 1 {
            degs.push(f.len() - 1);
        }
        Some(degs)
    }
}

/// A linear factor `q*u - r`, if `p` has a rational root.
fn rational_root(p: &IntPoly) -> Option<IntPoly> {
    if p[0].is_zero() {
        return Some(vec![BigInt::zero(), BigInt::one()]);
    }
    let lead = p.last().unwrap();
    let (num, den) = (divisors(&p[0])?, divisors(lead)?);
    for q in &den {
        for r in &num {
            for r in [r.clone(), -r.clone()] {
                if r.gcd(q).is_one() {
                    // p(r/q) * q^n == 0
                    let val = p.iter().enumerate().fold(BigInt::zero(), |acc, (k, c)| {
                        acc + c * r.pow(k as u32) * q.pow((p.len() - 1 - k) as u32)
                    });
                    if val.is_zero() {
                        return Some(vec![-r, q.clone()]);
                    }
                }
            }
        }
    }
    None
}

/// Kronecker's search for a factor of exact degree `d`.
fn kronecker_degree(p: &IntPoly, d: usize) -> Search {
    // d+1 evaluation points with few divisors
    let mut cands: Vec<(usize, BigInt, Vec<BigInt>)> = Vec::new();
    for x in -30i64..=30 {
        let x = BigInt::from(x);
        let v = eval_int(p, &x);
        if v.is_zero() {
            continue;
        }
        match divisors(&v) {
            Some(ds) => cands.push((ds.len(), x, ds)),
            None => continue,
        }
    }
    if cands.len() < d + 1 {
        return Search::GaveUp;
    }
    cands.sort_by(|a, b| a.0.cmp(&b.0));
    cands.truncate(d + 1);
    let total: usize = cands
        .iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { c.0 } else { 2 * c.0 })
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    if total > KRONECKER_BUDGET {
        return Search::GaveUp;
    }
    let xs: Vec<Rat> = cands.iter().map(|c| Rat::from_integer(c.1.clone())).collect();
    let choices: Vec<Vec<BigInt>> = cands
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == 0 {
                c.2.clone()
            } else {
                c.2.iter().flat_map(|v| [v.clone(), -v.clone()]).collect()
            }
        })
        .collect();
    let target = int_to_rat_poly(p);
    let mut idx = vec![0usize; choices.len()];
    loop {
        let ys: Vec<Rat> = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| Rat::from_integer(c[i].clone()))
            .collect();
        let q = Poly::interpolate(&xs, &ys);
        if q.degree() == Some(d) && q.coeffs().iter().all(|c| c.is_integer()) {
            if target.div_exact(&q).is_some() {
                return Search::Found(to_integer_poly(&q));
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Search::Irreducible;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Direct irreducibility check for forms of degree ≤ 2.
pub fn is_irreducible_low_degree(f: &BinaryForm) -> Option<bool> {
    match f.degree() {
        0 => Some(false),
        1 => Some(true),
        2 => {
            let (a, b, c) = (f.coeff(0), f.coeff(1), f.coeff(2));
            let disc = &b * &b - rat_int(4) * &a * &c;
            Some(!is_rational_square(&disc))
        }
        _ => None,
    }
}

fn is_rational_square(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_forms(&f(&[1, 0, -1]), &f(&[1, -1])).unwrap(), f(&[1, -1]));
        assert_eq!(gcd_forms(&BinaryForm::s(), &BinaryForm::t()).unwrap(), f(&[1]));
        // 2s(s-2t) and -9 s^2 t^2
        let xi10 = f(&[2, -4, 0]);
        let xi01 = f(&[0, 0, -9, 0, 0]);
        assert_eq!(gcd_forms(&xi10, &xi01).unwrap(), BinaryForm::s());
    }

    #[test]
    fn gcd_of_zero_forms_fails() {
        assert!(matches!(
            gcd_forms(&BinaryForm::zero(), &BinaryForm::zero()),
            Err(Error::GcdOfZero)
        ));
    }

    #[test]
    fn squarefree_examples() {
        let sq = squarefree_factorization(&f(&[0, 0, -9, 0, 0])).unwrap();
        assert_eq!(sq.factors, vec![(BinaryForm::s(), 2), (BinaryForm::t(), 2)]);
        assert_eq!(sq.unit, rat_int(-9));

        let sq = squarefree_factorization(&f(&[1, -1])).unwrap();
        assert_eq!(sq.factors, vec![(f(&[1, -1]), 1)]);

        // -77760 s^4 t^2 (2s^2 - 8st + 5t^2)
        let xi = &BinaryForm::monomial(rat_int(-77760), 4, 2) * &f(&[2, -8, 5]);
        let sq = squarefree_factorization(&xi).unwrap();
        assert_eq!(
            sq.factors,
            vec![(BinaryForm::s(), 4), (BinaryForm::t(), 2), (f(&[2, -8, 5]), 1)]
        );
        assert_eq!(sq.unit, rat_int(-77760));
        assert_eq!(sq.expand(), xi);
    }

    #[test]
    fn squarefree_rejects_zero() {
        assert!(squarefree_factorization(&BinaryForm::zero()).is_err());
    }

    #[test]
    fn irreducible_examples() {
        let fa = irreducible_factorization(&f(&[2, -8, 5])).unwrap();
        assert_eq!(fa.factors, vec![(f(&[2, -8, 5]), 1)]);
        let fa = irreducible_factorization(&f(&[1, 0, -1])).unwrap();
        let mut got: Vec<_> = fa.factors.iter().map(|x| x.0.clone()).collect();
        got.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        assert_eq!(got, vec![f(&[1, -1]), f(&[1, 1])]);
        let fa = irreducible_factorization(&f(&[2, -4, 0])).unwrap();
        assert_eq!(fa.factors, vec![(BinaryForm::s(), 1), (f(&[1, -2]), 1)]);
        assert_eq!(fa.unit, rat_int(2));
    }

    #[test]
    fn kronecker_splits_quartic_without_rational_roots() {
        // (s^2 + t^2)(s^2 - 2t^2) = s^4 - s^2 t^2 - 2 t^4
        let p = f(&[1, 0, -1, 0, -2]);
        let fa = irreducible_factorization(&p).unwrap();
        assert_eq!(fa.factors.len(), 2);
        assert!(fa.uncertified.is_empty());
        assert_eq!(fa.expand(), p);
        // s^4 + t^4 is irreducible over Q
        let fa = irreducible_factorization(&f(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(fa.factors.len(), 1);
        assert!(fa.uncertified.is_empty());
    }

    #[test]
    fn degree_sieve_keeps_true_degrees() {
        let ints = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<IntPoly>();
        // (u^2 + 1)(u^3 - u - 1)
        let p = ints(&[-1, -1, 0, 1]);
        let q = to_integer_poly(&(&int_to_rat_poly(&p) * &int_to_rat_poly(&ints(&[1, 0, 1]))));
        let possible = possible_factor_degrees(&q);
        assert!(possible[2] && possible[3]);
        // (u^5 - u - 1)(u^2 + 1): only degrees 2 and 5 survive
        let p = ints(&[-1, -1, 0, 0, 0, 1]);
        let q = to_integer_poly(&(&int_to_rat_poly(&p) * &int_to_rat_poly(&ints(&[1, 0, 1]))));
        assert_eq!(possible_factor_degrees(&q), [true, false, true, false, false, true, false, true]);
        // u^8 - u - 1 is irreducible and the sieve proves it
        let r = ints(&[-1, -1, 0, 0, 0, 0, 0, 0, 1]);
        assert!((1..=4).all(|d| !possible_factor_degrees(&r)[d]));
        let fa = irreducible_factorization(&f(&[1, 0, 0, 0, 0, 0, 0, -1, -1])).unwrap();
        assert_eq!(fa.factors.len(), 1);
        assert!(fa.uncertified.is_empty());
    }

    #[test]
    fn low_degree_irreducibility() {
        assert_eq!(is_irreducible_low_degree(&f(&[2, -8, 5])), Some(true));
        assert_eq!(is_irreducible_low_degree(&f(&[1, 0, -1])), Some(false));
    }
}
