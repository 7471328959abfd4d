//! Determinants over commutative rings: division-free Laplace expansion for
//! symbolic entries, fraction-free Bareiss elimination for numeric ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::BiPoly;
use crate::error::{Error, Result};
use crate::exactalg::{BinaryForm, FieldElt, Poly, Rat, Scalar};

/// Minimal ring interface needed by cofactor expansion.
pub trait RingElem: Clone {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
}

macro_rules! ring_via_ops {
    ($t:ty) => {
        impl RingElem for $t {
            fn add_ref(&self, rhs: &Self) -> Self {
                self.clone() + rhs.clone()
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self.clone() - rhs.clone()
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self.clone() * rhs.clone()
            }
        }
    };
}

ring_via_ops!(Rat);
ring_via_ops!(FieldElt);
ring_via_ops!(BigInt);

impl RingElem for BinaryForm {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl<K: Scalar> RingElem for BiPoly<K> {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl<K: Scalar> RingElem for Poly<K> {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
    }
    Ok(n)
}

fn minor<T: Clone>(m: &[Vec<T>], row: usize, col: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

fn laplace_rec<T: RingElem>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    if n == 2 {
        return m[0][0].mul_ref(&m[1][1]).sub_ref(&m[0][1].mul_ref(&m[1][0]));
    }
    let mut acc: Option<T> = None;
    for j in 0..n {
        let term = m[0][j].mul_ref(&laplace_rec(&minor(m, 0, j)));
        acc = Some(match acc {
            None => term,
            Some(a) if j % 2 == 0 => a.add_ref(&term),
            Some(a) => a.sub_ref(&term),
        });
    }
    acc.expect("n >= 1")
}

/// Determinant by cofactor expansion along the first row (division free).
pub fn det_laplace<T: RingElem>(m: &[Vec<T>]) -> Result<T> {
    check_square(m)?;
    Ok(laplace_rec(m))
}

/// A row or column index for cofactor expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

/// Determinant by cofactor expansion along the given row or column.
pub fn det_laplace_along<T: RingElem>(m: &[Vec<T>], line: Line) -> Result<T> {
    let n = check_square(m)?;
    let k = match line {
        Line::Row(k) | Line::Col(k) => k,
    };
    if k >= n {
        return Err(Error::DimensionMismatch(format!("line {k} out of range for order {n}")));
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc: Option<T> = None;
    for j in 0..n {
        let (r, c) = match line {
            Line::Row(k) => (k, j),
            Line::Col(k) => (j, k),
        };
        let term = m[r][c].mul_ref(&laplace_rec(&minor(m, r, c)));
        acc = Some(match acc {
            None if (r + c) % 2 == 0 => term,
            None => neg(&term),
            Some(a) if (r + c) % 2 == 0 => a.add_ref(&term),
            Some(a) => a.sub_ref(&term),
        });
    }
    Ok(acc.expect("n >= 1"))
}

fn neg<T: RingElem>(t: &T) -> T {
    t.sub_ref(t).sub_ref(t)
}

/// Signed cofactors `C_j` of the first row for a matrix whose first row is
/// symbolic: `det = Σ_j row0[j] * C_j`. `rows` are the remaining `n-1` rows.
pub fn first_row_cofactors<T: RingElem>(rows: &[Vec<T>]) -> Result<Vec<T>> {
    let n = rows.len() + 1;
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let sub: Vec<Vec<T>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let d = laplace_rec(&sub);
        out.push(if j % 2 == 0 { d } else { neg(&d) });
    }
    Ok(out)
}

/// Bareiss elimination over a field (exact divisions, row pivoting).
pub fn det_bareiss<K: Scalar>(m: &[Vec<K>]) -> Result<K> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<K>> = m.to_vec();
    let mut prev = K::one();
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Ok(K::zero()),
            }
        }
        let inv = prev.inv().expect("nonzero pivot");
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v * inv.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Bareiss elimination over the integers; every division is exact.
pub fn det_bareiss_int(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn rm(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|r| r.iter().map(|&c| rat(c, 1)).collect()).collect()
    }

    #[test]
    fn identity_and_known_values() {
        let id = rm(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(det_laplace(&id).unwrap(), rat(1, 1));
        assert_eq!(det_bareiss(&id).unwrap(), rat(1, 1));
        let m = rm(&[&[0, 2, 1], &[3, 0, 4], &[5, 6, 0]]);
        // 0 - 2*(0-20) + 1*(18-0) = 58
        assert_eq!(det_laplace(&m).unwrap(), rat(58, 1));
        assert_eq!(det_bareiss(&m).unwrap(), rat(58, 1));
        let mi: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|c| c.to_integer()).collect()).collect();
        assert_eq!(det_bareiss_int(&mi).unwrap(), BigInt::from(58));
        for line in [Line::Row(1), Line::Row(2), Line::Col(0), Line::Col(2)] {
            assert_eq!(det_laplace_along(&m, line).unwrap(), rat(58, 1));
        }
    }

    #[test]
    fn dimension_errors() {
        let bad = vec![vec![rat(1, 1), rat(2, 1)]];
        assert!(matches!(det_laplace(&bad), Err(Error::DimensionMismatch(_))));
        assert!(matches!(det_bareiss(&bad), Err(Error::DimensionMismatch(_))));
    }
}
