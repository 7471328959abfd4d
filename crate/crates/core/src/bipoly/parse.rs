//! Expression grammar shared by the library and the CLI.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Division is only allowed by constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rat_int, BinaryForm, FieldElt, Poly, Rat};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Var(String, usize),
    Call(String, Box<Expr>, usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else if c == '−' {
            out.push((Tok::Op('-'), i));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let at = self.here();
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?), at);
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let at = self.here();
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?), at);
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n.to_u32().filter(|&e| e <= 64);
                    match e {
                        Some(e) => Ok(Expr::Pow(Box::new(base), e)),
                        None => self.err("exponent too large"),
                    }
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected ')'");
                    }
                    Ok(Expr::Call(name, Box::new(arg), at))
                } else {
                    Ok(Expr::Var(name, at))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Sparse polynomial in a fixed list of variables: exponent vector -> coefficient.
pub type MPoly = BTreeMap<Vec<u32>, Rat>;

fn mp_add(a: &MPoly, b: &MPoly, sign: i64) -> MPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let v = out.entry(e.clone()).or_insert_with(Rat::zero);
        *v += c * rat_int(sign);
        if v.is_zero() {
            out.remove(e);
        }
    }
    out
}

fn mp_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e.clone()).or_insert_with(Rat::zero);
            *v += ca * cb;
            if v.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

fn mp_const(c: Rat, n: usize) -> MPoly {
    let mut m = MPoly::new();
    if !c.is_zero() {
        m.insert(vec![0; n], c);
    }
    m
}

fn mp_as_const(m: &MPoly) -> Option<Rat> {
    match m.len() {
        0 => Some(Rat::zero()),
        1 => {
            let (e, c) = m.iter().next().unwrap();
            e.iter().all(|&x| x == 0).then(|| c.clone())
        }
        _ => None,
    }
}

fn to_mpoly(e: &Expr, vars: &[&str]) -> Result<MPoly> {
    let n = vars.len();
    Ok(match e {
        Expr::Num(v) => mp_const(Rat::from_integer(v.clone()), n),
        Expr::Var(name, pos) => {
            let Some(i) = vars.iter().position(|v| v == name) else {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: format!("unknown variable {name:?} (expected one of {vars:?})"),
                });
            };
            let mut ex = vec![0; n];
            ex[i] = 1;
            MPoly::from([(ex, Rat::one())])
        }
        Expr::Call(name, _, pos) => {
            return Err(Error::Parse {
                pos: *pos,
                msg: format!("function {name:?} not allowed in a polynomial"),
            })
        }
        Expr::Neg(a) => mp_add(&MPoly::new(), &to_mpoly(a, vars)?, -1),
        Expr::Pow(a, k) => {
            let base = to_mpoly(a, vars)?;
            (0..*k).fold(mp_const(Rat::one(), n), |acc, _| mp_mul(&acc, &base))
        }
        Expr::Bin(op, a, b, pos) => {
            let (x, y) = (to_mpoly(a, vars)?, to_mpoly(b, vars)?);
            match op {
                '+' => mp_add(&x, &y, 1),
                '-' => mp_add(&x, &y, -1),
                '*' => mp_mul(&x, &y),
                '/' => match mp_as_const(&y) {
                    Some(c) if !c.is_zero() => mp_mul(&x, &mp_const(c.recip(), n)),
                    Some(_) => {
                        return Err(Error::Parse {
                            pos: *pos,
                            msg: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(Error::Parse {
                            pos: *pos,
                            msg: "division by a non-constant expression".into(),
                        })
                    }
                },
                _ => unreachable!(),
            }
        }
    })
}

/// Parses a polynomial in the given variables.
pub fn parse_polynomial(text: &str, vars: &[&str]) -> Result<MPoly> {
    to_mpoly(&parse_expr(text)?, vars)
}

/// Parses a binary form in `s`, `t`. The degree is taken from the terms
/// (or from `degree` when given, which also covers the zero form).
pub fn parse_form(text: &str, degree: Option<usize>) -> Result<BinaryForm> {
    let m = parse_polynomial(text, &["s", "t"])?;
    let d = match degree {
        Some(d) => d,
        None => m.keys().next().map_or(0, |e| (e[0] + e[1]) as usize),
    };
    let mut coeffs = vec![Rat::zero(); d + 1];
    for (e, c) in &m {
        if (e[0] + e[1]) as usize != d {
            return Err(Error::DegreeMismatch(format!(
                "term s^{}*t^{} is not of degree {d}",
                e[0], e[1]
            )));
        }
        coeffs[e[1] as usize] = c.clone();
    }
    Ok(BinaryForm::new(coeffs))
}

/// Value `a + b*sqrt(n)` with a single square-free integer radicand `n`.
#[derive(Clone, Debug)]
struct Quad {
    a: Rat,
    b: Rat,
}

/// Shared radicand state: all square roots in one input must live in `Q(sqrt(n))`.
#[derive(Clone, Debug, Default)]
pub struct Radicand(Option<BigInt>);

fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    // n = s^2 * core with core square-free (sign kept in core)
    let mut core = n.abs();
    let mut s = BigInt::one();
    let mut k = BigInt::from(2);
    while &k * &k <= core {
        let kk = &k * &k;
        while (&core % &kk).is_zero() {
            core /= &kk;
            s *= &k;
        }
        k += 1;
    }
    if n.is_negative() {
        core = -core;
    }
    (s, core)
}

/// `sqrt(r) = coef * sqrt(core)`; `core == 1` means `r` is a rational square.
fn split_sqrt(r: &Rat) -> (Rat, BigInt) {
    let (p, q) = (r.numer(), r.denom());
    let (s, core) = squarefree_split(&(p * q));
    (Rat::new(s, q.clone()), core)
}

fn quad_eval(e: &Expr, rad: &mut Radicand) -> Result<Quad> {
    let q = |a: Rat| Quad { a, b: Rat::zero() };
    let n = |rad: &Radicand| rad.0.clone().map_or_else(Rat::zero, Rat::from_integer);
    Ok(match e {
        Expr::Num(v) => q(Rat::from_integer(v.clone())),
        Expr::Var(name, pos) => {
            return Err(Error::Parse {
                pos: *pos,
                msg: format!("unexpected variable {name:?} in a number"),
            })
        }
        Expr::Call(name, arg, pos) => {
            if name != "sqrt" {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: format!("unknown function {name:?}"),
                });
            }
            let inner = quad_eval(arg, rad)?;
            if !inner.b.is_zero() {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "nested square roots are not supported".into(),
                });
            }
            if inner.a.is_zero() {
                return Ok(q(Rat::zero()));
            }
            let (coef, core) = split_sqrt(&inner.a);
            if core.is_one() {
                q(coef)
            } else {
                match &rad.0 {
                    Some(m) if *m != core => {
                        return Err(Error::Parse {
                            pos: *pos,
                            msg: format!("mixed radicands sqrt({m}) and sqrt({core}) are not supported"),
                        })
                    }
                    _ => {
                        rad.0 = Some(core);
                        Quad { a: Rat::zero(), b: coef }
                    }
                }
            }
        }
        Expr::Neg(x) => {
            let v = quad_eval(x, rad)?;
            Quad { a: -v.a, b: -v.b }
        }
        Expr::Pow(x, k) => {
            let v = quad_eval(x, rad)?;
            let n = n(rad);
            let mut acc = q(Rat::one());
            for _ in 0..*k {
                acc = Quad {
                    a: &acc.a * &v.a + &acc.b * &v.b * &n,
                    b: &acc.a * &v.b + &acc.b * &v.a,
                };
            }
            acc
        }
        Expr::Bin(op, x, y, pos) => {
            let u = quad_eval(x, rad)?;
            let v = quad_eval(y, rad)?;
            let n = n(rad);
            match op {
                '+' => Quad { a: u.a + v.a, b: u.b + v.b },
                '-' => Quad { a: u.a - v.a, b: u.b - v.b },
                '*' => Quad {
                    a: &u.a * &v.a + &u.b * &v.b * &n,
                    b: &u.a * &v.b + &u.b * &v.a,
                },
                '/' => {
                    let norm = &v.a * &v.a - &v.b * &v.b * &n;
                    if norm.is_zero() {
                        return Err(Error::Parse {
                            pos: *pos,
                            msg: "division by zero".into(),
                        });
                    }
                    Quad {
                        a: (&u.a * &v.a - &u.b * &v.b * &n) / &norm,
                        b: (&u.b * &v.a - &u.a * &v.b) / &norm,
                    }
                }
                _ => unreachable!(),
            }
        }
    })
}

fn quad_to_field(v: Quad, rad: &Radicand) -> Result<FieldElt> {
    if v.b.is_zero() {
        return Ok(FieldElt::rational(v.a));
    }
    let n = Rat::from_integer(rad.0.clone().expect("irrational value has a radicand"));
    // Q(sqrt(n)) = Q[u]/(u^2 - n)
    let u = FieldElt::generator(&Poly::new(vec![-n, Rat::zero(), Rat::one()]))?;
    Ok(FieldElt::in_field_of(&u, Poly::new(vec![v.a, v.b])))
}

/// Parses several algebraic numbers `a + b*sqrt(n)` that share one radicand.
/// Irrational results live in `Q[u]/(u^2 - n)` with `n` a square-free integer.
pub fn parse_algebraic_many(texts: &[&str]) -> Result<Vec<FieldElt>> {
    let mut rad = Radicand::default();
    let vals = texts
        .iter()
        .map(|t| quad_eval(&parse_expr(t)?, &mut rad))
        .collect::<Result<Vec<_>>>()?;
    vals.into_iter().map(|v| quad_to_field(v, &rad)).collect()
}

/// Parses one algebraic number, see [`parse_algebraic_many`].
pub fn parse_algebraic(text: &str) -> Result<FieldElt> {
    Ok(parse_algebraic_many(&[text])?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn parses_forms() {
        let f = parse_form("-s*t + t^2", None).unwrap();
        assert_eq!(f, BinaryForm::from_ints(&[0, -1, 1]));
        let f = parse_form("2*s^2 - 8*s*t + 5*t^2", None).unwrap();
        assert_eq!(f, BinaryForm::from_ints(&[2, -8, 5]));
        assert!(parse_form("s + t^2", None).is_err());
    }

    #[test]
    fn rational_literals_and_parentheses() {
        let m = parse_polynomial("(x - 1/2)^2", &["x"]).unwrap();
        assert_eq!(m[&vec![0]], rat(1, 4));
        assert_eq!(m[&vec![1]], rat(-1, 1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_polynomial("x0 + * y0", &["x0", "y0"]) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_polynomial("x0 / y0", &["x0", "y0"]),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn algebraic_numbers_get_minimal_polynomials() {
        let z = parse_algebraic("4/5 + sqrt(24)/10").unwrap();
        assert_eq!(z.modulus().unwrap().coeffs(), &[rat(-6, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(z.value().coeffs(), &[rat(4, 5), rat(1, 5)]);
        let w = parse_algebraic("(4/5 + sqrt(6)/5)^2").unwrap();
        // 5z^2 - 8z + 2 = 0
        let five = FieldElt::rational(rat(5, 1));
        let zero = five * w - FieldElt::rational(rat(8, 1)) * z + FieldElt::rational(rat(2, 1));
        assert!(zero.is_zero());
        assert!(parse_algebraic_many(&["sqrt(2)", "sqrt(3)"]).is_err());
        assert_eq!(parse_algebraic_many(&["sqrt(8)", "sqrt(1/2)"]).unwrap()[1].value().coeffs(), &[rat(0, 1), rat(1, 2)]);
        assert_eq!(parse_algebraic("sqrt(4)/2 + 1").unwrap().as_rational(), Some(rat(2, 1)));
    }
}
