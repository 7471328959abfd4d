//! Validated curve objects: implicit curves `V(F)`, rational parametrized
//! curves `Φ = (φ0:φ1; ψ0:ψ1)`, the genus formula and user-supplied
//! singularity data.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bipoly::{parse_form, BiDegree, BiPoly, Point, Var};
use crate::error::{Error, Result};
use crate::exactalg::{gcd_forms, rat, BinaryForm, FieldElt, Poly, Rat};

/// A reduced curve `V(F)` of type `(a,b)`.
#[derive(Clone, Debug)]
pub struct ImplicitCurve {
    f: BiPoly,
}

/// Restriction `F(x0, 1, y0, y1)` style helper: substitutes rational values for
/// all variables but one and returns the univariate result.
fn specialize(f: &BiPoly, free: Var, vals: &[Rat; 4]) -> Poly<Rat> {
    let k = free.index();
    let mut acc: Vec<Rat> = Vec::new();
    for (e, c) in f.terms() {
        let mut v = c.clone();
        for (i, val) in vals.iter().enumerate() {
            if i != k {
                for _ in 0..e[i] {
                    v *= val;
                }
            }
        }
        let d = e[k] as usize;
        if acc.len() <= d {
            acc.resize(d + 1, Rat::zero());
        }
        acc[d] += v;
    }
    Poly::new(acc)
}

impl ImplicitCurve {
    /// Validates `F`: nonzero, positive bidegree and square-free.
    ///
    /// Square-freeness is tested on restrictions to lines: a repeated factor
    /// `G^2` makes every restriction to a line `y0 = c*y1` (or `x0 = c*x1`)
    /// share a root with its derivative. Several lines are tried so that a
    /// square-free curve is never rejected by accident.
    pub fn new(f: BiPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroForm("curve"));
        }
        let d = f.bidegree();
        if d.a + d.b == 0 {
            return Err(Error::Invalid("curve must have positive bidegree".into()));
        }
        if !Self::looks_squarefree(&f) {
            return Err(Error::NonReduced("F has a repeated factor".into()));
        }
        Ok(ImplicitCurve { f })
    }

    fn looks_squarefree(f: &BiPoly) -> bool {
        let d = f.bidegree();
        // a factor of bidegree (0,k) or (k,0) repeated shows up as a content of
        // the restrictions in the other grading; test both families of lines
        let checks: [(Var, u32); 2] = [(Var::X0, d.a), (Var::Y0, d.b)];
        for (free, deg) in checks {
            if deg == 0 {
                continue;
            }
            // the repeated factor may be a pure x1 (or y1) power: check the
            // multiplicity of x1 across all terms first
            let other = if free == Var::X0 { 1 } else { 3 };
            let min_other = f.terms().keys().map(|e| e[other]).min().unwrap_or(0);
            if min_other >= 2 {
                return false;
            }
            let mut all_bad = true;
            for c in 1..=40i64 {
                let (cx, cy) = (rat(c, 1), rat(2 * c + 1, 3));
                // set the other grading's affine coordinate to a rational constant
                let vals = if free == Var::X0 {
                    [Rat::zero(), rat(1, 1), cy.clone(), rat(1, 1)]
                } else {
                    [cx.clone(), rat(1, 1), Rat::zero(), rat(1, 1)]
                };
                let p = specialize(f, free, &vals);
                if p.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let g = p.gcd(&p.derivative());
                if g.degree() == Some(0) {
                    all_bad = false;
                    break;
                }
            }
            if all_bad {
                return false;
            }
        }
        true
    }

    pub fn parse(text: &str, deg: BiDegree) -> Result<Self> {
        Self::new(BiPoly::parse(text, deg)?)
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn bidegree(&self) -> BiDegree {
        self.f.bidegree()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.f.evaluate(p).is_zero()
    }

    /// `F_v(p)` for each variable.
    pub fn gradient_at(&self, p: &Point) -> [FieldElt; 4] {
        Var::ALL.map(|v| self.f.partial(v).evaluate(p))
    }

    pub fn is_singular_at(&self, p: &Point) -> bool {
        self.contains(p) && self.gradient_at(p).iter().all(|g| g.is_zero())
    }
}

/// A rational curve `(φ0:φ1; ψ0:ψ1)` with `deg φ = b` and `deg ψ = a`; its
/// image has type `(a,b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurve {
    comps: [BinaryForm; 4],
    deg: BiDegree,
}

impl RationalCurve {
    pub fn new(phi0: BinaryForm, phi1: BinaryForm, psi0: BinaryForm, psi1: BinaryForm) -> Result<Self> {
        let b = phi0.degree().max(phi1.degree());
        let a = psi0.degree().max(psi1.degree());
        for (name, f, d) in [("phi0", &phi0, b), ("phi1", &phi1, b), ("psi0", &psi0, a), ("psi1", &psi1, a)] {
            if !f.is_zero() && f.degree() != d {
                return Err(Error::DegreeMismatch(format!(
                    "{name} has degree {}, expected {d}",
                    f.degree()
                )));
            }
        }
        if phi0.is_zero() && phi1.is_zero() || psi0.is_zero() && psi1.is_zero() {
            return Err(Error::Invalid("a component pair of the parametrization is zero".into()));
        }
        if gcd_forms(&phi0, &phi1)?.degree() > 0 {
            return Err(Error::NonReduced("non-reduced x-map: phi0 and phi1 share a factor".into()));
        }
        if gcd_forms(&psi0, &psi1)?.degree() > 0 {
            return Err(Error::NonReduced("non-reduced y-map: psi0 and psi1 share a factor".into()));
        }
        if a + b == 0 {
            return Err(Error::Invalid("the parametrization is constant".into()));
        }
        // zero forms are stored at degree 0; lift them to the common degree
        let lift = |f: BinaryForm, d: usize| if f.is_zero() { BinaryForm::new(vec![Rat::zero(); d + 1]) } else { f };
        Ok(RationalCurve {
            comps: [lift(phi0, b), lift(phi1, b), lift(psi0, a), lift(psi1, a)],
            deg: BiDegree::new(a as u32, b as u32),
        })
    }

    /// Parses `"phi0; phi1; psi0; psi1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected four forms separated by ';', found {}", parts.len()),
            });
        }
        let f: Vec<BinaryForm> = parts.iter().map(|p| parse_form(p, None)).collect::<Result<_>>()?;
        let [a, b, c, d]: [BinaryForm; 4] = f.try_into().expect("four");
        Self::new(a, b, c, d)
    }

    pub fn comps(&self) -> [&BinaryForm; 4] {
        [&self.comps[0], &self.comps[1], &self.comps[2], &self.comps[3]]
    }

    pub fn phi(&self) -> [&BinaryForm; 2] {
        [&self.comps[0], &self.comps[1]]
    }

    pub fn psi(&self) -> [&BinaryForm; 2] {
        [&self.comps[2], &self.comps[3]]
    }

    /// Type `(a,b)` of the image curve.
    pub fn bidegree(&self) -> BiDegree {
        self.deg
    }

    pub fn pullback(&self, g: &BiPoly) -> BinaryForm {
        g.pullback(self.comps())
    }

    /// `Φ(s0,t0)`.
    pub fn point_at(&self, s0: &FieldElt, t0: &FieldElt) -> Result<Point> {
        let [a, b, c, d] = self.comps.clone().map(|f| f.eval(s0, t0));
        Point::new(a, b, c, d)
    }

    /// Local expansions of the four components at `(s0:t0)`.
    pub fn series_at(&self, s0: &FieldElt, t0: &FieldElt) -> [Poly<FieldElt>; 4] {
        self.comps
            .clone()
            .map(|f| crate::exactalg::series_at(&f, s0, t0))
    }

    /// Checks that `F` vanishes identically along the parametrization.
    pub fn satisfies(&self, f: &BiPoly) -> bool {
        self.pullback(f).is_zero()
    }
}

/// Output of the genus formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusResult {
    pub genus: i64,
}

/// `g = (a-1)(b-1) - Σδ`.
pub fn genus(deg: BiDegree, total_delta: u64) -> Result<GenusResult> {
    let pa = (deg.a as i64 - 1) * (deg.b as i64 - 1);
    let g = pa.max(0) - total_delta as i64;
    if g < 0 {
        return Err(Error::Inconsistent(format!(
            "inconsistent singularity data: total delta {total_delta} exceeds the arithmetic genus {pa}"
        )));
    }
    Ok(GenusResult { genus: g })
}

/// Total delta invariant of a rational curve: its arithmetic genus.
pub fn total_delta_rational(c: &RationalCurve) -> u64 {
    let d = c.bidegree();
    ((d.a as i64 - 1) * (d.b as i64 - 1)).max(0) as u64
}

/// Direction of a tangent fiber at a branch: `X` is a fiber `a1x0 - a0x1`
/// (type (1,0)), `Y` a fiber of type (0,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberDirection {
    X,
    Y,
}

/// Invariants of one branch at a singular point, as supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchInput {
    pub m: u32,
    #[serde(default)]
    pub tangent_fiber: Option<FiberDirection>,
    pub l: u32,
    #[serde(default)]
    pub c: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointInput {
    /// `[a0, a1, b0, b1]` as rational strings.
    pub point: [String; 4],
    pub delta: u32,
    pub branches: Vec<BranchInput>,
}

/// Singularity data for an implicit curve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityInput {
    pub points: Vec<SingularPointInput>,
}

impl BranchInput {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.l == 0 {
            return Err(Error::Invalid("branch multiplicity and l must be positive".into()));
        }
        if self.tangent_fiber.is_some() && self.l <= self.m {
            return Err(Error::Invalid(format!(
                "a branch with a tangent fiber needs l > m (m={}, l={})",
                self.m, self.l
            )));
        }
        if self.tangent_fiber.is_none() {
            if let Some(c) = self.c {
                if c <= self.m {
                    return Err(Error::Invalid(format!("c must exceed m (m={}, c={c})", self.m)));
                }
            } else if self.l == 2 * self.m {
                return Err(Error::Invalid(
                    "c is required when there is no tangent fiber and l = 2m".into(),
                ));
            }
        }
        Ok(())
    }

    /// `c`, defaulting to `l` when `l != 2m`.
    pub fn c_value(&self) -> u32 {
        self.c.unwrap_or(self.l)
    }
}

impl SingularityInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: SingularityInput = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for p in &self.points {
            if p.branches.is_empty() {
                return Err(Error::Invalid("a singular point needs at least one branch".into()));
            }
            for b in &p.branches {
                b.validate()?;
            }
            self.parse_point(p)?;
        }
        Ok(())
    }

    pub fn parse_point(&self, p: &SingularPointInput) -> Result<Point> {
        let c: Vec<Rat> = p
            .point
            .iter()
            .map(|s| crate::exactalg::parse_rat(s))
            .collect::<Result<_>>()?;
        Point::rational(c.try_into().expect("four"))
    }

    pub fn total_delta(&self) -> u64 {
        self.points.iter().map(|p| p.delta as u64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F61: &str = "x0^3*y1^2 + 3*x0*x1^2*y0*y1 - x1^3*y0^2 + x1^3*y0*y1";

    #[test]
    fn implicit_validation() {
        assert!(ImplicitCurve::parse(F61, BiDegree::new(3, 2)).is_ok());
        assert!(ImplicitCurve::parse("x0^2*y1^3 - x1^2*y0^3", BiDegree::new(2, 3)).is_ok());
        assert!(matches!(
            ImplicitCurve::parse("(x0*y1 - x1*y0)^2", BiDegree::new(2, 2)),
            Err(Error::NonReduced(_))
        ));
        assert!(matches!(
            ImplicitCurve::parse("x1^2*(x0*y1 - x1*y0)", BiDegree::new(3, 1)),
            Err(Error::NonReduced(_))
        ));
        assert!(matches!(
            ImplicitCurve::parse("(x0 - x1)^2*y0", BiDegree::new(2, 1)),
            Err(Error::NonReduced(_))
        ));
        assert!(ImplicitCurve::parse("x0*x1*y0", BiDegree::new(2, 1)).is_ok());
    }

    #[test]
    fn rational_validation() {
        let c = RationalCurve::parse("-s*t + t^2; s^2; t^3; s^3").unwrap();
        assert_eq!(c.bidegree(), BiDegree::new(3, 2));
        assert!(c.satisfies(&BiPoly::parse(F61, BiDegree::new(3, 2)).unwrap()));
        assert_eq!(RationalCurve::parse("s; t; s; t").unwrap().bidegree(), BiDegree::new(1, 1));
        assert!(matches!(RationalCurve::parse("s*t; s*t; s; t"), Err(Error::NonReduced(_))));
        assert!(matches!(RationalCurve::parse("s^2; t; s; t"), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus(BiDegree::new(3, 2), 2).unwrap().genus, 0);
        assert_eq!(genus(BiDegree::new(1, 1), 0).unwrap().genus, 0);
        assert_eq!(genus(BiDegree::new(4, 4), 9).unwrap().genus, 0);
        assert!(matches!(genus(BiDegree::new(2, 2), 2), Err(Error::Inconsistent(_))));
        let c = RationalCurve::parse("-s*t + t^2; s^2; t^3; s^3").unwrap();
        assert_eq!(total_delta_rational(&c), 2);
        let c = RationalCurve::parse("s^3; t^3; s^2; t^2").unwrap();
        assert_eq!(total_delta_rational(&c), 2);
    }

    #[test]
    fn singularity_json() {
        let text = r#"{"points":[{"point":["1","0","1","0"],"delta":1,
            "branches":[{"m":2,"tangent_fiber":"x","l":3,"c":null}]}]}"#;
        let s = SingularityInput::from_json(text).unwrap();
        assert_eq!(s.total_delta(), 1);
        let back: SingularityInput = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        let missing_c = r#"{"points":[{"point":["1","0","1","0"],"delta":1,
            "branches":[{"m":2,"tangent_fiber":null,"l":4,"c":null}]}]}"#;
        assert!(SingularityInput::from_json(missing_c).is_err());
    }
}
