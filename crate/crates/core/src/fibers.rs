//! The (1,0) and (0,1) linear systems on an implicit curve.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bipoly::{BiDegree, BiPoly, Point, Var};
use crate::curvemodel::{FiberDirection, ImplicitCurve};
use crate::error::{Error, Result};
use crate::exactalg::FieldElt;

/// The fiber through `p`: `a1*x0 - a0*x1` for `X`, `b1*y0 - b0*y1` for `Y`.
pub fn osculating_fiber(p: &Point, dir: FiberDirection) -> BiPoly<FieldElt> {
    let (pair, v0, v1) = match dir {
        FiberDirection::X => (&p.x, Var::X0, Var::X1),
        FiberDirection::Y => (&p.y, Var::Y0, Var::Y1),
    };
    &BiPoly::var(v0).scale(&pair[1]) - &BiPoly::var(v1).scale(&pair[0])
}

/// `F_x0(p) x0 + F_x1(p) x1` (or the `y` analogue); zero at singular points.
pub fn gradient_fiber(c: &ImplicitCurve, p: &Point, dir: FiberDirection) -> BiPoly<FieldElt> {
    let (v0, v1) = match dir {
        FiberDirection::X => (Var::X0, Var::X1),
        FiberDirection::Y => (Var::Y0, Var::Y1),
    };
    let g0 = c.f().partial(v0).evaluate(p);
    let g1 = c.f().partial(v1).evaluate(p);
    &BiPoly::var(v0).scale(&g0) + &BiPoly::var(v1).scale(&g1)
}

fn require_on_curve(c: &ImplicitCurve, p: &Point) -> Result<()> {
    if c.contains(p) {
        Ok(())
    } else {
        Err(Error::NotOnCurve)
    }
}

/// Whether `p` is a Weierstrass point of the fiber system in direction `dir`:
/// for `X`, `F_y0(p) = F_y1(p) = 0`; for `Y`, `F_x0(p) = F_x1(p) = 0`.
pub fn is_fiber_weierstrass(c: &ImplicitCurve, p: &Point, dir: FiberDirection) -> Result<bool> {
    require_on_curve(c, p)?;
    let vars = match dir {
        FiberDirection::X => [Var::Y0, Var::Y1],
        FiberDirection::Y => [Var::X0, Var::X1],
    };
    Ok(vars.iter().all(|&v| c.f().partial(v).evaluate(p).is_zero()))
}

/// Same predicate through the vanishing of the Hessian covariant at `p`.
pub fn is_fiber_weierstrass_by_hessian(c: &ImplicitCurve, p: &Point, dir: FiberDirection) -> Result<bool> {
    require_on_curve(c, p)?;
    Ok(hessian(c, dir)?.evaluate(p).is_zero())
}

/// The Hessian covariant of the fiber system: `F_y0y0 F_y1y1 - F_y0y1^2`
/// for `X` (bidegree `(2a, 2b-4)`) and the `x` analogue for `Y`.
pub fn hessian(c: &ImplicitCurve, dir: FiberDirection) -> Result<BiPoly> {
    let d = c.bidegree();
    let (v0, v1, deg, name) = match dir {
        FiberDirection::X => (Var::Y0, Var::Y1, d.b, "b"),
        FiberDirection::Y => (Var::X0, Var::X1, d.a, "a"),
    };
    if deg < 2 {
        return Err(Error::HessianUndefined(format!("{name} = {deg} < 2 for type {d}")));
    }
    let f = c.f();
    let f00 = f.partials(&[v0, v0]);
    let f11 = f.partials(&[v1, v1]);
    let f01 = f.partials(&[v0, v1]);
    Ok(&(&f00 * &f11) - &(&f01 * &f01))
}

/// `F_x0y0 F_x1y1 - F_x0y1 F_x1y0`, bidegree `(2a-2, 2b-2)`; requires `a, b >= 2`.
pub fn mixed_hessian(c: &ImplicitCurve) -> Result<BiPoly> {
    let d = c.bidegree();
    if d.a < 2 || d.b < 2 {
        return Err(Error::HessianUndefined(format!(
            "the mixed Hessian needs a, b >= 2, got type {d}"
        )));
    }
    let f = c.f();
    let p = |x: Var, y: Var| f.partials(&[x, y]);
    Ok(&(&p(Var::X0, Var::Y0) * &p(Var::X1, Var::Y1)) - &(&p(Var::X0, Var::Y1) * &p(Var::X1, Var::Y0)))
}

/// Input of the fiber counting formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountInput {
    pub bidegree: BiDegree,
    pub genus: i64,
    /// Contact `l` of each branch of each singular point with the fiber of
    /// the counted direction.
    pub branch_l_values: Vec<u32>,
}

/// Number of smooth fiber Weierstrass points counted with weight:
/// `2(b+g-1) - Σ(l-1)` for `X`, `2(a+g-1) - Σ(l-1)` for `Y`.
pub fn count_fiber_weierstrass(input: &CountInput, dir: FiberDirection) -> Result<i64> {
    if input.genus < 0 {
        return Err(Error::Inconsistent("negative genus".into()));
    }
    let deg = match dir {
        FiberDirection::X => input.bidegree.b,
        FiberDirection::Y => input.bidegree.a,
    } as i64;
    let sum: i64 = input.branch_l_values.iter().map(|&l| l as i64 - 1).sum();
    let w = 2 * (deg + input.genus - 1) - sum;
    if w < 0 {
        return Err(Error::Inconsistent(format!("inconsistent branch data: count {w} < 0")));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_bipoly;

    fn ex61() -> ImplicitCurve {
        ImplicitCurve::parse(
            "x0^3*y1^2 + 3*x0*x1^2*y0*y1 - x1^3*y0^2 + x1^3*y0*y1",
            BiDegree::new(3, 2),
        )
        .unwrap()
    }

    fn ex63() -> ImplicitCurve {
        ImplicitCurve::parse("x0^2*y1^3 - x1^2*y0^3", BiDegree::new(2, 3)).unwrap()
    }

    fn same_up_to_scalar(f: &BiPoly<FieldElt>, g: &BiPoly<FieldElt>) -> bool {
        let keys: Vec<_> = f.terms().keys().chain(g.terms().keys()).collect();
        let (e0, _) = f.terms().iter().next().expect("nonzero");
        keys.iter().all(|e| {
            (f.coeff(e) * g.coeff(e0) - g.coeff(e) * f.coeff(e0)).is_zero()
        })
    }

    #[test]
    fn fibers_through_points() {
        let p = Point::from_ints([1, 0, 1, 0]);
        assert_eq!(osculating_fiber(&p, FiberDirection::X).to_string(), "-x1");
        let q = Point::from_ints([0, 1, 0, 1]);
        assert_eq!(osculating_fiber(&q, FiberDirection::Y).to_string(), "y0");
        let r = Point::from_ints([-1, 4, 1, 8]);
        let want = parse_bipoly("4*x0 + x1", BiDegree::new(1, 0)).unwrap().to_field();
        assert!(same_up_to_scalar(&osculating_fiber(&r, FiberDirection::X), &want));
        assert!(same_up_to_scalar(&gradient_fiber(&ex61(), &r, FiberDirection::X), &want));
    }

    #[test]
    fn weierstrass_predicates() {
        let c = ex61();
        assert!(is_fiber_weierstrass(&c, &Point::from_ints([0, 1, 0, 1]), FiberDirection::Y).unwrap());
        assert!(is_fiber_weierstrass(&c, &Point::from_ints([-1, 1, -1, 1]), FiberDirection::X).unwrap());
        assert!(!is_fiber_weierstrass(&c, &Point::from_ints([-1, 4, 1, 8]), FiberDirection::Y).unwrap());
        assert!(is_fiber_weierstrass(&c, &Point::from_ints([-1, 4, 1, 8]), FiberDirection::X).unwrap());
        assert!(matches!(
            is_fiber_weierstrass(&c, &Point::from_ints([1, 1, 1, 1]), FiberDirection::X),
            Err(Error::NotOnCurve)
        ));
    }

    #[test]
    fn hessians_of_examples() {
        let h = hessian(&ex61(), FiberDirection::X).unwrap();
        let want = parse_bipoly(
            "-4*x0^3*x1^3 - 9*x0^2*x1^4 - 6*x0*x1^5 - x1^6",
            BiDegree::new(6, 0),
        )
        .unwrap();
        assert_eq!(h, want);
        let h = hessian(&ex63(), FiberDirection::Y).unwrap();
        assert_eq!(h, parse_bipoly("-4*y0^3*y1^3", BiDegree::new(0, 6)).unwrap());
        let m = mixed_hessian(&ex63()).unwrap();
        assert_eq!(m, parse_bipoly("36*x0*x1*y0^2*y1^2", BiDegree::new(2, 4)).unwrap());
        let line = ImplicitCurve::parse("x0*y1 - x1*y0", BiDegree::new(1, 1)).unwrap();
        assert!(matches!(hessian(&line, FiberDirection::X), Err(Error::HessianUndefined(_))));
        assert!(matches!(mixed_hessian(&line), Err(Error::HessianUndefined(_))));
    }

    #[test]
    fn mixed_hessian_on_example() {
        let c = ex61();
        let m = mixed_hessian(&c).unwrap();
        assert!(m.evaluate(&Point::from_ints([-1, 4, 1, 8])).is_zero());
        assert!(!m.evaluate(&Point::from_ints([2, 1, 8, 1])).is_zero());
    }

    #[test]
    fn counting() {
        let x = CountInput {
            bidegree: BiDegree::new(3, 2),
            genus: 0,
            branch_l_values: vec![2],
        };
        assert_eq!(count_fiber_weierstrass(&x, FiberDirection::X).unwrap(), 1);
        let y = CountInput {
            branch_l_values: vec![3],
            ..x.clone()
        };
        assert_eq!(count_fiber_weierstrass(&y, FiberDirection::Y).unwrap(), 2);
        let smooth = CountInput {
            bidegree: BiDegree::new(2, 2),
            genus: 1,
            branch_l_values: vec![],
        };
        assert_eq!(count_fiber_weierstrass(&smooth, FiberDirection::X).unwrap(), 4);
        let bad = CountInput {
            branch_l_values: vec![9],
            ..x
        };
        assert!(count_fiber_weierstrass(&bad, FiberDirection::X).is_err());
    }
}
