mod common;

use biweier::bipoly::{det_laplace, det_laplace_along, BiDegree, BiPoly, Line, Var};
use biweier::curvemodel::RationalCurve;
use biweier::exactalg::BinaryForm;
use common::{bipoly, form, P61};
use proptest::prelude::*;

const VARS: [Var; 4] = [Var::X0, Var::X1, Var::Y0, Var::Y1];

fn bidegree() -> impl Strategy<Value = BiDegree> {
    prop::sample::select(vec![BiDegree::new(2, 2), BiDegree::new(3, 2), BiDegree::new(3, 3), BiDegree::new(4, 4)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_identities_vanish(f in bidegree().prop_flat_map(bipoly)) {
        for id in 1..=13 {
            prop_assert!(f.euler_defect(id).unwrap().is_zero(), "identity {}", id);
        }
    }

    #[test]
    fn mixed_partials_commute(f in bipoly(BiDegree::new(3, 3)), u in 0usize..4, v in 0usize..4) {
        prop_assert_eq!(f.partials(&[VARS[u], VARS[v]]), f.partials(&[VARS[v], VARS[u]]));
    }

    #[test]
    fn pullback_is_multiplicative(g in bipoly(BiDegree::new(1, 2)), h in bipoly(BiDegree::new(2, 1))) {
        let c = RationalCurve::parse(P61).unwrap();
        let gh: BiPoly = &g * &h;
        prop_assert_eq!(c.pullback(&gh), &c.pullback(&g) * &c.pullback(&h));
    }

    #[test]
    fn laplace_along_any_line(entries in prop::collection::vec(form(2), 16), k in 0usize..4) {
        let m: Vec<Vec<BinaryForm>> = entries.chunks(4).map(|r| r.to_vec()).collect();
        // forms of unequal degree cannot be added; equalize by padding with t
        let m: Vec<Vec<BinaryForm>> = m
            .iter()
            .map(|r| r.iter().map(|f| if f.is_zero() { BinaryForm::zero() } else { &f.clone() * &BinaryForm::t().pow((2 - f.degree()) as u32) }).collect())
            .collect();
        let d = det_laplace(&m).unwrap();
        prop_assert_eq!(det_laplace_along(&m, Line::Row(k)).unwrap(), d.clone());
        prop_assert_eq!(det_laplace_along(&m, Line::Col(k)).unwrap(), d);
    }
}
