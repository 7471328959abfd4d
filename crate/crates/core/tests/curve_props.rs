mod common;

use biweier::bipoly::BiDegree;
use biweier::curvemodel::{genus, FiberDirection};
use biweier::fibers::{hessian, is_fiber_weierstrass, mixed_hessian};
use common::{example, parameter, point_at};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn genus_without_singularities() {
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            let want = ((a as i64 - 1) * (b as i64 - 1)).max(0);
            assert_eq!(genus(BiDegree::new(a, b), 0).unwrap().genus, want, "type ({a},{b})");
        }
    }
}

#[test]
fn parametrizations_satisfy_their_equations() {
    for k in 0..2 {
        let (c, f) = example(k);
        assert!(c.satisfies(f.f()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn fiber_predicates_match_hessians(k in 0usize..2, (s, t) in parameter()) {
        let (c, f) = example(k);
        let p = point_at(&c, s, t);
        prop_assume!(!f.is_singular_at(&p));
        let mut either = false;
        for dir in [FiberDirection::X, FiberDirection::Y] {
            let wp = is_fiber_weierstrass(&f, &p, dir).unwrap();
            either |= wp;
            prop_assert_eq!(wp, hessian(&f, dir).unwrap().evaluate(&p).is_zero());
        }
        prop_assert_eq!(either, mixed_hessian(&f).unwrap().evaluate(&p).is_zero());
    }
}
