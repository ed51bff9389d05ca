mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ie_root((s, gens, e) in shape(2).prop_flat_map(|s| (Just(s.clone()), vectors(&s, 3), 1..=2u32))) {
        let r = s.ring();
        root_property(&module(&r, s.rank, &gens), e).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn ie_additive((s, a, b, e) in shape(2).prop_flat_map(|s| (Just(s.clone()), vectors(&s, 2), vectors(&s, 2), 1..=2u32))) {
        let r = s.ring();
        additivity(&module(&r, s.rank, &a), &module(&r, s.rank, &b), e).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn ie_round_trip((s, gens, e) in shape(2).prop_flat_map(|s| (Just(s.clone()), vectors(&s, 3), 1..=2u32))) {
        let r = s.ring();
        round_trip(&module(&r, s.rank, &gens), e).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn star_closure((s, u, v, extra) in shape(2).prop_flat_map(|s| (Just(s.clone()), square(&s), vectors(&s, 2), vectors(&s, 1)))) {
        let r = s.ring();
        star_closure_laws(&frob(&r, &u), &module(&r, s.rank, &v), &module(&r, s.rank, &extra)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn nilpotent_kernel((s, u) in shape(2).prop_flat_map(|s| (Just(s.clone()), square(&s)))) {
        let r = s.ring();
        kernel_fixed_point(&frob(&r, &u)).map_err(TestCaseError::fail)?;
    }
}
