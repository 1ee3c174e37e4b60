mod common;

use common::*;
use proptest::prelude::*;
use num_traits::Signed;
use rho_core::scalar::{dot, int};
use rho_core::{QModule, Rational, Scalar, WeightModule};

fn module(n: usize, slice: bool, weights: &[(Vec<i64>, u64)]) -> QModule {
    WeightModule::new(space(n, slice), "V", weights.iter().map(|(w, m)| (form(w), *m)).collect::<Vec<_>>()).unwrap()
}

fn weights(n: usize) -> impl Strategy<Value = Vec<(Vec<i64>, u64)>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, n), 1u64..=3), 0..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_preserves_values(f in pl_function(), raw in prop::collection::vec(-4i64..=4, 4)) {
        let y = point_on(f.space(), &raw);
        let c = f.canonical();
        prop_assert_eq!(f.evaluate(&y).unwrap(), c.evaluate(&y).unwrap());
        prop_assert!(c.equals(&f));
        prop_assert_eq!(c.canonical(), c);
    }

    #[test]
    fn sums_and_scalings_are_pointwise(
        f in pl_function(),
        s in -3i64..=3,
        raw in prop::collection::vec(-4i64..=4, 4),
    ) {
        let y = point_on(f.space(), &raw);
        let v = f.evaluate(&y).unwrap();
        let g = f.scale(&q(s));
        prop_assert_eq!(g.evaluate(&y).unwrap(), v.clone() * q(s));
        let h = f.add(&g).unwrap();
        prop_assert_eq!(h.evaluate(&y).unwrap(), v * q(1 + s));
        prop_assert!(f.sub(&f).unwrap().equals(&rho_core::PLFunction::zero(f.space().clone())));
    }

    #[test]
    fn positive_homogeneity(f in pl_function(), t in 1i64..=5, raw in prop::collection::vec(-4i64..=4, 4)) {
        let y = point_on(f.space(), &raw);
        let ty: Vec<Rational> = y.iter().map(|x| x.clone() * q(t)).collect();
        prop_assert_eq!(f.evaluate(&ty).unwrap(), f.evaluate(&y).unwrap() * q(t));
    }

    #[test]
    fn rho_is_half_the_weighted_absolute_sum(
        (n, ws) in (1usize..=4).prop_flat_map(|n| (Just(n), weights(n))),
        raw in prop::collection::vec(-4i64..=4, 4),
    ) {
        let v = module(n, false, &ws);
        let y = point_on(v.space(), &raw);
        let mut direct = Rational::from_frac(0, 1);
        for (w, m) in &ws {
            direct = direct + dot(&qs(w), &y).abs() * Rational::from_frac(*m as i64, 2);
        }
        prop_assert_eq!(v.rho_function().evaluate(&y).unwrap(), direct);
        // rho_V = rho_V^+ - Tr/2, with Tr the trace form
        let tr = v.trace_form().eval(&y).unwrap();
        prop_assert_eq!(v.rho_function().evaluate(&y).unwrap(), v.rho_plus(&y).unwrap() - tr / int::<Rational>(2));
    }

    #[test]
    fn volume_preserving_rho_is_rho_plus(
        (n, ws) in (1usize..=4).prop_flat_map(|n| (Just(n), weights(n))),
        raw in prop::collection::vec(-4i64..=4, 4),
    ) {
        let v = module(n, false, &ws);
        let balanced = v.direct_sum(&v.dual()).unwrap();
        let y = point_on(v.space(), &raw);
        prop_assert!(balanced.trace_form().is_zero());
        prop_assert_eq!(balanced.rho_function().evaluate(&y).unwrap(), balanced.rho_plus(&y).unwrap());
    }

    #[test]
    fn module_algebra(
        (n, a, b) in (1usize..=3).prop_flat_map(|n| (Just(n), weights(n), weights(n))),
        raw in prop::collection::vec(-4i64..=4, 4),
    ) {
        let va = module(n, false, &a);
        let vb = module(n, false, &b);
        let t = va.tensor(&vb).unwrap();
        prop_assert_eq!(t.total_dim(), va.total_dim() * vb.total_dim());
        let sq = va.tensor(&va).unwrap();
        let split = va.symmetric_square().unwrap().direct_sum(&va.exterior_square().unwrap()).unwrap();
        prop_assert!(sq.same_weights(&split));
        // rho is additive under direct sums
        let y = point_on(va.space(), &raw);
        let s = va.direct_sum(&vb).unwrap();
        prop_assert_eq!(
            s.rho_function().evaluate(&y).unwrap(),
            va.rho_function().evaluate(&y).unwrap() + vb.rho_function().evaluate(&y).unwrap()
        );
        prop_assert!(s.difference(&vb).unwrap().same_weights(&va));
    }

    #[test]
    fn signed_permutations_act_on_values(f in pl_function(), raw in prop::collection::vec(-4i64..=4, 4), flip in any::<bool>()) {
        // only on the full space, where every signed permutation is allowed
        prop_assume!(f.space().constraints().is_empty());
        let n = f.space().ambient_dim();
        let perm: Vec<usize> = (0..n).rev().collect();
        let signs: Vec<i8> = (0..n).map(|i| if flip && i == 0 { -1 } else { 1 }).collect();
        let g = f.compose_signed_permutation(&perm, &signs);
        let y = qs(&raw[..n]);
        let gy: Vec<Rational> = (0..n).map(|i| y[perm[i]].clone() * q(signs[i] as i64)).collect();
        let v = g.evaluate(&y).unwrap();
        prop_assert_eq!(v, f.evaluate(&gy).unwrap());
    }
}
