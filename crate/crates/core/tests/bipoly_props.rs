mod common;

use planar_core::gf::FieldCtx;
use proptest::prelude::*;

type Terms = Vec<(u32, u32, u64)>;

fn terms(max_deg: u32, max_len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, 0u64..625), 0..=max_len)
}

fn field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(vec![(3u64, 1usize), (3, 2), (5, 2), (3, 4)])
        .prop_map(|(p, s)| FieldCtx::new(p, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn taylor_shift_round_trips(ctx in field(), t in terms(6, 8), a in 0u64..625, b in 0u64..625) {
        let f = common::poly(&ctx, &t);
        let q = ctx.order();
        prop_assert_eq!(common::taylor_round_trip(&f, ctx.from_index(a % q), ctx.from_index(b % q)), Ok(()));
    }

    #[test]
    fn components_reconstruct(ctx in field(), t in terms(8, 10)) {
        prop_assert_eq!(common::components_reconstruct(&common::poly(&ctx, &t)), Ok(()));
    }

    #[test]
    fn sigma_is_an_automorphism_of_order_s(ctx in field(), t in terms(5, 6), u in terms(5, 6)) {
        let (f, g) = (common::poly(&ctx, &t), common::poly(&ctx, &u));
        prop_assert_eq!(common::sigma_has_order_dividing_s(&f), Ok(()));
        prop_assert_eq!(common::sigma_is_ring_hom(&f, &g), Ok(()));
    }

    #[test]
    fn homogenize_then_dehomogenize(ctx in field(), t in terms(7, 8)) {
        prop_assert_eq!(common::homogenize_round_trip(&common::poly(&ctx, &t)), Ok(()));
    }

    #[test]
    fn exact_division_reconstructs(ctx in field(), t in terms(4, 6), u in terms(3, 4)) {
        let (a, b) = (common::poly(&ctx, &t), common::poly(&ctx, &u));
        prop_assert_eq!(common::exact_div_reconstructs(&a, &b), Ok(()));
    }

    #[test]
    fn ring_laws_on_polynomials(ctx in field(), t in terms(4, 5), u in terms(4, 5), v in terms(4, 5)) {
        let (a, b, c) = (common::poly(&ctx, &t), common::poly(&ctx, &u), common::poly(&ctx, &v));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }
}
