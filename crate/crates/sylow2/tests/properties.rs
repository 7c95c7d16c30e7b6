//! Property tests for the arithmetic core and the depth-shift map.

use proptest::prelude::*;
use sylow2::group::theta;
use sylow2::{Ctx, Mat2};

fn ctxs() -> impl Strategy<Value = Ctx> {
    prop_oneof![
        Just(Ctx::new(3, 2).unwrap()),
        Just(Ctx::new(3, 3).unwrap()),
        Just(Ctx::new(3, 5).unwrap()),
        Just(Ctx::new(5, 2).unwrap()),
        Just(Ctx::new(7, 2).unwrap()),
    ]
}

fn ctx_and_mats(count: usize) -> impl Strategy<Value = (Ctx, Vec<Mat2>)> {
    ctxs().prop_flat_map(move |ctx| {
        let m = ctx.modulus();
        proptest::collection::vec((0..m, 0..m, 0..m, 0..m), count)
            .prop_map(move |entries| {
                let mats = entries
                    .into_iter()
                    .map(|(a, b, c, d)| Mat2::new(a, b, c, d))
                    .collect();
                (ctx, mats)
            })
    })
}

proptest! {
    #[test]
    fn mul_is_associative_with_identity((ctx, mats) in ctx_and_mats(3)) {
        let (x, y, z) = (mats[0], mats[1], mats[2]);
        prop_assert_eq!(
            ctx.mat_mul(ctx.mat_mul(x, y), z),
            ctx.mat_mul(x, ctx.mat_mul(y, z))
        );
        prop_assert_eq!(ctx.mat_mul(Mat2::identity(), x), x);
        prop_assert_eq!(ctx.mat_mul(x, Mat2::identity()), x);
    }

    #[test]
    fn det_is_multiplicative((ctx, mats) in ctx_and_mats(2)) {
        let (x, y) = (mats[0], mats[1]);
        prop_assert_eq!(
            ctx.det(ctx.mat_mul(x, y)),
            ctx.mul(ctx.det(x), ctx.det(y))
        );
    }

    #[test]
    fn inverse_inverts_units((ctx, mats) in ctx_and_mats(1)) {
        let x = mats[0];
        match ctx.mat_inverse(x) {
            Ok(xi) => {
                prop_assert_eq!(ctx.mat_mul(x, xi), Mat2::identity());
                prop_assert_eq!(ctx.mat_mul(xi, x), Mat2::identity());
                prop_assert_eq!(ctx.mat_inverse(xi).unwrap(), x);
            }
            Err(_) => prop_assert_eq!(ctx.det(x) % ctx.p(), 0),
        }
    }

    #[test]
    fn pow_adds_exponents((ctx, mats) in ctx_and_mats(1), a in 0u64..64, b in 0u64..64) {
        let x = mats[0];
        prop_assert_eq!(
            ctx.mat_pow(x, a + b),
            ctx.mat_mul(ctx.mat_pow(x, a), ctx.mat_pow(x, b))
        );
    }

    #[test]
    fn reduction_is_a_homomorphism_and_composes(
        (a, b, c, d) in (0u64..27, 0u64..27, 0u64..27, 0u64..27),
        (e, f, g, h) in (0u64..27, 0u64..27, 0u64..27, 0u64..27),
    ) {
        let c27 = Ctx::new(3, 3).unwrap();
        let c9 = Ctx::new(3, 2).unwrap();
        let c3 = Ctx::new(3, 1).unwrap();
        let x = Mat2::new(a, b, c, d);
        let y = Mat2::new(e, f, g, h);
        prop_assert_eq!(
            c27.reduce_mod(c27.mat_mul(x, y), c9).unwrap(),
            c9.mat_mul(c27.reduce_mod(x, c9).unwrap(), c27.reduce_mod(y, c9).unwrap())
        );
        prop_assert_eq!(c9.det(c27.reduce_mod(x, c9).unwrap()), c27.det(x) % 9);
        // reducing in two hops equals reducing directly
        let two_hops = c9.reduce_mod(c27.reduce_mod(x, c9).unwrap(), c3).unwrap();
        prop_assert_eq!(two_hops, c27.reduce_mod(x, c3).unwrap());
    }

    #[test]
    fn depth_shift_respects_products(
        (xa, xb, xc, xd) in (0u64..3, 0u64..3, 0u64..3, 0u64..3),
        (ya, yb, yc, yd) in (0u64..3, 0u64..3, 0u64..3, 0u64..3),
    ) {
        // elements of the top kernel at p=3, n=2
        let c2 = Ctx::new(3, 2).unwrap();
        let c4 = Ctx::new(3, 4).unwrap();
        let x = Mat2::new(1 + 3 * xa, 3 * xb, 3 * xc, (1 + 3 * xd) % 9);
        let y = Mat2::new(1 + 3 * ya, 3 * yb, 3 * yc, (1 + 3 * yd) % 9);
        prop_assert_eq!(
            theta(c2.mat_mul(x, y), c2, c4).unwrap(),
            c4.mat_mul(theta(x, c2, c4).unwrap(), theta(y, c2, c4).unwrap())
        );
    }
}
