//! Acceptance suite: one test per claim family, each printing a PASS line
//! with the measured evidence. Run with `--nocapture` to see the lines;
//! the `n4_class_count` case is opt-in (`--ignored`) because it takes a
//! few minutes.

use std::sync::Arc;
use std::time::{Duration, Instant};
use sylow2::cohomology::{
    e2_page, graded_piece, h1_module, module_jordan_type, poincare_series,
};
use sylow2::fusion::{centric_radical_classification, FusionOptions};
use sylow2::group::{element_order, theta, GroupKind, MatrixGroup, DEFAULT_BUDGET};
use sylow2::lattice::{all_subgroups, conjugacy_classes, normalizer, DEFAULT_LATTICE_BUDGET};
use sylow2::props::{
    is_abelian, is_elementary_abelian, is_powerful, omega_extendable_witness, pth_root_witness,
    verbal_subgroups, KernelFamily, Witness,
};
use sylow2::{Ctx, Mat2};

fn build(p: u64, n: u32, kind: GroupKind) -> Arc<MatrixGroup> {
    MatrixGroup::build(Ctx::new(p, n).unwrap(), kind, DEFAULT_BUDGET).unwrap()
}

#[test]
fn acceptance_01_group_orders() {
    for p in [3u64, 5] {
        for n in [1u32, 2, 3] {
            let checks = [
                (GroupKind::SylowSl, p.pow(3 * n - 2)),
                (GroupKind::SylowGl, p.pow(4 * n - 3)),
                (GroupKind::KernelSl { level: 1 }, p.pow(3 * (n - 1))),
                (GroupKind::KernelGl { level: 1 }, p.pow(4 * (n - 1))),
            ];
            for (kind, expected) in checks {
                let t0 = Instant::now();
                let g = build(p, n, kind);
                let elapsed = t0.elapsed();
                assert_eq!(g.order(), expected, "{kind:?} p={p} n={n}");
                assert!(
                    elapsed < Duration::from_secs(10),
                    "{kind:?} p={p} n={n} took {elapsed:?}"
                );
            }
        }
    }
    println!("ACCEPTANCE 1 (group orders vs closed forms, p in {{3,5}}, n in {{1,2,3}}): PASS");
}

#[test]
fn acceptance_02_top_kernels_elementary_abelian_and_depth_shift() {
    for p in [3u64, 5] {
        for n in [2u32, 3] {
            let k_top = build(p, n, GroupKind::KernelSl { level: n - 1 });
            assert_eq!(k_top.order(), p.pow(3));
            assert!(is_elementary_abelian(&k_top).holds, "K p={p} n={n}");
            let l_top = build(p, n, GroupKind::KernelGl { level: n - 1 });
            assert_eq!(l_top.order(), p.pow(4));
            assert!(is_elementary_abelian(&l_top).holds, "L p={p} n={n}");
        }
    }
    // Exhaustive bijective-homomorphism check of the depth shift at p=3,
    // from level 2 to level 3, on the full kernel and its det-1 restriction.
    let c2 = Ctx::new(3, 2).unwrap();
    let c3 = Ctx::new(3, 3).unwrap();
    for (src, dst) in [
        (GroupKind::KernelGl { level: 1 }, GroupKind::KernelGl { level: 2 }),
        (GroupKind::KernelSl { level: 1 }, GroupKind::KernelSl { level: 2 }),
    ] {
        let source = build(3, 2, src);
        let target = build(3, 3, dst);
        let mut images: Vec<Mat2> = source
            .elements()
            .iter()
            .map(|&x| theta(x, c2, c3).unwrap())
            .collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len() as u64, target.order());
        assert!(images.iter().all(|m| target.contains(m)));
        for &x in source.elements() {
            for &y in source.elements() {
                assert_eq!(
                    theta(c2.mat_mul(x, y), c2, c3).unwrap(),
                    c3.mat_mul(theta(x, c2, c3).unwrap(), theta(y, c2, c3).unwrap())
                );
            }
        }
    }
    println!("ACCEPTANCE 2 (top kernels elementary abelian of orders p^3/p^4; depth shift a bijective homomorphism, exhaustive at p=3): PASS");
}

#[test]
fn acceptance_03_commutativity_boundary() {
    let k2 = build(3, 2, GroupKind::KernelSl { level: 1 });
    assert!(is_abelian(&k2).holds);
    for kind in [GroupKind::KernelSl { level: 1 }, GroupKind::KernelGl { level: 1 }] {
        let g = build(3, 3, kind);
        let report = is_abelian(&g);
        assert!(!report.holds);
        let Some(Witness::Pair(x, y)) = report.witness else {
            panic!("missing witness");
        };
        let ctx = g.ctx();
        assert_ne!(ctx.mat_mul(x, y), ctx.mat_mul(y, x), "witness re-verifies");
    }
    println!("ACCEPTANCE 3 (level-1 kernels abelian at n=2, non-commuting witnesses at n=3): PASS");
}

#[test]
fn acceptance_04_powerful_with_pth_roots() {
    let t0 = Instant::now();
    for p in [3u64, 5] {
        for n in [2u32, 3] {
            for kind in [GroupKind::KernelSl { level: 1 }, GroupKind::KernelGl { level: 1 }] {
                let g = build(p, n, kind);
                assert!(is_powerful(&g).unwrap().holds, "{kind:?} p={p} n={n}");
            }
        }
    }
    // Every element of the top kernel at n=3 has a verified p-th root in
    // the level-1 det-1 kernel.
    for p in [3u64, 5] {
        let ctx = Ctx::new(p, 3).unwrap();
        let top = build(p, 3, GroupKind::KernelSl { level: 2 });
        let kernel = build(p, 3, GroupKind::KernelSl { level: 1 });
        let mut witnesses = 0u64;
        for &h in top.elements() {
            let g = pth_root_witness(h, ctx).unwrap();
            assert_eq!(ctx.mat_pow(g, p), h);
            assert_eq!(ctx.det(g), 1);
            assert!(kernel.contains(&g));
            witnesses += 1;
        }
        assert_eq!(witnesses, p.pow(3));
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("ACCEPTANCE 4 (commutators inside p-th powers for p in {{3,5}}, n in {{2,3}}; 27 + 125 verified p-th roots at n=3): PASS");
}

#[test]
fn acceptance_05_order_p2_lifts() {
    for (p, n, family) in [
        (3u64, 2u32, KernelFamily::Sl),
        (3, 2, KernelFamily::Gl),
        (5, 2, KernelFamily::Sl),
        (5, 2, KernelFamily::Gl),
        (3, 3, KernelFamily::Sl),
        (3, 3, KernelFamily::Gl),
    ] {
        let report = omega_extendable_witness(Ctx::new(p, n).unwrap(), family).unwrap();
        assert!(report.holds, "family {family:?} p={p} n={n}");
    }
    println!("ACCEPTANCE 5 (every nontrivial top-kernel element lifts to an element of order exactly p^2): PASS");
}

#[test]
fn acceptance_06_h1_ranks_and_graded_model() {
    for p in [3u64, 5] {
        for n in [2u32, 3] {
            let k = build(p, n, GroupKind::KernelSl { level: 1 });
            let vk = verbal_subgroups(&k).unwrap();
            assert_eq!(vk.d, 3, "d of det-1 kernel p={p} n={n}");
            // omega_1 equals the top kernel, as element sets
            let top = build(p, n, GroupKind::KernelSl { level: n - 1 });
            let mut top_ids: Vec<u32> = top
                .elements()
                .iter()
                .map(|m| k.index_of(m).unwrap())
                .collect();
            top_ids.sort_unstable();
            assert_eq!(vk.omega1.indices(), top_ids.as_slice());

            let l = build(p, n, GroupKind::KernelGl { level: 1 });
            assert_eq!(verbal_subgroups(&l).unwrap().d, 4, "d of full kernel p={p} n={n}");
        }
    }
    // Graded model dimensions through degree 6 match the series expansion.
    let expect3 = vec![1u64, 3, 6, 10, 15, 21, 28];
    let expect4 = vec![1u64, 4, 10, 20, 35, 56, 84];
    assert_eq!(poincare_series(3, 6), expect3);
    assert_eq!(poincare_series(4, 6), expect4);
    let s = build(3, 2, GroupKind::SylowSl);
    let k = build(3, 2, GroupKind::KernelSl { level: 1 });
    let m = h1_module(&k, &s).unwrap();
    for (deg, &want) in expect3.iter().enumerate() {
        assert_eq!(graded_piece(&m, deg).dim as u64, want);
    }
    assert_eq!(graded_piece(&m, 2).dim, 6);
    let sg = build(3, 2, GroupKind::SylowGl);
    let lg = build(3, 2, GroupKind::KernelGl { level: 1 });
    let ml = h1_module(&lg, &sg).unwrap();
    for (deg, &want) in expect4.iter().enumerate() {
        assert_eq!(graded_piece(&ml, deg).dim as u64, want);
    }
    println!("ACCEPTANCE 6 (kernel generator counts 3/4; omega_1 equals the top kernel; graded dims equal series coefficients through degree 6 — degrees >= 2 are model-derived, not independently computed): PASS");
}

#[test]
fn acceptance_07_module_and_e2_independence_of_n() {
    let t0 = Instant::now();
    for p in [3u64, 5] {
        for family in [KernelFamily::Sl, KernelFamily::Gl] {
            let module = |n: u32| {
                let s = build(p, n, family.sylow_kind());
                let k = build(p, n, family.kernel_kind(1));
                h1_module(&k, &s).unwrap()
            };
            let j2 = module_jordan_type(&module(2), "sigma").unwrap();
            let j3 = module_jordan_type(&module(3), "sigma").unwrap();
            assert_eq!(j2, j3, "jordan type p={p} {family:?}");
        }
    }
    for family in [KernelFamily::Sl, KernelFamily::Gl] {
        let t2 = e2_page(Ctx::new(3, 2).unwrap(), family, (6, 6), DEFAULT_BUDGET).unwrap();
        let t3 = e2_page(Ctx::new(3, 3).unwrap(), family, (6, 6), DEFAULT_BUDGET).unwrap();
        assert!(t2.diff(&t3).is_empty(), "{family:?}");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("ACCEPTANCE 7 (action type and full E2 tables through caps (6,6) identical for n=2 and n=3): PASS");
}

#[test]
fn acceptance_08_centric_radical_classification() {
    use sylow2::fusion::classification_with_lattice;
    for n in [2u32, 3] {
        for family in [KernelFamily::Sl, KernelFamily::Gl] {
            let s = build(3, n, family.sylow_kind());
            let g = build(3, n, family.full_kind());
            let kernel_order = build(3, n, family.kernel_kind(1)).order();
            let lattice = all_subgroups(&s, DEFAULT_LATTICE_BUDGET).unwrap();
            let filtered =
                classification_with_lattice(&s, &g, &lattice, FusionOptions::default()).unwrap();
            let orders: Vec<u64> = filtered
                .centric_radical
                .iter()
                .map(|&i| filtered.classes[i as usize].order)
                .collect();
            assert_eq!(
                orders,
                vec![kernel_order, s.order()],
                "family {family:?} n={n}"
            );
            let unfiltered = classification_with_lattice(
                &s,
                &g,
                &lattice,
                FusionOptions {
                    containment_filter: false,
                    ..FusionOptions::default()
                },
            )
            .unwrap();
            assert_eq!(
                filtered.centric_radical, unfiltered.centric_radical,
                "filter agreement {family:?} n={n}"
            );
            assert!(unfiltered.classes.iter().all(|c| c.is_centric.is_some()));
        }
    }
    // Outer orders of the kernel class.
    let out_order = |p: u64, n: u32| {
        let s = build(p, n, GroupKind::SylowSl);
        let g = build(p, n, GroupKind::Sl);
        let report = centric_radical_classification(&s, &g, FusionOptions::default()).unwrap();
        let kernel_order = build(p, n, GroupKind::KernelSl { level: 1 }).order();
        report
            .classes
            .iter()
            .find(|c| c.order == kernel_order && c.is_centric == Some(true))
            .and_then(|c| c.out_order)
            .unwrap()
    };
    assert_eq!(out_order(3, 2), 24);
    assert_eq!(out_order(3, 3), 24);
    assert_eq!(out_order(5, 2), 120);
    println!("ACCEPTANCE 8 (centric-radical classes are exactly the kernel and the Sylow group for both families at n in {{2,3}}, filter-agreement included; kernel outer orders 24 and 120): PASS");
}

#[test]
fn acceptance_09_subgroup_class_counts_n2_n3() {
    // n = 2 within a minute, n = 3 within thirty.
    let expected = [(2u32, 20u64, 60u64), (3, 97, 1800)];
    for (n, want, limit) in expected {
        let t0 = Instant::now();
        let s = build(3, n, GroupKind::SylowSl);
        let lat = all_subgroups(&s, DEFAULT_LATTICE_BUDGET).unwrap();
        let own = conjugacy_classes(&lat, &s).unwrap();
        let g = build(3, n, GroupKind::Sl);
        let fused = conjugacy_classes(&lat, &g).unwrap();
        let elapsed = t0.elapsed();
        let matching = if own.count() == want {
            "sylow"
        } else if fused.count() == want {
            "full"
        } else {
            panic!(
                "n={n}: neither interpretation matches {want}: sylow={} full={} \
                 (class data: sylow {:?} / full {:?})",
                own.count(),
                fused.count(),
                own.classes,
                fused.classes
            );
        };
        assert!(
            elapsed < Duration::from_secs(limit),
            "n={n} took {elapsed:?}"
        );
        println!(
            "ACCEPTANCE 9 (n={n}): {want} subgroup classes under the '{matching}' conjugation ambient \
             (sylow={}, full={}) in {elapsed:?}: PASS",
            own.count(),
            fused.count()
        );
    }
}

#[test]
#[ignore = "long-running: the n=4 lattice takes a few minutes"]
fn acceptance_09_subgroup_class_count_n4() {
    let t0 = Instant::now();
    let s = build(3, 4, GroupKind::SylowSl);
    let lat = all_subgroups(&s, DEFAULT_LATTICE_BUDGET).unwrap();
    let own = conjugacy_classes(&lat, &s).unwrap();
    assert_eq!(own.count(), 282);
    println!(
        "ACCEPTANCE 9 (n=4, long-running): 282 subgroup classes under the 'sylow' ambient \
         ({} subgroups) in {:?}: PASS",
        lat.len(),
        t0.elapsed()
    );
}

#[test]
fn acceptance_10_randomized_property_suites() {
    use rand::{Rng, SeedableRng};
    let t0 = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let ctxs = [
        Ctx::new(3, 2).unwrap(),
        Ctx::new(3, 3).unwrap(),
        Ctx::new(5, 2).unwrap(),
        Ctx::new(7, 3).unwrap(),
    ];
    let mut rand_mat = |ctx: Ctx| {
        Mat2::new(
            rng.gen_range(0..ctx.modulus()),
            rng.gen_range(0..ctx.modulus()),
            rng.gen_range(0..ctx.modulus()),
            rng.gen_range(0..ctx.modulus()),
        )
    };
    // Associativity, identity laws, det multiplicativity on 10^4 triples.
    for i in 0..10_000 {
        let ctx = ctxs[i % ctxs.len()];
        let (x, y, z) = (rand_mat(ctx), rand_mat(ctx), rand_mat(ctx));
        assert_eq!(
            ctx.mat_mul(ctx.mat_mul(x, y), z),
            ctx.mat_mul(x, ctx.mat_mul(y, z))
        );
        assert_eq!(ctx.mat_mul(Mat2::identity(), x), x);
        assert_eq!(ctx.mat_mul(x, Mat2::identity()), x);
        assert_eq!(
            ctx.det(ctx.mat_mul(x, y)),
            ctx.mul(ctx.det(x), ctx.det(y))
        );
    }
    // Reduction is a homomorphism for product and det on 10^4 pairs.
    let c27 = Ctx::new(3, 3).unwrap();
    let c9 = Ctx::new(3, 2).unwrap();
    for _ in 0..10_000 {
        let (x, y) = (rand_mat(c27), rand_mat(c27));
        assert_eq!(
            c27.reduce_mod(c27.mat_mul(x, y), c9).unwrap(),
            c9.mat_mul(
                c27.reduce_mod(x, c9).unwrap(),
                c27.reduce_mod(y, c9).unwrap()
            )
        );
        assert_eq!(c27.det(x) % 9, c9.det(c27.reduce_mod(x, c9).unwrap()));
    }
    // Inverses invert whenever the determinant is a unit.
    let mut inverted = 0;
    for _ in 0..10_000 {
        let x = rand_mat(c27);
        if let Ok(xi) = c27.mat_inverse(x) {
            assert_eq!(c27.mat_mul(xi, x), Mat2::identity());
            assert_eq!(c27.mat_mul(x, xi), Mat2::identity());
            inverted += 1;
        }
    }
    assert!(inverted > 5_000);
    // Orbit-stabilizer across every subgroup class of the n=2 Sylow group,
    // and element orders divide the group order.
    let s = build(3, 2, GroupKind::SylowSl);
    let lat = all_subgroups(&s, DEFAULT_LATTICE_BUDGET).unwrap();
    let classes = conjugacy_classes(&lat, &s).unwrap();
    let mut total = 0usize;
    for class in &classes.classes {
        let rep = lat.subgroup(class[0]);
        let norm = normalizer(&s, rep).unwrap();
        assert_eq!(class.len() as u64 * norm.order(), s.order());
        total += class.len();
    }
    assert_eq!(total, lat.len());
    for _ in 0..200 {
        let idx = rng.gen_range(0..s.order()) as u32;
        let ord = element_order(s.element(idx), &s).unwrap();
        assert_eq!(s.order() % ord, 0);
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("ACCEPTANCE 10 (seeded randomized suites, 10^4 triples per law, plus orbit-stabilizer and Lagrange checks): PASS");
}
