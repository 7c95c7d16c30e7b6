//! Classification of centric and p-radical subgroups of a Sylow subgroup
//! inside the conjugation fusion of the full matrix group, outer-automorphism
//! data, and the invariant dimensions that feed the stable-elements
//! description of the ambient group's cohomology.

use crate::arith::Mat2;
use crate::cohomology::{graded_piece, FpModule};
use crate::error::{Error, Result};
use crate::fp::FpMat;
use crate::group::{GroupKind, MatrixGroup, Subgroup};
use crate::lattice::{
    all_subgroups, centralizer, conjugacy_classes, normalizer, quotient, ConjugacyClasses,
    SubgroupLattice, DEFAULT_LATTICE_BUDGET,
};
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;
use std::sync::Arc;

/// Re-index a subgroup's elements inside a (larger) enumerated group.
/// Closure is an intrinsic property of the element set, so no re-check.
fn rebase(sub: &Subgroup, target: &Arc<MatrixGroup>) -> Result<Subgroup> {
    let mut indices = Vec::with_capacity(sub.indices().len());
    for m in sub.mats() {
        indices.push(target.index_of(&m).ok_or(Error::NotContained)?);
    }
    indices.sort_unstable();
    let gens = sub
        .gen_mats()
        .iter()
        .map(|m| target.index_of(m).expect("generators are elements"))
        .collect();
    Ok(Subgroup::from_parts(target, indices, gens))
}

/// True when `p` and all of its fusion conjugates inside `s` contain their
/// own `s`-centralizers. Conjugates are enumerated as the orbit of `p` under
/// the generators of `g`, keeping only those inside `s`.
pub fn is_f_centric(p: &Subgroup, s: &Arc<MatrixGroup>, g: &Arc<MatrixGroup>) -> Result<bool> {
    for m in p.mats() {
        if !s.contains(&m) {
            return Err(Error::NotContained);
        }
    }
    for m in s.elements() {
        if !g.contains(m) {
            return Err(Error::NotContained);
        }
    }
    let ctx = g.ctx();
    let gens: Vec<(Mat2, Mat2)> = g
        .generators()
        .iter()
        .map(|x| (*x, ctx.mat_inverse(*x).expect("invertible")))
        .collect();
    let start: Vec<Mat2> = {
        let mut m = p.mats();
        m.sort_unstable();
        m
    };
    let start_gens = p.gen_mats();
    let mut visited: FxHashSet<Vec<Mat2>> = FxHashSet::default();
    visited.insert(start.clone());
    let mut stack = vec![(start, start_gens)];
    while let Some((mats, sub_gens)) = stack.pop() {
        if mats.iter().all(|m| s.contains(m))
            && !centralizer_inside(s, &sub_gens, &mats)
        {
            return Ok(false);
        }
        for (x, xi) in &gens {
            let mut image: Vec<Mat2> = mats.iter().map(|m| ctx.conjugate(*x, *m, *xi)).collect();
            image.sort_unstable();
            if visited.contains(&image) {
                continue;
            }
            visited.insert(image.clone());
            let image_gens = sub_gens.iter().map(|m| ctx.conjugate(*x, *m, *xi)).collect();
            stack.push((image, image_gens));
        }
    }
    Ok(true)
}

/// Does every element of `s` commuting with all of `sub_gens` lie in `mats`?
fn centralizer_inside(s: &Arc<MatrixGroup>, sub_gens: &[Mat2], mats: &[Mat2]) -> bool {
    let ctx = s.ctx();
    let member: FxHashSet<Mat2> = mats.iter().copied().collect();
    for x in s.elements() {
        if sub_gens
            .iter()
            .all(|h| ctx.mat_mul(*x, *h) == ctx.mat_mul(*h, *x))
            && !member.contains(x)
        {
            return false;
        }
    }
    true
}

/// True when the normalizer quotient N_g(p)/p has trivial p-core.
pub fn is_p_radical(p: &Subgroup, g: &Arc<MatrixGroup>) -> Result<bool> {
    let prime = g.ctx().p();
    let mut order = p.order();
    while order % prime == 0 {
        order /= prime;
    }
    if order != 1 {
        return Err(Error::NotAPGroup {
            order: p.order(),
            p: prime,
        });
    }
    let p_in_g = rebase(p, g)?;
    let norm = normalizer(g, &p_in_g)?;
    let q = quotient(&norm, &p_in_g)?;
    Ok(q.core_p()?.len() == 1)
}

/// Flags for one conjugacy class of subgroups of the Sylow group.
#[derive(Clone, Debug)]
pub struct FusionClass {
    /// Lexicographically least member of the class.
    pub rep: Subgroup,
    pub order: u64,
    /// Size of the class under Sylow-internal conjugation.
    pub class_size: u64,
    /// None when the containment filter skipped the test.
    pub is_centric: Option<bool>,
    pub is_radical: Option<bool>,
    /// |N_g(P)| / |P|, recorded for centric classes. Elements of the ambient
    /// centralizer conjugate trivially, so this is the order of the group
    /// that actually acts on the cohomology of P.
    pub out_order: Option<u64>,
    /// Whether C_g(P) <= P, tested for centric classes. The ambient
    /// centralizer can pick up central prime-to-p scalars (such as -1), so
    /// centricity in the Sylow group does not force this.
    pub ambient_centralizer_contained: Option<bool>,
    pub contains_kernel: bool,
}

pub struct FusionClassification {
    pub sylow: Arc<MatrixGroup>,
    pub ambient: Arc<MatrixGroup>,
    pub kernel: Subgroup,
    /// One entry per Sylow-internal conjugacy class, in canonical order.
    pub classes: Vec<FusionClass>,
    /// Ids (into `classes`) of the classes that are both centric and radical.
    pub centric_radical: Vec<u32>,
    pub sylow_class_count: u64,
    pub fused_class_count: u64,
    pub containment_filter: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct FusionOptions {
    pub containment_filter: bool,
    pub lattice_budget: u64,
}

impl Default for FusionOptions {
    fn default() -> Self {
        FusionOptions {
            containment_filter: true,
            lattice_budget: DEFAULT_LATTICE_BUDGET,
        }
    }
}

/// Classify every conjugacy class of subgroups of `s` by the centric and
/// p-radical predicates in the fusion induced by `g`.
///
/// The kernel of reduction mod p is normal in `g`, so a normal-subgroup
/// containment theorem guarantees every centric-radical subgroup contains
/// it; with the filter on, only those classes are tested and the rest are
/// excluded wholesale. With the filter off every class is tested directly,
/// which cross-validates the filtered run.
pub fn centric_radical_classification(
    s: &Arc<MatrixGroup>,
    g: &Arc<MatrixGroup>,
    opts: FusionOptions,
) -> Result<FusionClassification> {
    let lattice = all_subgroups(s, opts.lattice_budget)?;
    classification_with_lattice(s, g, &lattice, opts)
}

/// Same as [`centric_radical_classification`], reusing a prebuilt lattice.
pub fn classification_with_lattice(
    s: &Arc<MatrixGroup>,
    g: &Arc<MatrixGroup>,
    lattice: &SubgroupLattice,
    opts: FusionOptions,
) -> Result<FusionClassification> {
    let kernel_kind = match (s.kind(), g.kind()) {
        (GroupKind::SylowSl, GroupKind::Sl) => GroupKind::KernelSl { level: 1 },
        (GroupKind::SylowGl, GroupKind::Gl) => GroupKind::KernelGl { level: 1 },
        _ => {
            return Err(Error::InvalidParameter(
                "classification expects a Sylow group inside its full matrix group".into(),
            ))
        }
    };
    let kernel_group = MatrixGroup::build(s.ctx(), kernel_kind, crate::group::DEFAULT_BUDGET)?;
    let kernel = Subgroup::from_elements(s, kernel_group.elements())?;

    let sylow_classes = conjugacy_classes(lattice, s)?;
    let fused_classes = conjugacy_classes(lattice, g)?;

    // Centricity is a fused-class invariant: evaluate once per fused class.
    let fused_centric = centric_flags(s, lattice, &fused_classes);
    let fused_of: Vec<u32> = {
        let mut map = vec![0u32; lattice.len()];
        for (cid, class) in fused_classes.classes.iter().enumerate() {
            for &sid in class {
                map[sid as usize] = cid as u32;
            }
        }
        map
    };

    let class_rows: Vec<Result<FusionClass>> = sylow_classes
        .classes
        .par_iter()
        .map(|class| {
            let rep = lattice.subgroup(class[0]).clone();
            let contains_kernel = kernel.is_subset_of(&rep);
            let tested = !opts.containment_filter || contains_kernel;
            let (is_centric, is_radical, out_order, cent_in) = if tested {
                let centric = fused_centric[fused_of[class[0] as usize] as usize];
                let radical = is_p_radical(&rep, g)?;
                let (out, cent_in) = if centric {
                    let rep_in_g = rebase(&rep, g)?;
                    let norm = normalizer(g, &rep_in_g)?;
                    let cent = centralizer(g, &rep_in_g)?;
                    (
                        Some(norm.order() / rep.order()),
                        Some(cent.is_subset_of(&rep_in_g)),
                    )
                } else {
                    (None, None)
                };
                (Some(centric), Some(radical), out, cent_in)
            } else {
                (None, None, None, None)
            };
            Ok(FusionClass {
                order: rep.order(),
                class_size: class.len() as u64,
                rep,
                is_centric,
                is_radical,
                out_order,
                ambient_centralizer_contained: cent_in,
                contains_kernel,
            })
        })
        .collect();
    let mut classes = Vec::with_capacity(class_rows.len());
    for row in class_rows {
        classes.push(row?);
    }
    let centric_radical: Vec<u32> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_centric == Some(true) && c.is_radical == Some(true))
        .map(|(i, _)| i as u32)
        .collect();
    // The containment theorem must hold regardless of how we got here.
    for &cid in &centric_radical {
        if !classes[cid as usize].contains_kernel {
            return Err(Error::Inconsistency(
                "a centric-radical class does not contain the reduction kernel".into(),
            ));
        }
    }
    Ok(FusionClassification {
        sylow: Arc::clone(s),
        ambient: Arc::clone(g),
        kernel,
        classes,
        centric_radical,
        sylow_class_count: sylow_classes.count(),
        fused_class_count: fused_classes.count(),
        containment_filter: opts.containment_filter,
    })
}

/// For each fused class: do all members contain their s-centralizer?
fn centric_flags(
    s: &Arc<MatrixGroup>,
    lattice: &SubgroupLattice,
    fused: &ConjugacyClasses,
) -> Vec<bool> {
    // Quick reject: the center of s centralizes everything, so a centric
    // subgroup must contain it.
    let center = centralizer(s, &Subgroup::full(s)).expect("self-containment");
    fused
        .classes
        .par_iter()
        .map(|class| {
            class.iter().all(|&sid| {
                let q = lattice.subgroup(sid);
                if !center.is_subset_of(q) {
                    return false;
                }
                let gens = q.gen_mats();
                let mats = q.mats();
                centralizer_inside(s, &gens, &mats)
            })
        })
        .collect()
}

/// Conjugation module of the normalizer quotient on H^1 of the kernel: the
/// dual Frattini-quotient space with one actor per ambient generator.
pub fn outer_action_on_h1(kernel: &Arc<MatrixGroup>, g: &Arc<MatrixGroup>) -> Result<FpModule> {
    let ctx = g.ctx();
    let p = ctx.p();
    for m in kernel.elements() {
        if !g.contains(m) {
            return Err(Error::NotContained);
        }
    }
    let (basis, coords) = crate::cohomology::frattini_quotient_coordinates(kernel)?;
    let dim = basis.len();
    let names = ["e", "f", "t"];
    let mut actors = Vec::new();
    for (idx, gen) in g.generators().iter().enumerate() {
        let gen_inv = ctx.mat_inverse(*gen)?;
        let mut action = FpMat::zeros(p, dim, dim);
        for (j, &b) in basis.iter().enumerate() {
            let image = ctx.conjugate(*gen, b, gen_inv);
            let col = coords
                .get(&image)
                .ok_or_else(|| Error::Structure("kernel is not normal in the ambient".into()))?;
            for (i, &v) in col.iter().enumerate() {
                action.set(i, j, v);
            }
        }
        // Well-defined on cosets: a second representative of the same coset
        // of the kernel must induce the same map.
        let alt = ctx.mat_mul(*gen, kernel.element(second_element(kernel)));
        let alt_inv = ctx.mat_inverse(alt)?;
        for (j, &b) in basis.iter().enumerate() {
            let image = ctx.conjugate(alt, b, alt_inv);
            let col = &coords[&image];
            for (i, &v) in col.iter().enumerate() {
                if action.get(i, j) != v {
                    return Err(Error::Inconsistency(
                        "conjugation action is not well-defined mod Frattini".into(),
                    ));
                }
            }
        }
        let dual = action.inverse()?.transpose();
        actors.push((names.get(idx).unwrap_or(&"x").to_string(), dual));
    }
    Ok(FpModule { p, dim, actors })
}

fn second_element(kernel: &Arc<MatrixGroup>) -> u32 {
    // any nontrivial element; fall back to the identity in the trivial group
    let id = kernel.identity_index();
    (0..kernel.order() as u32).find(|&i| i != id).unwrap_or(id)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantDims {
    pub group_label: String,
    pub degrees: Vec<(usize, usize)>,
}

/// Everything the stable-elements description needs that is computable at
/// this scale: the centric-radical classes with their outer orders, the
/// fixed-subspace dimensions of the kernel cohomology model under the full
/// normalizer quotient, and the E2 table of the defining extension. The
/// invariants of the Sylow cohomology itself are deliberately absent: that
/// ring is not computed here.
pub struct StableIngredients {
    pub classification: FusionClassification,
    pub outer_module: FpModule,
    pub kernel_invariants: InvariantDims,
    pub e2: crate::cohomology::E2Table,
}

pub fn stable_ingredients(
    s: &Arc<MatrixGroup>,
    g: &Arc<MatrixGroup>,
    lattice: &SubgroupLattice,
    cap_degree: usize,
    e2_caps: (usize, usize),
    budget: u64,
    opts: FusionOptions,
) -> Result<StableIngredients> {
    let classification = classification_with_lattice(s, g, lattice, opts)?;
    let (family, label) = match s.kind() {
        GroupKind::SylowSl => (crate::props::KernelFamily::Sl, "N(K)/K"),
        GroupKind::SylowGl => (crate::props::KernelFamily::Gl, "N(L)/L"),
        _ => unreachable!("classification enforces Sylow kinds"),
    };
    let kernel_group = MatrixGroup::build(s.ctx(), family.kernel_kind(1), budget)?;
    let outer_module = outer_action_on_h1(&kernel_group, g)?;
    let kernel_invariants = invariant_dims(&outer_module, cap_degree, label);
    let e2 = crate::cohomology::e2_page(s.ctx(), family, e2_caps, budget)?;
    Ok(StableIngredients {
        classification,
        outer_module,
        kernel_invariants,
        e2,
    })
}

/// Dimension of the jointly fixed subspace of each graded piece under all
/// actors of the module, through the degree cap.
pub fn invariant_dims(module: &FpModule, cap: usize, group_label: &str) -> InvariantDims {
    let mut degrees = Vec::with_capacity(cap + 1);
    for degree in 0..=cap {
        let piece = graded_piece(module, degree);
        let dim = if piece.actors.is_empty() {
            piece.dim
        } else {
            let mats: Vec<FpMat> = piece
                .actors
                .iter()
                .map(|(_, a)| a.sub(&FpMat::identity(module.p, piece.dim)))
                .collect();
            FpMat::joint_kernel_dim(&mats)
        };
        degrees.push((degree, dim));
    }
    InvariantDims {
        group_label: group_label.to_string(),
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ctx;
    use crate::cohomology::{canonical_lift, h1_module, poincare_series};
    use crate::group::DEFAULT_BUDGET;

    fn build(p: u64, n: u32, kind: GroupKind) -> Arc<MatrixGroup> {
        MatrixGroup::build(Ctx::new(p, n).unwrap(), kind, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn sylow_is_centric_kernel_is_centric_trivial_is_not() {
        let s = build(3, 2, GroupKind::SylowSl);
        let g = build(3, 2, GroupKind::Sl);
        let full = Subgroup::full(&s);
        assert!(is_f_centric(&full, &s, &g).unwrap());
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        let k_sub = Subgroup::from_elements(&s, k.elements()).unwrap();
        assert!(is_f_centric(&k_sub, &s, &g).unwrap());
        let trivial = Subgroup::trivial(&s);
        assert!(!is_f_centric(&trivial, &s, &g).unwrap());
    }

    #[test]
    fn kernel_and_sylow_are_radical() {
        let s = build(3, 2, GroupKind::SylowSl);
        let g = build(3, 2, GroupKind::Sl);
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        let k_sub = Subgroup::from_elements(&s, k.elements()).unwrap();
        assert!(is_p_radical(&k_sub, &g).unwrap());
        let full = Subgroup::full(&s);
        assert!(is_p_radical(&full, &g).unwrap());
    }

    #[test]
    fn classification_sl_n2_finds_kernel_and_sylow() {
        let s = build(3, 2, GroupKind::SylowSl);
        let g = build(3, 2, GroupKind::Sl);
        let filtered =
            centric_radical_classification(&s, &g, FusionOptions::default()).unwrap();
        assert_eq!(filtered.sylow_class_count, 20);
        let orders: Vec<u64> = filtered
            .centric_radical
            .iter()
            .map(|&i| filtered.classes[i as usize].order)
            .collect();
        assert_eq!(orders, vec![27, 81]);

        // Cross-validate with the filter disabled: identical list.
        let unfiltered = centric_radical_classification(
            &s,
            &g,
            FusionOptions {
                containment_filter: false,
                ..FusionOptions::default()
            },
        )
        .unwrap();
        assert_eq!(filtered.centric_radical, unfiltered.centric_radical);
        // With the filter off, every class is tested; none beyond the two
        // listed are both centric and radical.
        assert!(unfiltered.classes.iter().all(|c| c.is_centric.is_some()));
    }

    #[test]
    fn classification_gl_n2_finds_kernel_and_sylow() {
        let s = build(3, 2, GroupKind::SylowGl);
        let g = build(3, 2, GroupKind::Gl);
        let report = centric_radical_classification(&s, &g, FusionOptions::default()).unwrap();
        let orders: Vec<u64> = report
            .centric_radical
            .iter()
            .map(|&i| report.classes[i as usize].order)
            .collect();
        assert_eq!(orders, vec![81, 243]); // the GL kernel and the full Sylow group
    }

    #[test]
    fn out_orders_match_the_small_special_linear_groups() {
        let s = build(3, 2, GroupKind::SylowSl);
        let g = build(3, 2, GroupKind::Sl);
        let report = centric_radical_classification(&s, &g, FusionOptions::default()).unwrap();
        let kernel_class = report
            .classes
            .iter()
            .find(|c| c.order == 27 && c.is_centric == Some(true))
            .unwrap();
        assert_eq!(kernel_class.out_order, Some(24));
        // The ambient centralizer of the kernel picks up the central scalar
        // -1, which is not congruent to 1 mod p: containment fails even
        // though the class is centric in the Sylow group.
        assert_eq!(kernel_class.ambient_centralizer_contained, Some(false));
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        let k_in_g = Subgroup::from_elements(&g, k.elements()).unwrap();
        let cent = centralizer(&g, &k_in_g).unwrap();
        assert_eq!(cent.order(), 54); // <-1> x K
        assert!(cent.contains_mat(&Mat2::new(8, 0, 0, 8)));

        let s5 = build(5, 2, GroupKind::SylowSl);
        let g5 = build(5, 2, GroupKind::Sl);
        let report5 = centric_radical_classification(&s5, &g5, FusionOptions::default()).unwrap();
        let kernel_class5 = report5
            .classes
            .iter()
            .find(|c| c.order == 125 && c.is_centric == Some(true))
            .unwrap();
        assert_eq!(kernel_class5.out_order, Some(120));
    }

    #[test]
    fn index_p_subgroups_of_the_kernel_are_never_centric_radical() {
        let s = build(3, 2, GroupKind::SylowSl);
        let g = build(3, 2, GroupKind::Sl);
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        let k_sub = Subgroup::from_elements(&s, k.elements()).unwrap();
        let lattice = all_subgroups(&s, DEFAULT_LATTICE_BUDGET).unwrap();
        let mut tested = 0;
        for sub in lattice.subgroups() {
            if sub.order() == 9 && sub.is_subset_of(&k_sub) {
                let both = is_f_centric(sub, &s, &g).unwrap() && is_p_radical(sub, &g).unwrap();
                assert!(!both);
                tested += 1;
            }
        }
        assert!(tested > 0);
    }

    #[test]
    fn outer_action_first_actor_restricts_to_sigma() {
        let s = build(3, 2, GroupKind::SylowSl);
        let g = build(3, 2, GroupKind::Sl);
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        // The first ambient generator is the canonical lift itself.
        assert_eq!(g.generators()[0], canonical_lift());
        let outer = outer_action_on_h1(&k, &g).unwrap();
        let inner = h1_module(&k, &s).unwrap();
        assert_eq!(outer.actor("e").unwrap(), inner.actor("sigma").unwrap());
    }

    #[test]
    fn outer_actor_group_order_divides_24() {
        let g = build(3, 2, GroupKind::Sl);
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        let outer = outer_action_on_h1(&k, &g).unwrap();
        // Close the two actor matrices under multiplication.
        let mut seen = vec![FpMat::identity(3, outer.dim)];
        let mut head = 0;
        while head < seen.len() {
            let cur = seen[head].clone();
            head += 1;
            for (_, a) in &outer.actors {
                let next = cur.mul(a);
                if !seen.contains(&next) {
                    seen.push(next);
                }
            }
        }
        assert_eq!(24 % seen.len(), 0);
        // det of every actor in the closure is 1
        for m in &seen {
            assert_eq!(m.det(), 1);
        }
    }

    #[test]
    fn invariant_dims_examples() {
        let g = build(3, 2, GroupKind::Sl);
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        let outer = outer_action_on_h1(&k, &g).unwrap();
        let dims = invariant_dims(&outer, 4, "sl2(f3)");
        assert_eq!(dims.degrees[0], (0, 1));
        assert_eq!(dims.degrees[1], (1, 0)); // no invariant linear forms

        // Trivial actor set: everything is fixed.
        let free = FpModule {
            p: 3,
            dim: 3,
            actors: vec![],
        };
        let all = invariant_dims(&free, 6, "trivial");
        let expected = poincare_series(3, 6);
        for (deg, dim) in all.degrees {
            assert_eq!(dim as u64, expected[deg]);
        }
    }

    #[test]
    fn invariants_shrink_as_the_actor_set_grows() {
        let g = build(3, 2, GroupKind::Sl);
        let s = build(3, 2, GroupKind::SylowSl);
        let k = build(3, 2, GroupKind::KernelSl { level: 1 });
        let outer = outer_action_on_h1(&k, &g).unwrap();
        let inner = h1_module(&k, &s).unwrap();
        let big = invariant_dims(&outer, 6, "full");
        let small = invariant_dims(&inner, 6, "sigma-only");
        for (deg, dim) in big.degrees.iter() {
            assert!(*dim <= small.degrees[*deg].1);
        }
    }
}
