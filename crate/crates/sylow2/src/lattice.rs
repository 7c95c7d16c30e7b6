//! Subgroup lattices, conjugacy classes of subgroups, normalizers,
//! centralizers and quotient groups.
//!
//! Lattices are built layer by layer: every subgroup of order p^(t+1) of a
//! p-group contains a normal subgroup of order p^t, so extending each known
//! subgroup by the order-p elements of its normalizer quotient enumerates the
//! next layer completely. A join-closure engine (cyclic atoms, iterated
//! joins) is kept alongside as an independent cross-check.

use crate::arith::Mat2;
use crate::error::{Error, Result};
use crate::group::{closure_indices, MatrixGroup, Subgroup};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use std::sync::Arc;

pub const DEFAULT_LATTICE_BUDGET: u64 = 59049; // 3^10

const TABLE_LIMIT: u64 = 3000;

/// Index-level group operations with an optional dense multiplication table.
pub struct GroupOps {
    g: Arc<MatrixGroup>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
}

impl GroupOps {
    pub fn new(g: &Arc<MatrixGroup>) -> GroupOps {
        let n = g.order();
        let table = (n <= TABLE_LIMIT).then(|| {
            let n = n as usize;
            let mut t = vec![0u32; n * n];
            let ctx = g.ctx();
            t.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                let x = g.element(i as u32);
                for (j, slot) in row.iter_mut().enumerate() {
                    let y = ctx.mat_mul(x, g.element(j as u32));
                    *slot = g.index_of(&y).expect("closed");
                }
            });
            t
        });
        let inv = g.inverses().to_vec();
        GroupOps {
            g: Arc::clone(g),
            table,
            inv,
        }
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.g
    }

    pub fn order(&self) -> u64 {
        self.g.order()
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.table {
            Some(t) => t[i as usize * self.g.order() as usize + j as usize],
            None => self.g.mul_idx(i, j),
        }
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, i: u32, mut k: u64) -> u32 {
        let mut r = self.g.identity_index();
        let mut b = i;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }
}

/// The complete subgroup list of a p-group, in canonical order. Conjugacy
/// partitions under a chosen ambient group are computed by
/// [`conjugacy_classes`].
pub struct SubgroupLattice {
    parent: Arc<MatrixGroup>,
    subgroups: Vec<Subgroup>,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub ambient_label: String,
    pub ambient_order: u64,
    /// Subgroup ids per class; each class sorted ascending, classes ordered
    /// by their least member.
    pub classes: Vec<Vec<u32>>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> u64 {
        self.classes.len() as u64
    }

    /// Representative of each class: the lexicographically least member.
    pub fn reps(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

impl SubgroupLattice {
    pub fn parent(&self) -> &Arc<MatrixGroup> {
        &self.parent
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: u32) -> &Subgroup {
        &self.subgroups[id as usize]
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub(crate) fn from_parts(parent: Arc<MatrixGroup>, subgroups: Vec<Subgroup>) -> Self {
        SubgroupLattice { parent, subgroups }
    }

    /// Map from sorted index sets to subgroup ids.
    fn id_lookup(&self) -> FxHashMap<&[u32], u32> {
        self.subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.indices(), i as u32))
            .collect()
    }
}

fn sort_and_wrap(
    parent: &Arc<MatrixGroup>,
    mut recs: Vec<(Vec<u32>, Vec<u32>)>,
) -> Result<SubgroupLattice> {
    recs.sort_unstable_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let subgroups: Vec<Subgroup> = recs
        .into_iter()
        .map(|(indices, gens)| Subgroup::from_parts(parent, indices, gens))
        .collect();
    // Independent re-check: generators re-close onto exactly the stored set.
    let ok = subgroups
        .par_iter()
        .all(|s| {
            parent.order() % s.order() == 0
                && closure_indices(parent, s.gen_indices()) == s.indices()
        });
    if !ok {
        return Err(Error::Inconsistency(
            "a lattice subgroup failed its closure re-check".into(),
        ));
    }
    Ok(SubgroupLattice::from_parts(Arc::clone(parent), subgroups))
}

/// Complete subgroup lattice of a p-group via layered index-p extensions.
pub fn all_subgroups(parent: &Arc<MatrixGroup>, lattice_budget: u64) -> Result<SubgroupLattice> {
    let p = parent.ctx().p();
    if !parent.is_p_group() {
        return Err(Error::NotAPGroup {
            order: parent.order(),
            p,
        });
    }
    if parent.order() > lattice_budget {
        return Err(Error::BudgetExceeded {
            required: parent.order() as u128,
            budget: lattice_budget,
        });
    }
    let ops = GroupOps::new(parent);
    let id = parent.identity_index();

    let mut dedup: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let mut recs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    dedup.insert(vec![id], 0);
    recs.push((vec![id], vec![]));

    let mut layer: Vec<u32> = vec![0];
    while !layer.is_empty() {
        let batches: Vec<Vec<(Vec<u32>, Vec<u32>)>> = layer
            .par_iter()
            .map(|&hid| extend_by_index_p(&ops, &recs[hid as usize]))
            .collect();
        let mut next = Vec::new();
        for batch in batches {
            for (indices, gens) in batch {
                if !dedup.contains_key(&indices) {
                    let nid = recs.len() as u32;
                    dedup.insert(indices.clone(), nid);
                    recs.push((indices, gens));
                    next.push(nid);
                }
            }
        }
        layer = next;
    }
    sort_and_wrap(parent, recs)
}

/// All subgroups of order p*|H| containing H, found inside N(H)/H.
fn extend_by_index_p(ops: &GroupOps, h: &(Vec<u32>, Vec<u32>)) -> Vec<(Vec<u32>, Vec<u32>)> {
    let (h_indices, h_gens) = h;
    let n = ops.order() as u32;
    if h_indices.len() as u64 == ops.order() {
        return Vec::new();
    }
    let p = ops.group().ctx().p();
    let in_h = |i: u32| h_indices.binary_search(&i).is_ok();

    // Normalizer of H by direct scan; generators suffice for the test.
    let normalizer: Vec<u32> = (0..n)
        .filter(|&g| h_gens.iter().all(|&x| in_h(ops.conj(g, x))))
        .collect();

    // Left cosets of H in its normalizer, reps in canonical order.
    let mut coset_of: FxHashMap<u32, u32> = FxHashMap::default();
    coset_of.reserve(normalizer.len());
    let mut reps: Vec<u32> = Vec::new();
    for &g in &normalizer {
        if coset_of.contains_key(&g) {
            continue;
        }
        let cid = reps.len() as u32;
        reps.push(g);
        for &x in h_indices {
            coset_of.insert(ops.mul(g, x), cid);
        }
    }
    let e_q = coset_of[&ops.group().identity_index()];
    let qmul = |a: u32, b: u32| coset_of[&ops.mul(reps[a as usize], reps[b as usize])];
    let qpow_p = |a: u32| {
        let mut r = e_q;
        for _ in 0..p {
            r = qmul(r, a);
        }
        r
    };

    let mut out = Vec::new();
    let mut used = vec![false; reps.len()];
    used[e_q as usize] = true;
    for q in 0..reps.len() as u32 {
        if used[q as usize] || qpow_p(q) != e_q {
            continue;
        }
        // q has order p; its powers span the same extension.
        let mut power = q;
        let mut coset_reps = Vec::with_capacity(p as usize - 1);
        while power != e_q {
            used[power as usize] = true;
            coset_reps.push(reps[power as usize]);
            power = qmul(power, q);
        }
        let mut indices = h_indices.clone();
        for &r in &coset_reps {
            for &x in h_indices {
                indices.push(ops.mul(r, x));
            }
        }
        indices.sort_unstable();
        let mut gens = h_gens.clone();
        gens.push(reps[q as usize]);
        out.push((indices, gens));
    }
    out
}

/// The join-closure lattice engine: all cyclic subgroups, then iterated
/// joins with cyclic atoms until no new subgroup appears. Exponential-ish in
/// practice, so it serves as a cross-check on small groups.
pub fn all_subgroups_join_closure(
    parent: &Arc<MatrixGroup>,
    lattice_budget: u64,
) -> Result<SubgroupLattice> {
    let p = parent.ctx().p();
    if !parent.is_p_group() {
        return Err(Error::NotAPGroup {
            order: parent.order(),
            p,
        });
    }
    if parent.order() > lattice_budget {
        return Err(Error::BudgetExceeded {
            required: parent.order() as u128,
            budget: lattice_budget,
        });
    }
    let id = parent.identity_index();
    let mut dedup: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let mut recs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let push = |dedup: &mut FxHashMap<Vec<u32>, u32>,
                    recs: &mut Vec<(Vec<u32>, Vec<u32>)>,
                    indices: Vec<u32>,
                    gens: Vec<u32>|
     -> Option<u32> {
        if dedup.contains_key(&indices) {
            None
        } else {
            let nid = recs.len() as u32;
            dedup.insert(indices.clone(), nid);
            recs.push((indices, gens));
            Some(nid)
        }
    };

    push(&mut dedup, &mut recs, vec![id], vec![]);
    // Cyclic atoms.
    let mut atoms: Vec<u32> = Vec::new();
    for i in 0..parent.order() as u32 {
        if i == id {
            continue;
        }
        let indices = closure_indices(parent, &[i]);
        if let Some(nid) = push(&mut dedup, &mut recs, indices, vec![i]) {
            atoms.push(nid);
        }
    }
    // Iterated joins with atoms.
    let mut head = 0usize;
    while head < recs.len() {
        let hid = head as u32;
        head += 1;
        let mut found = Vec::new();
        {
            let (h_indices, h_gens) = &recs[hid as usize];
            for &aid in &atoms {
                let (a_indices, a_gens) = &recs[aid as usize];
                if a_indices.iter().all(|i| h_indices.binary_search(i).is_ok()) {
                    continue;
                }
                let mut gens = h_gens.clone();
                gens.extend_from_slice(a_gens);
                let join = closure_indices(parent, &gens);
                found.push((join, gens));
            }
        }
        for (indices, gens) in found {
            push(&mut dedup, &mut recs, indices, gens);
        }
    }
    sort_and_wrap(parent, recs)
}

/// Which group conjugation runs over when classifying subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugationAmbient {
    Parent,
    Overgroup,
}

/// Partition the lattice into conjugacy classes under `ambient`, which must
/// contain the lattice's parent. Conjugates that leave the parent are
/// followed through the orbit so that fusion effected by outside elements is
/// still detected.
pub fn conjugacy_classes(
    lat: &SubgroupLattice,
    ambient: &Arc<MatrixGroup>,
) -> Result<ConjugacyClasses> {
    let parent = lat.parent();
    let same = Arc::ptr_eq(parent, ambient)
        || (parent.ctx() == ambient.ctx() && parent.elements() == ambient.elements());
    if !same {
        for m in parent.elements() {
            if !ambient.contains(m) {
                return Err(Error::NotContained);
            }
        }
    }
    let classes = if same {
        classes_under_parent(lat)
    } else {
        classes_under_overgroup(lat, ambient)
    };
    Ok(ConjugacyClasses {
        ambient_label: ambient.kind().label(),
        ambient_order: ambient.order(),
        classes,
    })
}

fn classes_under_parent(lat: &SubgroupLattice) -> Vec<Vec<u32>> {
    let parent = lat.parent();
    let ctx = parent.ctx();
    let n = parent.order() as usize;
    // Conjugation permutations for each parent generator.
    let perms: Vec<Vec<u32>> = parent
        .generators()
        .iter()
        .map(|g| {
            let g_inv = ctx.mat_inverse(*g).expect("invertible");
            (0..n)
                .map(|i| {
                    let y = ctx.conjugate(*g, parent.element(i as u32), g_inv);
                    parent.index_of(&y).expect("closed under conjugation")
                })
                .collect()
        })
        .collect();
    let lookup = lat.id_lookup();
    let mut class_of: Vec<Option<u32>> = vec![None; lat.len()];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for start in 0..lat.len() as u32 {
        if class_of[start as usize].is_some() {
            continue;
        }
        let cid = classes.len() as u32;
        let mut members = vec![start];
        class_of[start as usize] = Some(cid);
        let mut stack = vec![start];
        while let Some(sid) = stack.pop() {
            for perm in &perms {
                let mut image: Vec<u32> = lat
                    .subgroup(sid)
                    .indices()
                    .iter()
                    .map(|&i| perm[i as usize])
                    .collect();
                image.sort_unstable();
                let tid = *lookup
                    .get(image.as_slice())
                    .expect("conjugate of a subgroup is in the complete lattice");
                if class_of[tid as usize].is_none() {
                    class_of[tid as usize] = Some(cid);
                    members.push(tid);
                    stack.push(tid);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

fn classes_under_overgroup(lat: &SubgroupLattice, ambient: &Arc<MatrixGroup>) -> Vec<Vec<u32>> {
    let ctx = ambient.ctx();
    let gens: Vec<(Mat2, Mat2)> = ambient
        .generators()
        .iter()
        .map(|g| (*g, ctx.mat_inverse(*g).expect("invertible")))
        .collect();
    let lookup: FxHashMap<Vec<Mat2>, u32> = lat
        .subgroups()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.mats(), i as u32))
        .collect();
    let mut assigned = vec![false; lat.len()];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for start in 0..lat.len() as u32 {
        if assigned[start as usize] {
            continue;
        }
        let mut members = vec![start];
        assigned[start as usize] = true;
        let start_mats = lat.subgroup(start).mats();
        let mut visited: FxHashSet<Vec<Mat2>> = FxHashSet::default();
        visited.insert(start_mats.clone());
        let mut stack = vec![start_mats];
        while let Some(mats) = stack.pop() {
            for (g, g_inv) in &gens {
                let mut image: Vec<Mat2> = mats
                    .iter()
                    .map(|m| ctx.conjugate(*g, *m, *g_inv))
                    .collect();
                image.sort_unstable();
                if visited.contains(&image) {
                    continue;
                }
                if let Some(&tid) = lookup.get(&image) {
                    if !assigned[tid as usize] {
                        assigned[tid as usize] = true;
                        members.push(tid);
                    }
                }
                visited.insert(image.clone());
                stack.push(image);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// N_ambient(H) = { g : g H g^-1 = H }, returned as a subgroup of `ambient`.
pub fn normalizer(ambient: &Arc<MatrixGroup>, sub: &Subgroup) -> Result<Subgroup> {
    let ctx = ambient.ctx();
    let sub_set: FxHashSet<Mat2> = sub.mats().into_iter().collect();
    for m in &sub_set {
        if !ambient.contains(m) {
            return Err(Error::NotContained);
        }
    }
    let gen_mats = sub.gen_mats();
    let inverses = ambient.inverses();
    let indices: Vec<u32> = (0..ambient.order() as u32)
        .filter(|&g| {
            let gm = ambient.element(g);
            let gi = ambient.element(inverses[g as usize]);
            gen_mats
                .iter()
                .all(|h| sub_set.contains(&ctx.conjugate(gm, *h, gi)))
        })
        .collect();
    Ok(subgroup_from_sorted(ambient, indices))
}

/// C_ambient(H) = { g : gx = xg for every x in H }.
pub fn centralizer(ambient: &Arc<MatrixGroup>, sub: &Subgroup) -> Result<Subgroup> {
    let ctx = ambient.ctx();
    for m in sub.mats() {
        if !ambient.contains(&m) {
            return Err(Error::NotContained);
        }
    }
    let gen_mats = sub.gen_mats();
    let indices: Vec<u32> = (0..ambient.order() as u32)
        .filter(|&g| {
            let gm = ambient.element(g);
            gen_mats
                .iter()
                .all(|h| ctx.mat_mul(gm, *h) == ctx.mat_mul(*h, gm))
        })
        .collect();
    Ok(subgroup_from_sorted(ambient, indices))
}

fn subgroup_from_sorted(parent: &Arc<MatrixGroup>, indices: Vec<u32>) -> Subgroup {
    let provisional = Subgroup::from_parts(parent, indices, vec![]);
    let gens = provisional.minimal_generators();
    Subgroup::from_parts(parent, provisional.indices().to_vec(), gens)
}

/// A finite quotient N/D realized by coset representatives inside the
/// enumerated parent of N.
pub struct QuotientGroup {
    parent: Arc<MatrixGroup>,
    reps: Vec<u32>,
    coset_of: FxHashMap<u32, u32>,
    id_coset: u32,
    numer_order: u64,
    denom_order: u64,
    /// Coset ids of the numerator's generators.
    gens: Vec<u32>,
}

/// Coset decomposition of `numer` by a verified-normal `denom`.
pub fn quotient(numer: &Subgroup, denom: &Subgroup) -> Result<QuotientGroup> {
    let parent = numer.parent();
    if !Arc::ptr_eq(parent, denom.parent()) || !denom.is_subset_of(numer) {
        return Err(Error::NotContained);
    }
    let ops_ctx = parent.ctx();
    let inverses = parent.inverses();
    // Normality of denom in numer, tested on generators.
    for &g in numer.gen_indices() {
        let gm = parent.element(g);
        let gi = parent.element(inverses[g as usize]);
        for &d in denom.gen_indices() {
            let c = ops_ctx.conjugate(gm, parent.element(d), gi);
            let ci = parent.index_of(&c).expect("closed");
            if !denom.contains_index(ci) {
                return Err(Error::NotNormal);
            }
        }
    }
    let mut coset_of: FxHashMap<u32, u32> = FxHashMap::default();
    coset_of.reserve(numer.indices().len());
    let mut reps = Vec::new();
    for &g in numer.indices() {
        if coset_of.contains_key(&g) {
            continue;
        }
        let cid = reps.len() as u32;
        reps.push(g);
        for &d in denom.indices() {
            coset_of.insert(parent.mul_idx(g, d), cid);
        }
    }
    let id_coset = coset_of[&parent.identity_index()];
    let mut gens: Vec<u32> = numer
        .gen_indices()
        .iter()
        .map(|g| coset_of[g])
        .filter(|&c| c != id_coset)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    let q = QuotientGroup {
        parent: Arc::clone(parent),
        reps,
        coset_of,
        id_coset,
        numer_order: numer.order(),
        denom_order: denom.order(),
        gens,
    };
    if q.order() * denom.order() != numer.order() {
        return Err(Error::Inconsistency(
            "coset count does not match the index".into(),
        ));
    }
    Ok(q)
}

impl QuotientGroup {
    pub fn order(&self) -> u64 {
        self.reps.len() as u64
    }

    pub fn numer_order(&self) -> u64 {
        self.numer_order
    }

    pub fn denom_order(&self) -> u64 {
        self.denom_order
    }

    pub fn identity(&self) -> u32 {
        self.id_coset
    }

    /// Canonical representative matrix of a coset.
    pub fn rep_mat(&self, q: u32) -> Mat2 {
        self.parent.element(self.reps[q as usize])
    }

    pub fn coset_of_index(&self, parent_idx: u32) -> Option<u32> {
        self.coset_of.get(&parent_idx).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = self
            .parent
            .mul_idx(self.reps[a as usize], self.reps[b as usize]);
        self.coset_of[&prod]
    }

    pub fn inv(&self, a: u32) -> u32 {
        let inv = self.parent.inverses()[self.reps[a as usize] as usize];
        self.coset_of[&inv]
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut r = self.id_coset;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != self.id_coset {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Spot-check that coset products are representative-independent.
    pub fn verify_well_defined(&self, samples: u64, seed: u64) -> bool {
        let numer: Vec<u32> = self.coset_of.keys().copied().collect();
        let mut numer = numer;
        numer.sort_unstable();
        let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..samples {
            let x = numer[(next() % numer.len() as u64) as usize];
            let y = numer[(next() % numer.len() as u64) as usize];
            let via_parent = self.coset_of[&self.parent.mul_idx(x, y)];
            let via_reps = self.mul(self.coset_of[&x], self.coset_of[&y]);
            if via_parent != via_reps {
                return false;
            }
        }
        true
    }

    /// One Sylow p-subgroup, grown by normalizer lifting from the identity.
    /// Every non-Sylow p-subgroup extends by an order-p coset in its own
    /// normalizer, so scanning the p-elements until no extension applies
    /// always terminates on a full Sylow subgroup.
    pub fn sylow_p(&self) -> Result<Vec<u32>> {
        let p = self.parent.ctx().p();
        let p_part = p_part(self.order(), p);
        // p-elements once, in canonical order: exactly those whose order
        // divides the p-part.
        let p_elements: Vec<u32> = (0..self.order() as u32)
            .filter(|&q| self.pow(q, p_part) == self.id_coset)
            .collect();
        let mut members: Vec<u32> = vec![self.id_coset];
        let mut member_set: FxHashSet<u32> = members.iter().copied().collect();
        let mut gens: Vec<u32> = Vec::new();
        while (members.len() as u64) < p_part {
            let mut found = None;
            'scan: for &q in &p_elements {
                if member_set.contains(&q) || !member_set.contains(&self.pow(q, p)) {
                    continue;
                }
                for &h in &gens {
                    if !member_set.contains(&self.conj(q, h)) {
                        continue 'scan;
                    }
                }
                found = Some(q);
                break;
            }
            let Some(q) = found else { break };
            let mut power = q;
            let snapshot = members.clone();
            while power != self.id_coset {
                for &h in &snapshot {
                    let y = self.mul(power, h);
                    if member_set.insert(y) {
                        members.push(y);
                    }
                }
                power = self.mul(power, q);
            }
            gens.push(q);
        }
        if members.len() as u64 != p_part {
            return Err(Error::Inconsistency(format!(
                "sylow lifting found {} elements, p-part is {}",
                members.len(),
                p_part
            )));
        }
        members.sort_unstable();
        Ok(members)
    }

    /// The largest normal p-subgroup. Starting from one Sylow subgroup,
    /// intersect with conjugates by the quotient's generators until stable:
    /// the fixpoint is normalized by every generator, hence normal, and it
    /// still contains the p-core at every step.
    pub fn core_p(&self) -> Result<Vec<u32>> {
        let sylow = self.sylow_p()?;
        let mut inter: FxHashSet<u32> = sylow.into_iter().collect();
        loop {
            let before = inter.len();
            for &g in &self.gens {
                let gi = self.inv(g);
                let conjugated: FxHashSet<u32> =
                    inter.iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
                inter.retain(|x| conjugated.contains(x));
                if inter.len() == 1 {
                    return Ok(vec![self.id_coset]);
                }
            }
            if inter.len() == before {
                break;
            }
        }
        let mut out: Vec<u32> = inter.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }
}

pub fn p_part(mut order: u64, p: u64) -> u64 {
    let mut out = 1;
    while order % p == 0 {
        order /= p;
        out *= p;
    }
    out
}
