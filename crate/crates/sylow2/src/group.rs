//! Construction and enumeration of the finite matrix groups under study:
//! GL2 / SL2 over Z/p^n, their Sylow p-subgroups, and the congruence
//! kernels of entrywise reduction mod p^m.

use crate::arith::{Ctx, Mat2};
use crate::error::{Error, Result};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::{Arc, OnceLock};

pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Which of the named groups a [`MatrixGroup`] is.
///
/// `KernelGl { level: m }` is the kernel of entrywise reduction mod p^m on
/// GL2(Z/p^n) (all matrices `1 + p^m X`); `KernelSl` additionally requires
/// determinant exactly 1. `level = n` gives the trivial kernel of the
/// identity reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Gl,
    Sl,
    SylowGl,
    SylowSl,
    KernelGl { level: u32 },
    KernelSl { level: u32 },
    Custom,
}

impl GroupKind {
    pub fn label(&self) -> String {
        match self {
            GroupKind::Gl => "gl".into(),
            GroupKind::Sl => "sl".into(),
            GroupKind::SylowGl => "sylow-gl".into(),
            GroupKind::SylowSl => "sylow-sl".into(),
            GroupKind::KernelGl { level } => format!("kernel-gl({level})"),
            GroupKind::KernelSl { level } => format!("kernel-sl({level})"),
            GroupKind::Custom => "custom".into(),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Closed-form order of each named kind, computed in u128 so oversized
/// parameters can still be reported before any enumeration is attempted.
pub fn closed_form_order(ctx: Ctx, kind: GroupKind) -> Option<u128> {
    let p = ctx.p() as u128;
    let n = ctx.n() as u128;
    let ppow = |e: u128| p.checked_pow(e as u32);
    match kind {
        GroupKind::Gl => ppow(4 * n - 3).and_then(|v| {
            v.checked_mul((p - 1) * (p - 1))
                .and_then(|v| v.checked_mul(p + 1))
        }),
        GroupKind::Sl => ppow(3 * n - 2)
            .and_then(|v| v.checked_mul((p - 1) * (p + 1))),
        GroupKind::SylowGl => ppow(4 * n - 3),
        GroupKind::SylowSl => ppow(3 * n - 2),
        GroupKind::KernelGl { level } => ppow(4 * (n - level as u128)),
        GroupKind::KernelSl { level } => ppow(3 * (n - level as u128)),
        GroupKind::Custom => None,
    }
}

/// A finite group of 2x2 matrices with a fully enumerated element set.
///
/// Elements are stored in the canonical (lexicographic) order, which makes
/// every downstream report reproducible. Groups are immutable once built and
/// are shared behind `Arc`.
pub struct MatrixGroup {
    ctx: Ctx,
    kind: GroupKind,
    elements: Vec<Mat2>,
    index: FxHashMap<Mat2, u32>,
    gens: OnceLock<Vec<Mat2>>,
    inverses: OnceLock<Vec<u32>>,
}

impl PartialEq for MatrixGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.elements == other.elements
    }
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MatrixGroup({} over {}, order {})",
            self.kind,
            self.ctx,
            self.order()
        )
    }
}

impl MatrixGroup {
    /// Build one of the named groups by direct parametrization of its shape.
    pub fn build(ctx: Ctx, kind: GroupKind, budget: u64) -> Result<Arc<MatrixGroup>> {
        if let GroupKind::KernelGl { level } | GroupKind::KernelSl { level } = kind {
            if level == 0 || level > ctx.n() {
                return Err(Error::InvalidParameter(format!(
                    "kernel level must satisfy 1 <= m <= n, got m={} for n={}",
                    level,
                    ctx.n()
                )));
            }
        }
        let expected = closed_form_order(ctx, kind)
            .ok_or_else(|| Error::InvalidParameter("order overflows u128".into()))?;
        if expected > budget as u128 {
            return Err(Error::BudgetExceeded {
                required: expected,
                budget,
            });
        }

        let mut elements = match kind {
            GroupKind::Gl => enumerate_gl(ctx),
            GroupKind::Sl => enumerate_sl(ctx),
            GroupKind::SylowGl => enumerate_sylow_gl(ctx),
            GroupKind::SylowSl => enumerate_sylow_sl(ctx),
            GroupKind::KernelGl { level } => enumerate_kernel(ctx, level, false),
            GroupKind::KernelSl { level } => enumerate_kernel(ctx, level, true),
            GroupKind::Custom => {
                return Err(Error::InvalidParameter(
                    "custom groups are built from generators".into(),
                ))
            }
        };
        elements.sort_unstable();
        if elements.len() as u128 != expected {
            return Err(Error::Inconsistency(format!(
                "enumerated {} elements for {} over {}, closed form predicts {}",
                elements.len(),
                kind,
                ctx,
                expected
            )));
        }
        let group = Arc::new(MatrixGroup::from_sorted(ctx, kind, elements));
        if matches!(kind, GroupKind::Gl | GroupKind::Sl) {
            // The elementary generators must span; pin that down right away.
            let gens = standard_generators(ctx, kind);
            let span = closure_set_len(&group, &gens);
            if span != group.order() {
                return Err(Error::Inconsistency(format!(
                    "standard generators span {span} of {} elements",
                    group.order()
                )));
            }
            group.gens.set(gens).ok();
        }
        Ok(group)
    }

    /// Breadth-first closure of a generating set inside GL2(Z/p^n).
    pub fn closure_from_generators(
        ctx: Ctx,
        gens: &[Mat2],
        budget: u64,
    ) -> Result<Arc<MatrixGroup>> {
        for g in gens {
            if !g.is_reduced(ctx) {
                return Err(Error::InvalidElement(format!(
                    "generator {g} is not reduced mod {}",
                    ctx.modulus()
                )));
            }
            let det = ctx.det(*g);
            if det % ctx.p() == 0 {
                return Err(Error::SingularMatrix {
                    det,
                    modulus: ctx.modulus(),
                });
            }
        }
        let mut seen: FxHashMap<Mat2, u32> = FxHashMap::default();
        let mut elements = vec![Mat2::identity()];
        seen.insert(Mat2::identity(), 0);
        let mut head = 0usize;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for g in gens {
                let y = ctx.mat_mul(x, *g);
                if !seen.contains_key(&y) {
                    if elements.len() as u64 >= budget {
                        return Err(Error::BudgetExceeded {
                            required: elements.len() as u128 + 1,
                            budget,
                        });
                    }
                    seen.insert(y, elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        elements.sort_unstable();
        let group = MatrixGroup::from_sorted(ctx, GroupKind::Custom, elements);
        group.gens.set(gens.to_vec()).ok();
        Ok(Arc::new(group))
    }

    fn from_sorted(ctx: Ctx, kind: GroupKind, elements: Vec<Mat2>) -> MatrixGroup {
        let mut index = FxHashMap::default();
        index.reserve(elements.len());
        for (i, m) in elements.iter().enumerate() {
            index.insert(*m, i as u32);
        }
        MatrixGroup {
            ctx,
            kind,
            elements,
            index,
            gens: OnceLock::new(),
            inverses: OnceLock::new(),
        }
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> Mat2 {
        self.elements[i as usize]
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.index.contains_key(m)
    }

    pub fn index_of(&self, m: &Mat2) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn identity_index(&self) -> u32 {
        self.index[&Mat2::identity()]
    }

    /// Index-level product; both inputs must be valid indices.
    pub fn mul_idx(&self, i: u32, j: u32) -> u32 {
        let m = self
            .ctx
            .mat_mul(self.elements[i as usize], self.elements[j as usize]);
        self.index[&m]
    }

    /// Per-element inverse indices, computed once on first use.
    pub fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|m| {
                    let inv = self
                        .ctx
                        .mat_inverse(*m)
                        .expect("group elements are invertible");
                    self.index[&inv]
                })
                .collect()
        })
    }

    /// A small generating set. Full GL/SL carry their standard generators;
    /// everything else gets a greedy, canonically-ordered set.
    pub fn generators(&self) -> &[Mat2] {
        self.gens.get_or_init(|| greedy_generators(self))
    }

    /// True if the order is a power of the context prime.
    pub fn is_p_group(&self) -> bool {
        let mut o = self.order();
        while o % self.ctx.p() == 0 {
            o /= self.ctx.p();
        }
        o == 1
    }
}

/// Elementary generators: E and F for SL, plus diag(r, 1) with r a primitive
/// root mod p^n for GL.
pub fn standard_generators(ctx: Ctx, kind: GroupKind) -> Vec<Mat2> {
    let e = Mat2::new(1, 1, 0, 1);
    let f = Mat2::new(1, 0, 1, 1);
    match kind {
        GroupKind::Sl => vec![e, f],
        GroupKind::Gl => vec![e, f, Mat2::new(primitive_root(ctx), 0, 0, 1)],
        _ => unreachable!("standard generators only for full GL/SL"),
    }
}

/// Smallest primitive root of the (cyclic) unit group mod p^n, p odd.
pub fn primitive_root(ctx: Ctx) -> u64 {
    let p = ctx.p();
    let modulus = ctx.modulus();
    let phi = modulus / p * (p - 1);
    let mut prime_divisors = vec![];
    let mut rem = phi;
    let mut d = 2;
    while d * d <= rem {
        if rem % d == 0 {
            prime_divisors.push(d);
            while rem % d == 0 {
                rem /= d;
            }
        }
        d += 1;
    }
    if rem > 1 {
        prime_divisors.push(rem);
    }
    let pow_mod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= modulus;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % modulus;
            }
            b = b * b % modulus;
            e >>= 1;
        }
        r
    };
    (2..modulus)
        .filter(|r| r % p != 0)
        .find(|&r| prime_divisors.iter().all(|&q| pow_mod(r, phi / q) != 1))
        .expect("unit group mod p^n is cyclic for odd p")
}

fn greedy_generators(g: &MatrixGroup) -> Vec<Mat2> {
    let mut gens: Vec<Mat2> = Vec::new();
    let mut covered = vec![false; g.elements.len()];
    covered[g.identity_index() as usize] = true;
    let mut covered_count = 1u64;
    for i in 0..g.elements.len() {
        if covered[i] {
            continue;
        }
        gens.push(g.elements[i]);
        // Re-close over the enlarged generating set.
        let mut stack: Vec<u32> = covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(j, _)| j as u32)
            .collect();
        while let Some(j) = stack.pop() {
            for gen in &gens {
                let y = g.ctx.mat_mul(g.elements[j as usize], *gen);
                let yi = g.index[&y];
                if !covered[yi as usize] {
                    covered[yi as usize] = true;
                    covered_count += 1;
                    stack.push(yi);
                }
            }
        }
        if covered_count == g.order() {
            break;
        }
    }
    gens
}

fn closure_set_len(g: &MatrixGroup, gens: &[Mat2]) -> u64 {
    closure_indices(g, &gens.iter().map(|m| g.index[m]).collect::<Vec<_>>()).len() as u64
}

/// Sorted index set of the subgroup generated by `seed` inside `g`.
pub fn closure_indices(g: &MatrixGroup, seed: &[u32]) -> Vec<u32> {
    let mut in_set = vec![false; g.elements.len()];
    let id = g.identity_index();
    in_set[id as usize] = true;
    let mut out = vec![id];
    let seed_mats: Vec<Mat2> = seed.iter().map(|&i| g.elements[i as usize]).collect();
    let mut stack: Vec<u32> = vec![id];
    while let Some(i) = stack.pop() {
        let x = g.elements[i as usize];
        for s in &seed_mats {
            let y = g.ctx.mat_mul(x, *s);
            let yi = g.index[&y];
            if !in_set[yi as usize] {
                in_set[yi as usize] = true;
                out.push(yi);
                stack.push(yi);
            }
        }
    }
    out.sort_unstable();
    out
}

fn enumerate_gl(ctx: Ctx) -> Vec<Mat2> {
    let m = ctx.modulus();
    let p = ctx.p();
    let mut out = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let mat = Mat2::new(a, b, c, d);
                    if ctx.det(mat) % p != 0 {
                        out.push(mat);
                    }
                }
            }
        }
    }
    out
}

/// Solutions x of coef * x = rhs mod p^n.
fn solve_linear(ctx: Ctx, coef: u64, rhs: u64, out: &mut Vec<u64>) {
    out.clear();
    let m = ctx.modulus();
    if coef == 0 {
        if rhs == 0 {
            out.extend(0..m);
        }
        return;
    }
    let v = ctx.valuation(coef);
    if ctx.valuation(rhs) < v {
        return;
    }
    let pv = ctx.p_pow(v);
    let unit = coef / pv;
    let reduced_mod = m / pv; // p^(n-v)
    let inv = {
        // invert the unit mod p^(n-v) by Euclid on the smaller modulus
        let (mut r0, mut r1) = (reduced_mod as i128, (unit % reduced_mod) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        let md = reduced_mod as i128;
        (((s0 % md) + md) % md) as u64
    };
    let x0 = (rhs / pv) % reduced_mod * inv % reduced_mod;
    for t in 0..pv {
        out.push(x0 + t * reduced_mod);
    }
}

fn enumerate_sl(ctx: Ctx) -> Vec<Mat2> {
    let m = ctx.modulus();
    let mut out = Vec::new();
    let mut sols = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                // a*d - b*c = 1
                let rhs = (1 + b * c) % m;
                solve_linear(ctx, a, rhs, &mut sols);
                for &d in &sols {
                    out.push(Mat2::new(a, b, c, d));
                }
            }
        }
    }
    out
}

fn enumerate_sylow_gl(ctx: Ctx) -> Vec<Mat2> {
    let m = ctx.modulus();
    let p = ctx.p();
    let q = m / p; // p^(n-1)
    let mut out = Vec::new();
    for a in 0..q {
        for c in 0..q {
            for d in 0..q {
                for b in 0..m {
                    out.push(Mat2::new(1 + p * a, b, p * c, 1 + p * d));
                }
            }
        }
    }
    out
}

fn enumerate_sylow_sl(ctx: Ctx) -> Vec<Mat2> {
    let m = ctx.modulus();
    let p = ctx.p();
    let q = m / p;
    let mut out = Vec::new();
    let mut sols = Vec::new();
    for a in 0..q {
        for c in 0..q {
            for d in 0..q {
                // (1+pa)(1+pd) - b*pc = 1
                let rhs = ((1 + p * a) * (1 + p * d) + m - 1) % m;
                solve_linear(ctx, p * c % m, rhs, &mut sols);
                for &b in &sols {
                    out.push(Mat2::new(1 + p * a, b, p * c, 1 + p * d));
                }
            }
        }
    }
    out
}

fn enumerate_kernel(ctx: Ctx, level: u32, det_one: bool) -> Vec<Mat2> {
    let m = ctx.modulus();
    let pm = ctx.p_pow(level);
    let q = m / pm; // p^(n - level): distinct values of each p^m * x entry
    let mut out = Vec::new();
    for xa in 0..q {
        for xb in 0..q {
            for xc in 0..q {
                for xd in 0..q {
                    let mat = Mat2::new(
                        (1 + pm * xa) % m,
                        pm * xb % m,
                        pm * xc % m,
                        (1 + pm * xd) % m,
                    );
                    if !det_one || ctx.det(mat) == 1 {
                        out.push(mat);
                    }
                }
            }
        }
    }
    out
}

/// The depth-shifting isomorphism between top congruence kernels:
/// `1 + p^(m-1) X  |->  1 + p^(n-1) (X mod p)`, for contexts with the same p.
pub fn theta(x: Mat2, from: Ctx, to: Ctx) -> Result<Mat2> {
    if from.p() != to.p() {
        return Err(Error::ContextMismatch {
            expected: from.p(),
            got: to.p(),
        });
    }
    if from.n() < 2 || to.n() < 2 {
        return Err(Error::InvalidParameter(
            "top congruence kernels require exponent at least 2".into(),
        ));
    }
    let depth = from.p_pow(from.n() - 1);
    let shape_ok = (x.a + depth - 1) % depth == 0
        && x.b % depth == 0
        && x.c % depth == 0
        && (x.d + depth - 1) % depth == 0
        && x.is_reduced(from);
    if !shape_ok {
        return Err(Error::InvalidElement(format!(
            "{x} is not of the form 1 + {depth} * X"
        )));
    }
    let p = from.p();
    // X is only defined mod p at this depth.
    let xa = (x.a / depth) % p;
    let xb = (x.b / depth) % p;
    let xc = (x.c / depth) % p;
    let xd = (x.d / depth) % p;
    let target_depth = to.p_pow(to.n() - 1);
    let m = to.modulus();
    Ok(Mat2::new(
        (1 + target_depth * xa) % m,
        target_depth * xb % m,
        target_depth * xc % m,
        (1 + target_depth * xd) % m,
    ))
}

/// Least k >= 1 with x^k = 1; errors when x is not in the group.
pub fn element_order(x: Mat2, g: &MatrixGroup) -> Result<u64> {
    if !g.contains(&x) {
        return Err(Error::NotAMember);
    }
    let ctx = g.ctx();
    let mut y = x;
    let mut k = 1u64;
    while !y.is_identity() {
        y = ctx.mat_mul(y, x);
        k += 1;
    }
    Ok(k)
}

/// A subgroup of an enumerated parent group, stored as sorted parent indices
/// plus a small generating set.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<MatrixGroup>,
    indices: Vec<u32>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.indices == other.indices
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {:?})", self.order(), self.parent)
    }
}

impl Subgroup {
    pub fn trivial(parent: &Arc<MatrixGroup>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(parent),
            indices: vec![parent.identity_index()],
            gens: vec![],
        }
    }

    pub fn full(parent: &Arc<MatrixGroup>) -> Subgroup {
        let gens = parent
            .generators()
            .iter()
            .map(|m| parent.index_of(m).expect("generators are members"))
            .collect();
        Subgroup {
            parent: Arc::clone(parent),
            indices: (0..parent.order() as u32).collect(),
            gens,
        }
    }

    /// Wrap a closed index set without re-verifying closure.
    pub(crate) fn from_parts(parent: &Arc<MatrixGroup>, indices: Vec<u32>, gens: Vec<u32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            parent: Arc::clone(parent),
            indices,
            gens,
        }
    }

    /// Build from generator indices by closure, then record the result.
    pub fn generated_by(parent: &Arc<MatrixGroup>, gen_indices: &[u32]) -> Subgroup {
        let indices = closure_indices(parent, gen_indices);
        Subgroup::from_parts(parent, indices, gen_indices.to_vec())
    }

    /// Build from an explicit element set, verifying it really is closed.
    pub fn from_elements(parent: &Arc<MatrixGroup>, elements: &[Mat2]) -> Result<Subgroup> {
        let mut indices = Vec::with_capacity(elements.len());
        for m in elements {
            indices.push(parent.index_of(m).ok_or(Error::NotAMember)?);
        }
        indices.sort_unstable();
        indices.dedup();
        let sub = Subgroup::from_parts(parent, indices, vec![]);
        if !sub.verify_closed() {
            return Err(Error::InvalidParameter(
                "element set is not closed under the group law".into(),
            ));
        }
        let gens = sub.minimal_generators();
        Ok(Subgroup {
            gens,
            ..sub
        })
    }

    pub fn parent(&self) -> &Arc<MatrixGroup> {
        &self.parent
    }

    pub fn order(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn gen_indices(&self) -> &[u32] {
        &self.gens
    }

    pub fn gen_mats(&self) -> Vec<Mat2> {
        self.gens
            .iter()
            .map(|&i| self.parent.element(i))
            .collect()
    }

    pub fn contains_index(&self, i: u32) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn contains_mat(&self, m: &Mat2) -> bool {
        self.parent
            .index_of(m)
            .is_some_and(|i| self.contains_index(i))
    }

    pub fn mats(&self) -> Vec<Mat2> {
        self.indices
            .iter()
            .map(|&i| self.parent.element(i))
            .collect()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        debug_assert!(Arc::ptr_eq(&self.parent, &other.parent));
        self.indices.iter().all(|&i| other.contains_index(i))
    }

    /// Direct product-closure re-check: every pairwise product stays inside.
    /// Quadratic, meant for validation rather than construction.
    pub fn verify_closed(&self) -> bool {
        let ctx = self.parent.ctx();
        if !self.contains_index(self.parent.identity_index()) {
            return false;
        }
        for &i in &self.indices {
            for &j in &self.indices {
                let prod = ctx.mat_mul(self.parent.element(i), self.parent.element(j));
                if !self.contains_mat(&prod) {
                    return false;
                }
            }
        }
        true
    }

    /// Greedy generating set scanned in canonical order.
    pub fn minimal_generators(&self) -> Vec<u32> {
        let parent = &self.parent;
        let ctx = parent.ctx();
        let mut gens: Vec<u32> = Vec::new();
        let mut covered: Vec<u32> = vec![parent.identity_index()];
        let mut covered_set: rustc_hash::FxHashSet<u32> =
            covered.iter().copied().collect();
        for &i in &self.indices {
            if covered_set.contains(&i) {
                continue;
            }
            gens.push(i);
            let mut stack = covered.clone();
            while let Some(j) = stack.pop() {
                for &gidx in &gens {
                    let y = ctx.mat_mul(parent.element(j), parent.element(gidx));
                    let yi = parent.index_of(&y).expect("closed in parent");
                    if covered_set.insert(yi) {
                        covered.push(yi);
                        stack.push(yi);
                    }
                }
            }
            if covered.len() == self.indices.len() {
                break;
            }
        }
        gens
    }
}
