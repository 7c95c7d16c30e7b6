//! Degree-one cohomology of the congruence kernels as modules over the
//! order-p quotient of the Sylow subgroup, the graded exterior-tensor-
//! symmetric model built on them, cohomology of the cyclic group of order p
//! with those coefficients, and the resulting E2 tables.

use crate::arith::{Ctx, Mat2};
use crate::error::{Error, Result};
use crate::fp::FpMat;
use crate::group::MatrixGroup;
use crate::props::{verbal_subgroups, KernelFamily};
use rustc_hash::FxHashMap;
use serde::Serialize;
use std::sync::Arc;

/// A finite-dimensional F_p vector space with named invertible actors.
#[derive(Clone, Debug)]
pub struct FpModule {
    pub p: u64,
    pub dim: usize,
    pub actors: Vec<(String, FpMat)>,
}

impl FpModule {
    pub fn actor(&self, name: &str) -> Result<&FpMat> {
        self.actors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::InvalidActor(format!("no actor named {name}")))
    }
}

/// The canonical lift of the order-p quotient generator: the unitriangular
/// matrix with b = 1.
pub fn canonical_lift() -> Mat2 {
    Mat2::new(1, 1, 0, 1)
}

/// H^1(kernel, F_p) as a module over sylow/kernel = C_p: the dual of the
/// Frattini quotient of the kernel, with the conjugation action of the
/// canonical generator lift carried over contragrediently.
pub fn h1_module(kernel: &Arc<MatrixGroup>, sylow: &Arc<MatrixGroup>) -> Result<FpModule> {
    h1_module_with_lift(kernel, sylow, canonical_lift())
}

/// Same as [`h1_module`] but with an explicit generator lift; any two lifts
/// give conjugate actions, so all isomorphism invariants agree.
pub fn h1_module_with_lift(
    kernel: &Arc<MatrixGroup>,
    sylow: &Arc<MatrixGroup>,
    lift: Mat2,
) -> Result<FpModule> {
    let p = sylow.ctx().p();
    check_kernel_quotient(kernel, sylow)?;
    if !sylow.contains(&lift) || kernel.contains(&lift) {
        return Err(Error::Structure(
            "generator lift must lie in the Sylow group but not the kernel".into(),
        ));
    }
    let (basis, coords) = frattini_quotient_coordinates(kernel)?;
    let dim = basis.len();
    let ctx = kernel.ctx();
    let lift_inv = ctx.mat_inverse(lift)?;
    let mut action = FpMat::zeros(p, dim, dim);
    for (j, &b) in basis.iter().enumerate() {
        let image = ctx.conjugate(lift, b, lift_inv);
        let col = coords
            .get(&image)
            .ok_or_else(|| Error::Structure("conjugation left the kernel".into()))?;
        for (i, &v) in col.iter().enumerate() {
            action.set(i, j, v);
        }
    }
    if !action.pow(p).is_identity() {
        return Err(Error::Inconsistency(
            "induced action does not have order dividing p".into(),
        ));
    }
    // Dual module: contragredient (transpose of the inverse).
    let dual = action.inverse()?.transpose();
    Ok(FpModule {
        p,
        dim,
        actors: vec![("sigma".into(), dual)],
    })
}

fn check_kernel_quotient(kernel: &Arc<MatrixGroup>, sylow: &Arc<MatrixGroup>) -> Result<()> {
    let p = sylow.ctx().p();
    if kernel.ctx() != sylow.ctx() {
        return Err(Error::ContextMismatch {
            expected: sylow.ctx().p(),
            got: kernel.ctx().p(),
        });
    }
    if sylow.order() != kernel.order() * p {
        return Err(Error::Structure(format!(
            "quotient has order {}, expected {p}",
            sylow.order() / kernel.order()
        )));
    }
    for m in kernel.elements() {
        if !sylow.contains(m) {
            return Err(Error::Structure("kernel is not inside the Sylow group".into()));
        }
    }
    let ctx = sylow.ctx();
    for g in sylow.generators() {
        let gi = ctx.mat_inverse(*g)?;
        for k in kernel.generators() {
            if !kernel.contains(&ctx.conjugate(*g, *k, gi)) {
                return Err(Error::Structure("kernel is not normal".into()));
            }
        }
    }
    Ok(())
}

/// A basis of kernel/Frattini(kernel) by greedy coset scan, plus the
/// coordinate vector of every kernel element with respect to it.
pub(crate) fn frattini_quotient_coordinates(
    kernel: &Arc<MatrixGroup>,
) -> Result<(Vec<Mat2>, FxHashMap<Mat2, Vec<u64>>)> {
    let v = verbal_subgroups(kernel)?;
    let ctx = kernel.ctx();
    let p = ctx.p();
    let d = v.d as usize;
    let mut basis: Vec<Mat2> = Vec::with_capacity(d);
    let mut span = v.frattini.indices().to_vec();
    let mut span_gens = v.frattini.gen_indices().to_vec();
    for i in 0..kernel.order() as u32 {
        if span.binary_search(&i).is_ok() {
            continue;
        }
        basis.push(kernel.element(i));
        span_gens.push(i);
        span = crate::group::closure_indices(kernel, &span_gens);
        if basis.len() == d {
            break;
        }
    }
    if basis.len() != d {
        return Err(Error::Inconsistency("could not complete a basis".into()));
    }
    let mut coords: FxHashMap<Mat2, Vec<u64>> = FxHashMap::default();
    coords.reserve(kernel.order() as usize);
    let mut exps = vec![0u64; d];
    loop {
        // product b1^e1 ... bd^ed over the current exponent tuple
        let mut prod = Mat2::identity();
        for (b, &e) in basis.iter().zip(&exps) {
            prod = ctx.mat_mul(prod, ctx.mat_pow(*b, e));
        }
        for phi in v.frattini.mats() {
            let elem = ctx.mat_mul(prod, phi);
            coords.entry(elem).or_insert_with(|| exps.clone());
        }
        // increment the exponent tuple in base p
        let mut carry = 0;
        while carry < d {
            exps[carry] += 1;
            if exps[carry] < p {
                break;
            }
            exps[carry] = 0;
            carry += 1;
        }
        if carry == d {
            break;
        }
    }
    if coords.len() as u64 != kernel.order() {
        return Err(Error::Inconsistency(
            "coset coordinates do not cover the kernel".into(),
        ));
    }
    Ok((basis, coords))
}

/// Jordan block sizes (descending) of a unipotent actor of order dividing p;
/// a complete isomorphism invariant for F_p[C_p]-modules.
pub fn module_jordan_type(m: &FpModule, actor: &str) -> Result<Vec<usize>> {
    let a = m.actor(actor)?;
    jordan_type_of(a, m.p)
}

fn jordan_type_of(a: &FpMat, p: u64) -> Result<Vec<usize>> {
    if !a.pow(p).is_identity() {
        return Err(Error::InvalidActor("actor order does not divide p".into()));
    }
    let dim = a.rows();
    let nu = a.sub(&FpMat::identity(a.p(), dim));
    let mut ranks = Vec::with_capacity(p as usize + 2);
    let mut power = FpMat::identity(a.p(), dim);
    for _ in 0..=(p + 1) {
        ranks.push(power.rank());
        power = power.mul(&nu);
    }
    // blocks of size >= s: ranks[s-1] - ranks[s]
    let mut partition = Vec::new();
    for s in (1..=p as usize).rev() {
        let at_least_s = ranks[s - 1] - ranks[s];
        let at_least_s1 = if s + 1 <= p as usize + 1 {
            ranks[s] - ranks[s + 1]
        } else {
            0
        };
        for _ in 0..at_least_s.saturating_sub(at_least_s1) {
            partition.push(s);
        }
    }
    debug_assert_eq!(partition.iter().sum::<usize>(), dim);
    Ok(partition)
}

/// All e-element subsets of 0..n in lexicographic order.
fn subsets(n: usize, e: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(e);
    fn rec(start: usize, n: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == e {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, e, cur, out);
            cur.pop();
        }
    }
    rec(0, n, e, &mut cur, &mut out);
    out
}

/// All exponent vectors of total degree s over n variables, lexicographically
/// descending (so y_1^s comes first).
fn exponent_vectors(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    if n == 0 {
        if s == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, s, &mut cur, &mut out);
    out
}

/// e-th exterior power of an actor, via e x e minors.
pub fn wedge_power(a: &FpMat, e: usize) -> FpMat {
    let n = a.rows();
    let basis = subsets(n, e);
    let mut out = FpMat::zeros(a.p(), basis.len(), basis.len());
    for (col, j_set) in basis.iter().enumerate() {
        for (row, i_set) in basis.iter().enumerate() {
            out.set(row, col, a.minor(i_set, j_set));
        }
    }
    out
}

/// s-th symmetric power of an actor, by expanding images of monomials.
pub fn sym_power(a: &FpMat, s: usize) -> FpMat {
    let n = a.rows();
    let p = a.p();
    let basis = exponent_vectors(n, s);
    let position: FxHashMap<&[usize], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let mut out = FpMat::zeros(p, basis.len(), basis.len());
    for (col, alpha) in basis.iter().enumerate() {
        // product over j of (sum_i a[i][j] y_i)^(alpha_j)
        let mut poly: FxHashMap<Vec<usize>, u64> = FxHashMap::default();
        poly.insert(vec![0; n], 1);
        for (j, &mult) in alpha.iter().enumerate() {
            for _ in 0..mult {
                let mut next: FxHashMap<Vec<usize>, u64> = FxHashMap::default();
                for (mono, coef) in &poly {
                    for i in 0..n {
                        let aij = a.get(i, j);
                        if aij == 0 {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2[i] += 1;
                        let slot = next.entry(m2).or_insert(0);
                        *slot = (*slot + coef * aij) % p;
                    }
                }
                poly = next;
            }
        }
        for (mono, coef) in poly {
            if coef != 0 {
                out.set(position[mono.as_slice()], col, coef);
            }
        }
    }
    out
}

/// One monomial of the graded model: a wedge of degree-1 generators times a
/// monomial in the degree-2 generators.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GradedMonomial {
    pub wedge: Vec<usize>,
    pub sym: Vec<usize>,
}

/// Degree-`degree` piece of Lambda(M) tensor S(M) with generators of M in
/// degree 1 (exterior) and degree 2 (symmetric). Blocks are ordered by
/// ascending exterior degree; monomial orders are documented on the
/// generating functions.
pub struct GradedPiece {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<GradedMonomial>,
    pub actors: Vec<(String, FpMat)>,
}

impl GradedPiece {
    pub fn actor(&self, name: &str) -> Result<&FpMat> {
        self.actors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::InvalidActor(format!("no actor named {name}")))
    }
}

pub fn graded_piece(m: &FpModule, degree: usize) -> GradedPiece {
    let k = m.dim;
    let p = m.p;
    let mut blocks: Vec<(usize, usize)> = Vec::new(); // (e, s)
    let mut e = degree % 2;
    while e <= degree.min(k) {
        let s = (degree - e) / 2;
        blocks.push((e, s));
        e += 2;
    }
    let mut basis = Vec::new();
    for &(e, s) in &blocks {
        let wedges = subsets(k, e);
        let syms = exponent_vectors(k, s);
        for w in &wedges {
            for sy in &syms {
                basis.push(GradedMonomial {
                    wedge: w.clone(),
                    sym: sy.clone(),
                });
            }
        }
    }
    let dim = basis.len();
    let actors = m
        .actors
        .iter()
        .map(|(name, a)| {
            let mut full = FpMat::zeros(p, dim, dim);
            let mut offset = 0usize;
            for &(e, s) in &blocks {
                let block = wedge_power(a, e).kron(&sym_power(a, s));
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        full.set(offset + i, offset + j, block.get(i, j));
                    }
                }
                offset += block.rows();
            }
            (name.clone(), full)
        })
        .collect();
    GradedPiece {
        degree,
        dim,
        basis,
        actors,
    }
}

/// Cohomology dimensions of C_p with coefficients in a module given by a
/// single unipotent actor, from the 2-periodic resolution: degree 0 is the
/// fixed space, odd degrees are ker(norm)/im(sigma - 1), positive even
/// degrees are ker(sigma - 1)/im(norm).
pub fn cp_cohomology_dims(sigma: &FpMat, p: u64, degree: usize) -> Result<usize> {
    if !sigma.pow(p).is_identity() {
        return Err(Error::InvalidActor("actor order does not divide p".into()));
    }
    let dim = sigma.rows();
    let one = FpMat::identity(sigma.p(), dim);
    let nu = sigma.sub(&one);
    if degree == 0 {
        return Ok(nu.kernel_dim());
    }
    let mut norm = FpMat::zeros(sigma.p(), dim, dim);
    let mut power = one;
    for _ in 0..p {
        norm = norm.add(&power);
        power = power.mul(sigma);
    }
    debug_assert!(norm.mul(&nu).rank() == 0 && nu.mul(&norm).rank() == 0);
    if degree % 2 == 1 {
        Ok(norm.kernel_dim() - nu.rank())
    } else {
        Ok(nu.kernel_dim() - norm.rank())
    }
}

pub fn cp_cohomology(m: &FpModule, actor: &str, degree: usize) -> Result<usize> {
    cp_cohomology_dims(m.actor(actor)?, m.p, degree)
}

pub fn cp_cohomology_graded(piece: &GradedPiece, actor: &str, p: u64, degree: usize) -> Result<usize> {
    cp_cohomology_dims(piece.actor(actor)?, p, degree)
}

/// The E2 page of the reduction-mod-p extension of a Sylow subgroup:
/// cell (i, j) is H^i(C_p, -) of the degree-j graded piece.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct E2Table {
    pub p: u64,
    pub n: u32,
    pub kind: String,
    pub caps: (usize, usize),
    /// dims[i][j]
    pub dims: Vec<Vec<u64>>,
}

impl E2Table {
    pub fn cell(&self, i: usize, j: usize) -> u64 {
        self.dims[i][j]
    }

    /// CSV rendering: header row of i values, then rows with j descending.
    pub fn to_csv(&self) -> String {
        let (cap_i, cap_j) = self.caps;
        let mut out = String::new();
        out.push_str("j\\i");
        for i in 0..=cap_i {
            out.push_str(&format!(",{i}"));
        }
        out.push('\n');
        for j in (0..=cap_j).rev() {
            out.push_str(&j.to_string());
            for i in 0..=cap_i {
                out.push_str(&format!(",{}", self.dims[i][j]));
            }
            out.push('\n');
        }
        out
    }

    /// Cells at which two tables differ.
    pub fn diff(&self, other: &E2Table) -> Vec<(usize, usize, u64, u64)> {
        let cap_i = self.caps.0.min(other.caps.0);
        let cap_j = self.caps.1.min(other.caps.1);
        let mut out = Vec::new();
        for i in 0..=cap_i {
            for j in 0..=cap_j {
                if self.dims[i][j] != other.dims[i][j] {
                    out.push((i, j, self.dims[i][j], other.dims[i][j]));
                }
            }
        }
        out
    }
}

pub fn e2_page(
    ctx: Ctx,
    family: KernelFamily,
    caps: (usize, usize),
    budget: u64,
) -> Result<E2Table> {
    if ctx.n() < 2 {
        return Err(Error::OutOfRange(
            "the reduction-mod-p extension needs n >= 2".into(),
        ));
    }
    let sylow = MatrixGroup::build(ctx, family.sylow_kind(), budget)?;
    let kernel = MatrixGroup::build(ctx, family.kernel_kind(1), budget)?;
    let module = h1_module(&kernel, &sylow)?;
    e2_from_module(&module, ctx, family, caps)
}

pub fn e2_from_module(
    module: &FpModule,
    ctx: Ctx,
    family: KernelFamily,
    caps: (usize, usize),
) -> Result<E2Table> {
    let (cap_i, cap_j) = caps;
    let mut dims = vec![vec![0u64; cap_j + 1]; cap_i + 1];
    for j in 0..=cap_j {
        let piece = graded_piece(module, j);
        let sigma = piece.actor("sigma")?;
        for (i, row) in dims.iter_mut().enumerate() {
            row[j] = cp_cohomology_dims(sigma, module.p, i)? as u64;
        }
    }
    Ok(E2Table {
        p: ctx.p(),
        n: ctx.n(),
        kind: match family {
            KernelFamily::Sl => "sl".into(),
            KernelFamily::Gl => "gl".into(),
        },
        caps,
        dims,
    })
}

/// Coefficients of (1+t)^k / (1-t^2)^k through degree `cap`, by exact power
/// series division. The independent count oracle for the graded pieces.
pub fn poincare_series(k: usize, cap: usize) -> Vec<u64> {
    // numerator (1+t)^k
    let mut num = vec![0i64; cap + 1];
    for (e, slot) in num.iter_mut().enumerate() {
        *slot = binomial(k, e);
    }
    // denominator (1-t^2)^k
    let mut den = vec![0i64; cap + 1];
    for j in 0..=cap / 2 {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        den[2 * j] = sign * binomial(k, j);
    }
    // inverse of den as a power series (den[0] = 1)
    let mut inv = vec![0i64; cap + 1];
    inv[0] = 1;
    for m in 1..=cap {
        let mut acc = 0i64;
        for i in 1..=m {
            acc += den[i] * inv[m - i];
        }
        inv[m] = -acc;
    }
    // num * inv
    let mut out = vec![0u64; cap + 1];
    for (m, slot) in out.iter_mut().enumerate() {
        let mut acc = 0i64;
        for i in 0..=m {
            acc += num[i] * inv[m - i];
        }
        assert!(acc >= 0, "series coefficients must be nonnegative");
        *slot = acc as u64;
    }
    out
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}
