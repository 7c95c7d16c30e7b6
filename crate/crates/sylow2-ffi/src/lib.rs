//! C ABI over the sylow2 engine: opaque handles, integer error codes, and
//! JSON strings for structured reports. Every entry point catches panics;
//! nothing unwinds across the boundary.

use libc::c_char;
use std::ffi::CString;
use std::panic::{catch_unwind, UnwindSafe};
use std::sync::Arc;
use sylow2::cohomology::e2_page;
use sylow2::error::Error;
use sylow2::fusion::{stable_ingredients, FusionOptions};
use sylow2::group::{element_order, GroupKind, MatrixGroup};
use sylow2::lattice::all_subgroups;
use sylow2::props::{
    is_abelian, is_elementary_abelian, is_powerful, omega_extendable_witness, pth_roots_report,
    KernelFamily,
};
use sylow2::report::{to_json_string, E2Report, FusionReportJson, VerifyReport};
use sylow2::{Ctx, Mat2};

/// Success.
pub const SYLOW2_OK: i32 = 0;
/// Null pointer, unknown enum value, or invalid parameters (bad prime,
/// exponent, kernel level, oversized modulus).
pub const SYLOW2_ERR_INVALID_ARGUMENT: i32 = -1;
/// The computation would exceed the element or lattice budget.
pub const SYLOW2_ERR_BUDGET: i32 = -2;
/// A matrix with non-unit determinant where a unit was required.
pub const SYLOW2_ERR_SINGULAR: i32 = -3;
/// An element outside the group it was claimed to belong to.
pub const SYLOW2_ERR_NOT_MEMBER: i32 = -4;
/// A structural precondition failed (normality, containment, actor order).
pub const SYLOW2_ERR_STRUCTURE: i32 = -5;
/// An internal verification failed or a panic was caught.
pub const SYLOW2_ERR_INTERNAL: i32 = -6;

/// Group kinds for sylow2_group_new.
pub const SYLOW2_KIND_GL: i32 = 0;
pub const SYLOW2_KIND_SL: i32 = 1;
pub const SYLOW2_KIND_SYLOW_GL: i32 = 2;
pub const SYLOW2_KIND_SYLOW_SL: i32 = 3;
pub const SYLOW2_KIND_KERNEL_GL: i32 = 4;
pub const SYLOW2_KIND_KERNEL_SL: i32 = 5;

/// Family selector for verify/e2/fusion entry points.
pub const SYLOW2_FAMILY_SL: i32 = 0;
pub const SYLOW2_FAMILY_GL: i32 = 1;

/// Properties for sylow2_verify.
pub const SYLOW2_PROP_ELEMENTARY_ABELIAN: i32 = 0;
pub const SYLOW2_PROP_ABELIAN: i32 = 1;
pub const SYLOW2_PROP_POWERFUL: i32 = 2;
pub const SYLOW2_PROP_OMEGA_EXTENDABLE: i32 = 3;
pub const SYLOW2_PROP_PTH_ROOTS: i32 = 4;

/// Opaque arithmetic context (odd prime p, exponent n).
pub struct Sylow2Ctx {
    inner: Ctx,
}

/// Opaque enumerated matrix group.
pub struct Sylow2Group {
    inner: Arc<MatrixGroup>,
}

fn err_code(e: &Error) -> i32 {
    match e {
        Error::InvalidPrime(_)
        | Error::InvalidExponent
        | Error::ModulusTooLarge { .. }
        | Error::InvalidParameter(_)
        | Error::InvalidReduction { .. }
        | Error::ContextMismatch { .. }
        | Error::InvalidElement(_)
        | Error::OutOfRange(_) => SYLOW2_ERR_INVALID_ARGUMENT,
        Error::BudgetExceeded { .. } => SYLOW2_ERR_BUDGET,
        Error::SingularMatrix { .. } => SYLOW2_ERR_SINGULAR,
        Error::NotAMember => SYLOW2_ERR_NOT_MEMBER,
        Error::NotContained
        | Error::NotNormal
        | Error::NotAPGroup { .. }
        | Error::Structure(_)
        | Error::InvalidActor(_) => SYLOW2_ERR_STRUCTURE,
        Error::Inconsistency(_) | Error::Cache(_) | Error::Io(_) => SYLOW2_ERR_INTERNAL,
    }
}

fn guarded<F: FnOnce() -> i32 + UnwindSafe>(f: F) -> i32 {
    catch_unwind(f).unwrap_or(SYLOW2_ERR_INTERNAL)
}

fn kind_from_code(kind: i32, level: u32) -> Option<GroupKind> {
    match kind {
        SYLOW2_KIND_GL => Some(GroupKind::Gl),
        SYLOW2_KIND_SL => Some(GroupKind::Sl),
        SYLOW2_KIND_SYLOW_GL => Some(GroupKind::SylowGl),
        SYLOW2_KIND_SYLOW_SL => Some(GroupKind::SylowSl),
        SYLOW2_KIND_KERNEL_GL => Some(GroupKind::KernelGl { level }),
        SYLOW2_KIND_KERNEL_SL => Some(GroupKind::KernelSl { level }),
        _ => None,
    }
}

fn family_from_code(family: i32) -> Option<KernelFamily> {
    match family {
        SYLOW2_FAMILY_SL => Some(KernelFamily::Sl),
        SYLOW2_FAMILY_GL => Some(KernelFamily::Gl),
        _ => None,
    }
}

fn hand_out_string(s: String, out: *mut *mut c_char) -> i32 {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SYLOW2_OK
        }
        Err(_) => SYLOW2_ERR_INTERNAL,
    }
}

/// Create an arithmetic context for the odd prime `p` and exponent `n`.
///
/// # Safety
/// `out` must be a valid pointer; the result must be freed with
/// `sylow2_ctx_free`.
#[no_mangle]
pub unsafe extern "C" fn sylow2_ctx_new(p: u64, n: u32, out: *mut *mut Sylow2Ctx) -> i32 {
    if out.is_null() {
        return SYLOW2_ERR_INVALID_ARGUMENT;
    }
    guarded(|| match Ctx::new(p, n) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(Sylow2Ctx { inner })) };
            SYLOW2_OK
        }
        Err(e) => err_code(&e),
    })
}

/// # Safety
/// `ctx` must come from `sylow2_ctx_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sylow2_ctx_free(ctx: *mut Sylow2Ctx) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// Enumerate one of the named groups. `level` is the kernel level for the
/// kernel kinds and ignored otherwise; `budget` caps the element count.
///
/// # Safety
/// `ctx` must be a live context handle and `out` a valid pointer; the
/// result must be freed with `sylow2_group_free`.
#[no_mangle]
pub unsafe extern "C" fn sylow2_group_new(
    ctx: *const Sylow2Ctx,
    kind: i32,
    level: u32,
    budget: u64,
    out: *mut *mut Sylow2Group,
) -> i32 {
    if ctx.is_null() || out.is_null() {
        return SYLOW2_ERR_INVALID_ARGUMENT;
    }
    let ctx = unsafe { &*ctx }.inner;
    guarded(move || {
        let Some(kind) = kind_from_code(kind, level) else {
            return SYLOW2_ERR_INVALID_ARGUMENT;
        };
        match MatrixGroup::build(ctx, kind, budget) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(Sylow2Group { inner })) };
                SYLOW2_OK
            }
            Err(e) => err_code(&e),
        }
    })
}

/// # Safety
/// `group` must come from `sylow2_group_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sylow2_group_free(group: *mut Sylow2Group) {
    if !group.is_null() {
        drop(unsafe { Box::from_raw(group) });
    }
}

/// # Safety
/// `group` must be a live group handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sylow2_group_order(group: *const Sylow2Group, out: *mut u64) -> i32 {
    if group.is_null() || out.is_null() {
        return SYLOW2_ERR_INVALID_ARGUMENT;
    }
    unsafe { *out = (*group).inner.order() };
    SYLOW2_OK
}

/// Multiplicative order of the matrix with row-major `entries`, which must
/// be an element of the group.
///
/// # Safety
/// `group` must be live; `entries` must point to 4 u64 values; `out` must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn sylow2_element_order(
    group: *const Sylow2Group,
    entries: *const u64,
    out: *mut u64,
) -> i32 {
    if group.is_null() || entries.is_null() || out.is_null() {
        return SYLOW2_ERR_INVALID_ARGUMENT;
    }
    let g = unsafe { &(*group).inner };
    let e = unsafe { std::slice::from_raw_parts(entries, 4) };
    let m = Mat2::new(e[0], e[1], e[2], e[3]);
    guarded(move || match element_order(m, g) {
        Ok(order) => {
            unsafe { *out = order };
            SYLOW2_OK
        }
        Err(err) => err_code(&err),
    })
}

/// Check a structural property of a kernel family at (p, n). `holds`
/// receives 1 or 0; when `json_out` is non-null it receives the full report
/// (free with `sylow2_string_free`).
///
/// # Safety
/// `holds` must be valid; `json_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn sylow2_verify(
    p: u64,
    n: u32,
    property: i32,
    family: i32,
    level: u32,
    budget: u64,
    holds: *mut i32,
    json_out: *mut *mut c_char,
) -> i32 {
    if holds.is_null() {
        return SYLOW2_ERR_INVALID_ARGUMENT;
    }
    guarded(move || {
        let Some(fam) = family_from_code(family) else {
            return SYLOW2_ERR_INVALID_ARGUMENT;
        };
        let run = || -> sylow2::Result<(sylow2::props::PropertyReport, String)> {
            let ctx = Ctx::new(p, n)?;
            let kind = fam.kernel_kind(level);
            Ok(match property {
                SYLOW2_PROP_ELEMENTARY_ABELIAN => {
                    let g = MatrixGroup::build(ctx, kind, budget)?;
                    (is_elementary_abelian(&g), kind.label())
                }
                SYLOW2_PROP_ABELIAN => {
                    let g = MatrixGroup::build(ctx, kind, budget)?;
                    (is_abelian(&g), kind.label())
                }
                SYLOW2_PROP_POWERFUL => {
                    let g = MatrixGroup::build(ctx, kind, budget)?;
                    (is_powerful(&g)?, kind.label())
                }
                SYLOW2_PROP_OMEGA_EXTENDABLE => {
                    (omega_extendable_witness(ctx, fam)?, kind.label())
                }
                SYLOW2_PROP_PTH_ROOTS => (pth_roots_report(ctx, fam)?, kind.label()),
                _ => return Err(Error::InvalidParameter("unknown property code".into())),
            })
        };
        match run() {
            Ok((report, label)) => {
                unsafe { *holds = report.holds as i32 };
                if !json_out.is_null() {
                    let name = match property {
                        SYLOW2_PROP_ELEMENTARY_ABELIAN => "elementary-abelian",
                        SYLOW2_PROP_ABELIAN => "abelian",
                        SYLOW2_PROP_POWERFUL => "powerful",
                        SYLOW2_PROP_OMEGA_EXTENDABLE => "omega-extendable",
                        _ => "pth-roots",
                    };
                    let json =
                        to_json_string(&VerifyReport::from_property(&report, p, n, name, &label));
                    return hand_out_string(json, json_out);
                }
                SYLOW2_OK
            }
            Err(e) => err_code(&e),
        }
    })
}

/// E2 table of the reduction-mod-p extension as a JSON string.
///
/// # Safety
/// `out` must be valid; the string must be freed with `sylow2_string_free`.
#[no_mangle]
pub unsafe extern "C" fn sylow2_e2_json(
    p: u64,
    n: u32,
    family: i32,
    cap_i: u32,
    cap_j: u32,
    budget: u64,
    out: *mut *mut c_char,
) -> i32 {
    if out.is_null() {
        return SYLOW2_ERR_INVALID_ARGUMENT;
    }
    guarded(move || {
        let Some(fam) = family_from_code(family) else {
            return SYLOW2_ERR_INVALID_ARGUMENT;
        };
        let run = || -> sylow2::Result<String> {
            let table = e2_page(
                Ctx::new(p, n)?,
                fam,
                (cap_i as usize, cap_j as usize),
                budget,
            )?;
            Ok(to_json_string(&E2Report::from_table(&table)))
        };
        match run() {
            Ok(json) => hand_out_string(json, out),
            Err(e) => err_code(&e),
        }
    })
}

/// Full fusion / stable-elements ingredient report as a JSON string.
///
/// # Safety
/// `out` must be valid; the string must be freed with `sylow2_string_free`.
#[no_mangle]
pub unsafe extern "C" fn sylow2_fusion_json(
    p: u64,
    n: u32,
    family: i32,
    containment_filter: i32,
    budget: u64,
    lattice_budget: u64,
    cap_degree: u32,
    cap_i: u32,
    cap_j: u32,
    out: *mut *mut c_char,
) -> i32 {
    if out.is_null() {
        return SYLOW2_ERR_INVALID_ARGUMENT;
    }
    guarded(move || {
        let Some(fam) = family_from_code(family) else {
            return SYLOW2_ERR_INVALID_ARGUMENT;
        };
        let run = || -> sylow2::Result<String> {
            let ctx = Ctx::new(p, n)?;
            let s = MatrixGroup::build(ctx, fam.sylow_kind(), budget)?;
            let g = MatrixGroup::build(ctx, fam.full_kind(), budget)?;
            let lattice = all_subgroups(&s, lattice_budget)?;
            let opts = FusionOptions {
                containment_filter: containment_filter != 0,
                lattice_budget,
            };
            let ingredients = stable_ingredients(
                &s,
                &g,
                &lattice,
                cap_degree as usize,
                (cap_i as usize, cap_j as usize),
                budget,
                opts,
            )?;
            Ok(to_json_string(&FusionReportJson::new(&ingredients, "sylow")))
        };
        match run() {
            Ok(json) => hand_out_string(json, out),
            Err(e) => err_code(&e),
        }
    })
}

/// Free a string handed out by this library.
///
/// # Safety
/// `s` must come from a sylow2_* function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sylow2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static name for an error code; never null.
#[no_mangle]
pub extern "C" fn sylow2_error_name(code: i32) -> *const c_char {
    let name: &[u8] = match code {
        SYLOW2_OK => b"ok\0",
        SYLOW2_ERR_INVALID_ARGUMENT => b"invalid-argument\0",
        SYLOW2_ERR_BUDGET => b"budget-exceeded\0",
        SYLOW2_ERR_SINGULAR => b"singular-matrix\0",
        SYLOW2_ERR_NOT_MEMBER => b"not-a-member\0",
        SYLOW2_ERR_STRUCTURE => b"structure-error\0",
        SYLOW2_ERR_INTERNAL => b"internal-error\0",
        _ => b"unknown\0",
    };
    name.as_ptr() as *const c_char
}
