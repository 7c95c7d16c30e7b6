//! Exercise the C ABI exactly as a foreign caller would: through the
//! exported extern "C" functions and raw pointers.

use std::ffi::CStr;
use std::ptr;
use sylow2_ffi::*;

const BUDGET: u64 = 1 << 22;

#[test]
fn ctx_and_group_lifecycle() {
    unsafe {
        let mut ctx: *mut Sylow2Ctx = ptr::null_mut();
        assert_eq!(sylow2_ctx_new(3, 2, &mut ctx), SYLOW2_OK);
        assert!(!ctx.is_null());

        let mut group: *mut Sylow2Group = ptr::null_mut();
        assert_eq!(
            sylow2_group_new(ctx, SYLOW2_KIND_SYLOW_SL, 0, BUDGET, &mut group),
            SYLOW2_OK
        );
        let mut order = 0u64;
        assert_eq!(sylow2_group_order(group, &mut order), SYLOW2_OK);
        assert_eq!(order, 81);

        let entries = [1u64, 3, 0, 1];
        let mut elt_order = 0u64;
        assert_eq!(
            sylow2_element_order(group, entries.as_ptr(), &mut elt_order),
            SYLOW2_OK
        );
        assert_eq!(elt_order, 3);

        // not a member
        let bad = [0u64, 1, 1, 0];
        assert_eq!(
            sylow2_element_order(group, bad.as_ptr(), &mut elt_order),
            SYLOW2_ERR_NOT_MEMBER
        );

        sylow2_group_free(group);

        let mut kernel: *mut Sylow2Group = ptr::null_mut();
        assert_eq!(
            sylow2_group_new(ctx, SYLOW2_KIND_KERNEL_SL, 1, BUDGET, &mut kernel),
            SYLOW2_OK
        );
        let mut korder = 0u64;
        sylow2_group_order(kernel, &mut korder);
        assert_eq!(korder, 27);
        sylow2_group_free(kernel);
        sylow2_ctx_free(ctx);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut ctx: *mut Sylow2Ctx = ptr::null_mut();
        assert_eq!(sylow2_ctx_new(2, 2, &mut ctx), SYLOW2_ERR_INVALID_ARGUMENT);
        assert_eq!(sylow2_ctx_new(9, 2, &mut ctx), SYLOW2_ERR_INVALID_ARGUMENT);
        assert_eq!(sylow2_ctx_new(3, 0, &mut ctx), SYLOW2_ERR_INVALID_ARGUMENT);

        assert_eq!(sylow2_ctx_new(3, 2, &mut ctx), SYLOW2_OK);
        let mut group: *mut Sylow2Group = ptr::null_mut();
        assert_eq!(
            sylow2_group_new(ctx, SYLOW2_KIND_SL, 0, 10, &mut group),
            SYLOW2_ERR_BUDGET
        );
        assert_eq!(
            sylow2_group_new(ctx, 99, 0, BUDGET, &mut group),
            SYLOW2_ERR_INVALID_ARGUMENT
        );
        assert_eq!(
            sylow2_group_new(ctx, SYLOW2_KIND_KERNEL_SL, 7, BUDGET, &mut group),
            SYLOW2_ERR_INVALID_ARGUMENT
        );
        sylow2_ctx_free(ctx);

        let name = CStr::from_ptr(sylow2_error_name(SYLOW2_ERR_BUDGET));
        assert_eq!(name.to_str().unwrap(), "budget-exceeded");
        assert_eq!(
            sylow2_group_order(ptr::null(), ptr::null_mut()),
            SYLOW2_ERR_INVALID_ARGUMENT
        );
    }
}

#[test]
fn verify_and_reports() {
    unsafe {
        let mut holds = -1i32;
        let mut json: *mut libc::c_char = ptr::null_mut();
        assert_eq!(
            sylow2_verify(
                3,
                3,
                SYLOW2_PROP_POWERFUL,
                SYLOW2_FAMILY_SL,
                1,
                BUDGET,
                &mut holds,
                &mut json
            ),
            SYLOW2_OK
        );
        assert_eq!(holds, 1);
        let parsed: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(parsed["holds"], true);
        assert_eq!(parsed["schema"], 1);
        sylow2_string_free(json);

        // elementary abelian fails at level 1 for n = 3
        let mut holds = -1i32;
        assert_eq!(
            sylow2_verify(
                3,
                3,
                SYLOW2_PROP_ELEMENTARY_ABELIAN,
                SYLOW2_FAMILY_SL,
                1,
                BUDGET,
                &mut holds,
                ptr::null_mut()
            ),
            SYLOW2_OK
        );
        assert_eq!(holds, 0);
    }
}

#[test]
fn e2_json_round_trip() {
    unsafe {
        let mut json: *mut libc::c_char = ptr::null_mut();
        assert_eq!(
            sylow2_e2_json(3, 2, SYLOW2_FAMILY_SL, 4, 4, BUDGET, &mut json),
            SYLOW2_OK
        );
        let parsed: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(parsed["dims"][0][0], 1);
        assert_eq!(parsed["dims"][3][0], 1);
        assert_eq!(parsed["p"], 3);
        sylow2_string_free(json);
    }
}

#[test]
fn fusion_json() {
    unsafe {
        let mut json: *mut libc::c_char = ptr::null_mut();
        assert_eq!(
            sylow2_fusion_json(
                3,
                2,
                SYLOW2_FAMILY_SL,
                1,
                BUDGET,
                59049,
                4,
                4,
                4,
                &mut json
            ),
            SYLOW2_OK
        );
        let parsed: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(parsed["class_count_sylow_ambient"], 20);
        assert_eq!(parsed["centric_radical"].as_array().unwrap().len(), 2);
        sylow2_string_free(json);
    }
}

#[test]
fn generated_header_exists_and_names_the_surface() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/sylow2.h");
    let text = std::fs::read_to_string(header).expect("header generated at build time");
    for needle in [
        "SYLOW2_H",
        "Sylow2Ctx",
        "Sylow2Group",
        "sylow2_ctx_new",
        "sylow2_group_order",
        "sylow2_e2_json",
        "sylow2_fusion_json",
        "sylow2_string_free",
        "sylow2_error_name",
    ] {
        assert!(text.contains(needle), "header lacks {needle}");
    }
}
