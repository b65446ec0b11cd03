use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use graykit_ffi::*;

fn text(p: *const libc::c_char) -> String {
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn take_string(p: *mut libc::c_char) -> String {
    let s = text(p);
    unsafe { gk_string_free(p) };
    s
}

fn parse(json: &str) -> *mut GkForm {
    let c = CString::new(json).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { gk_form_parse(c.as_ptr(), &mut f) }, GkStatus::Ok);
    f
}

fn structure(which: GkStructure, mode: GkMode) -> *mut GkForm {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { gk_form_structure(which, mode, &mut f) }, GkStatus::Ok);
    f
}

fn to_json(f: *const GkForm) -> serde_json::Value {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gk_form_to_json(f, &mut s) }, GkStatus::Ok);
    serde_json::from_str(&take_string(s)).unwrap()
}

#[test]
fn psi_plus_wedge_psi_minus_is_four_volume_forms() {
    let (p, m, v) = (
        structure(GkStructure::PsiPlus, GkMode::Exact),
        structure(GkStructure::PsiMinus, GkMode::Exact),
        structure(GkStructure::Volume, GkMode::Exact),
    );
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { gk_form_wedge(p, m, &mut w) }, GkStatus::Ok);
    let mut ip = 0.0;
    assert_eq!(unsafe { gk_form_inner(w, v, &mut ip) }, GkStatus::Ok);
    assert_eq!(ip, 4.0);
    let mut deg = -1;
    assert_eq!(unsafe { gk_form_degree(w, &mut deg) }, GkStatus::Ok);
    assert_eq!(deg, 6);
    unsafe {
        for f in [p, m, v, w] {
            gk_form_free(f);
        }
    }
}

#[test]
fn hodge_and_contraction_on_omega() {
    let w = parse(
        r#"{"mode": "exact", "terms": [{"blade": "e12", "coeff": 1}, {"blade": "e34", "coeff": 1}, {"blade": "e56", "coeff": 1}]}"#,
    );
    let mut star = ptr::null_mut();
    assert_eq!(unsafe { gk_form_hodge(w, &mut star) }, GkStatus::Ok);
    // *ω = ω²/2 = e1234 + e1256 + e3456
    let terms = to_json(star)["terms"].as_array().unwrap().clone();
    let blades: Vec<&str> = terms.iter().map(|t| t["blade"].as_str().unwrap()).collect();
    assert_eq!(blades, ["e1234", "e1256", "e3456"]);
    assert!(terms.iter().all(|t| t["coeff"] == "1"));

    // e1 ⌟ ω = e2
    let mut c = ptr::null_mut();
    let e1 = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    assert_eq!(unsafe { gk_form_contract(w, e1.as_ptr(), &mut c) }, GkStatus::Ok);
    assert_eq!(to_json(c), serde_json::json!({"mode": "exact", "terms": [{"blade": "e2", "coeff": "1"}]}));

    let mut l = ptr::null_mut();
    assert_eq!(unsafe { gk_form_lambda(w, &mut l) }, GkStatus::Ok);
    assert_eq!(to_json(l)["terms"][0]["coeff"], "3");
    unsafe {
        for f in [w, star, c, l] {
            gk_form_free(f);
        }
    }
}

#[test]
fn errors_carry_status_and_message() {
    let bad = CString::new(r#"{"mode": "exact", "terms": [{"blade": "e17", "coeff": 1}]}"#).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { gk_form_parse(bad.as_ptr(), &mut f) }, GkStatus::Parse);
    assert!(f.is_null());
    assert!(text(gk_last_error()).contains("e17"));

    assert_eq!(unsafe { gk_form_parse(ptr::null(), &mut f) }, GkStatus::NullPointer);

    let (a, b) = (structure(GkStructure::Omega, GkMode::Exact), structure(GkStructure::Omega, GkMode::Float));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gk_form_add(a, b, &mut out) }, GkStatus::ModeMismatch);
    let mixed = {
        let mut m = ptr::null_mut();
        let one = parse(r#"{"mode": "float", "terms": [{"blade": "e", "coeff": 1.0}]}"#);
        assert_eq!(unsafe { gk_form_add(b, one, &mut m) }, GkStatus::Ok);
        unsafe { gk_form_free(one) };
        m
    };
    assert_eq!(unsafe { gk_form_hodge(mixed, &mut out) }, GkStatus::Degree);
    let mut deg = 0;
    assert_eq!(unsafe { gk_form_degree(mixed, &mut deg) }, GkStatus::Degree);

    // success clears the message
    assert_eq!(unsafe { gk_form_hodge(a, &mut out) }, GkStatus::Ok);
    assert!(gk_last_error().is_null());
    unsafe {
        for f in [a, b, mixed, out] {
            gk_form_free(f);
        }
        gk_form_free(ptr::null_mut());
        gk_string_free(ptr::null_mut());
    }
}

#[test]
fn decomposition_of_psi_plus() {
    let input = CString::new(
        r#"{"mode": "exact", "terms": [{"blade": "e135", "coeff": 1}, {"blade": "e146", "coeff": -1},
            {"blade": "e236", "coeff": -1}, {"blade": "e245", "coeff": -1}]}"#,
    )
    .unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gk_decompose_json(GkDecomposition::ThreeForm, input.as_ptr(), &mut out) }, GkStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["lambda"], "1");
    assert_eq!(v["mu"], "0");

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gk_decompose_json(GkDecomposition::TwoForm, input.as_ptr(), &mut out) }, GkStatus::Degree);
}

#[test]
fn suites_report_through_the_abi() {
    let mut out = ptr::null_mut();
    let mut passed = false;
    assert_eq!(unsafe { gk_verify_algebra(GkMode::Exact, 5, 1, &mut out, &mut passed) }, GkStatus::Ok);
    assert!(passed);
    let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(report["suite"], "algebra-exact");

    assert_eq!(unsafe { gk_verify_s6(GkS6Suite::Gray, 4, 1e-3, 0, &mut out, &mut passed) }, GkStatus::Ok);
    assert!(passed);
    let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(report["suite"], "gray");

    assert_eq!(unsafe { gk_verify_s6(GkS6Suite::Gray, 4, 1e-9, 0, &mut out, &mut passed) }, GkStatus::StepOutOfRange);
    assert_eq!(unsafe { gk_verify_algebra(GkMode::Float, 0, 0, &mut out, &mut passed) }, GkStatus::InvalidArgument);
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("graykit.h")
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(header()).unwrap();
    for sym in [
        "gk_last_error",
        "gk_string_free",
        "gk_form_free",
        "gk_form_parse",
        "gk_form_structure",
        "gk_form_to_json",
        "gk_form_mode",
        "gk_form_degree",
        "gk_form_wedge",
        "gk_form_add",
        "gk_form_hodge",
        "gk_form_lambda",
        "gk_form_contract",
        "gk_form_inner",
        "gk_decompose_json",
        "gk_verify_algebra",
        "gk_verify_s6",
    ] {
        assert!(h.contains(&format!("{sym}(")), "{sym} missing from header");
    }
    assert!(h.contains("typedef struct GkForm GkForm;"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "graykit.h"

int main(void) {
    GkForm *p = NULL, *m = NULL, *w = NULL;
    if (gk_form_structure(GK_STRUCTURE_PSI_PLUS, GK_MODE_EXACT, &p) != GK_STATUS_OK) return 10;
    if (gk_form_structure(GK_STRUCTURE_PSI_MINUS, GK_MODE_EXACT, &m) != GK_STATUS_OK) return 11;
    if (gk_form_wedge(p, m, &w) != GK_STATUS_OK) return 12;
    char *json = NULL;
    if (gk_form_to_json(w, &json) != GK_STATUS_OK) return 13;
    printf("%s\n", json);
    gk_string_free(json);
    GkForm *bad = NULL;
    if (gk_form_parse("{\"mode\": \"exact\", \"terms\": 3}", &bad) != GK_STATUS_PARSE) return 14;
    if (bad != NULL || gk_last_error() == NULL) return 15;
    gk_form_free(p);
    gk_form_free(m);
    gk_form_free(w);
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    // tests run from target/<profile>/deps; the library sits one level up
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    assert!(lib_dir.join("libgraykit_ffi.a").exists(), "no static library in {}", lib_dir.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_api");
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = tmp.join("main");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(lib_dir.join("libgraykit_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, serde_json::json!({"mode": "exact", "terms": [{"blade": "e123456", "coeff": "4"}]}));
}
