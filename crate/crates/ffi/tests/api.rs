use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use lsv_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    lsv_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = lsv_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn parse(alg: *const LsvAlgebra, text: &str) -> *mut LsvElement {
    let mut x = ptr::null_mut();
    assert_eq!(lsv_element_parse(alg, c(text).as_ptr(), &mut x), LsvStatus::Ok);
    x
}

#[test]
fn bracket_round_trip() {
    unsafe {
        let alg = lsv_algebra_new_default();
        let x = parse(alg, "L(1,0)");
        let y = parse(alg, "L(2,3)");
        let mut z = ptr::null_mut();
        assert_eq!(lsv_element_bracket(x, y, &mut z), LsvStatus::Ok);
        assert!(lsv_last_error().is_null());
        assert_eq!(take(lsv_element_to_string(z)), "L(3,3)");
        assert_eq!(lsv_element_is_zero(z), 0);
        let mut w = ptr::null_mut();
        assert_eq!(lsv_element_bracket(x, x, &mut w), LsvStatus::Ok);
        assert_eq!(lsv_element_is_zero(w), 1);
        for h in [x, y, z, w] {
            lsv_element_free(h);
        }
        lsv_algebra_free(alg);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let alg = lsv_algebra_new_default();
        let mut x = ptr::null_mut();
        assert_eq!(lsv_element_parse(alg, c("M(1/2,0)").as_ptr(), &mut x), LsvStatus::ParseError);
        assert!(x.is_null());
        assert!(last_error().contains("1/2"));
        assert_eq!(lsv_element_parse(alg, c("L(1,").as_ptr(), &mut x), LsvStatus::ParseError);
        assert_eq!(lsv_element_parse(ptr::null(), c("L(1,0)").as_ptr(), &mut x), LsvStatus::NullArgument);
        assert_eq!(lsv_element_parse(alg, ptr::null(), &mut x), LsvStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(lsv_element_parse(alg, bad.as_ptr().cast(), &mut x), LsvStatus::InvalidUtf8);
        assert_eq!(lsv_element_is_zero(ptr::null()), -1);
        assert!(lsv_element_to_string(ptr::null()).is_null());
        assert_eq!(lsv_algebra_set_window(alg, 0, 1), LsvStatus::InvalidInput);
        lsv_element_free(ptr::null_mut());
        lsv_string_free(ptr::null_mut());
        lsv_algebra_free(alg);
    }
}

#[test]
fn configured_algebra() {
    unsafe {
        let mut alg = ptr::null_mut();
        let cfg = c(r#"{"field":"Q","gamma_generators":["2"],"s":"1"}"#);
        assert_eq!(lsv_algebra_from_config(cfg.as_ptr(), &mut alg), LsvStatus::Ok);
        let x = parse(alg, "L(4,0)");
        let y = parse(alg, "Y(1,0)");
        let mut z = ptr::null_mut();
        assert_eq!(lsv_element_bracket(x, y, &mut z), LsvStatus::Ok);
        assert_eq!(take(lsv_element_to_string(z)), "-Y(5,0)");
        for h in [x, y, z] {
            lsv_element_free(h);
        }
        lsv_algebra_free(alg);

        let mut alg = ptr::null_mut();
        let bad = c(r#"{"field":"Q","gamma_generators":["1"],"s":"1"}"#);
        assert_eq!(lsv_algebra_from_config(bad.as_ptr(), &mut alg), LsvStatus::InvalidInput);
        assert!(alg.is_null());
    }
}

#[test]
fn jacobi_and_cocycle() {
    unsafe {
        let alg = lsv_algebra_new_default();
        assert_eq!(lsv_algebra_set_window(alg, 3, 2), LsvStatus::Ok);
        let mut failures = usize::MAX;
        assert_eq!(lsv_check_jacobi(alg, &mut failures), LsvStatus::Ok);
        assert_eq!(failures, 0);
        assert_eq!(lsv_algebra_set_window(alg, 3, 3), LsvStatus::Ok);

        let doc = c(r#"{"classes":{"0":"3"},"f":{"L(0,0)":"2/3","L(1,-1)":"5","M(0,1)":"-7"}}"#);
        let mut out = ptr::null_mut();
        assert_eq!(lsv_cocycle_class(alg, doc.as_ptr(), &mut out), LsvStatus::Ok);
        assert_eq!(take(out), r#"{"classes":{"0":"3"},"residual":"0"}"#);

        let mut out = ptr::null_mut();
        let lone = c(r#"{"table":[["L(1,0)","M(-1,0)","1"]]}"#);
        assert_eq!(lsv_cocycle_class(alg, lone.as_ptr(), &mut out), LsvStatus::CheckFailed);
        assert!(out.is_null());
        assert!(last_error().contains("cocycle"));
        assert_eq!(lsv_cocycle_class(alg, c("{").as_ptr(), &mut out), LsvStatus::InvalidInput);
        lsv_algebra_free(alg);
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/lsv.h");
    let body = std::fs::read_to_string(header).unwrap();
    for fun in ["lsv_element_parse", "lsv_element_bracket", "lsv_cocycle_class", "lsv_last_error"] {
        assert!(body.contains(fun), "{fun} missing from header");
    }
    let Ok(cc) = which("cc") else { return };
    let dir = tempdir();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"lsv.h\"\nint main(void) { LsvAlgebra *a = 0; return lsv_algebra_from_config(\"\", &a) == LSV_STATUS_OK; }\n",
    )
    .unwrap();
    let inc = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    for lang in ["c", "c++"] {
        let st = Command::new(&cc).args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I", inc]).arg(&src).status().unwrap();
        assert!(st.success(), "header does not compile as {lang}");
    }
}

fn which(name: &str) -> Result<String, ()> {
    Command::new(name).arg("--version").output().map(|_| name.to_owned()).map_err(|_| ())
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("lsv-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
