use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use latpoly_ffi::*;

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    lp_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lp_last_error_message()).to_str().unwrap().to_owned()
}

#[test]
fn lattice_poly_coefficients() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(lp_lattice_poly(8, 4, &mut p), LpStatus::Ok);
        assert_eq!(lp_poly_len(p), 4);
        let mut c = 0i64;
        let want = [14, 21, 15, 5];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(lp_poly_coeff(p, k, &mut c), LpStatus::Ok);
            assert_eq!(c, *w);
        }
        assert_eq!(lp_poly_coeff(p, 4, &mut c), LpStatus::OutOfRange);
        let mut total = 0;
        assert_eq!(lp_poly_eval_at_one(p, &mut total), LpStatus::Ok);
        assert_eq!(total, 55);
        let mut s = ptr::null_mut();
        assert_eq!(lp_poly_to_string(p, &mut s), LpStatus::Ok);
        assert_eq!(take_string(s), "14 + 21*x + 15*x^2 + 5*x^3");
        lp_poly_free(p);
    }
}

#[test]
fn formulas_agree_with_table() {
    unsafe {
        let mut v = 0;
        assert_eq!(lp_catalan3(4, &mut v), LpStatus::Ok);
        assert_eq!(v, 55);
        assert_eq!(lp_t_coeff(4, 1, &mut v), LpStatus::Ok);
        assert_eq!(v, 21);
        for make in [
            (|out| lp_t_poly(4, out)) as unsafe fn(*mut *mut LpPoly) -> LpStatus,
            |out| lp_descent_formula(5, out),
            |out| lp_r_poly(4, out),
            |out| lp_q_poly(8, 4, out),
        ] {
            let mut p = ptr::null_mut();
            assert_eq!(make(&mut p), LpStatus::Ok);
            let mut s = ptr::null_mut();
            lp_poly_to_string(p, &mut s);
            assert_eq!(take_string(s), "14 + 21*x + 15*x^2 + 5*x^3");
            lp_poly_free(p);
        }
    }
}

#[test]
fn path_matching_roundtrip() {
    unsafe {
        let text = CString::new("EEENEN").unwrap();
        let mut path = ptr::null_mut();
        assert_eq!(lp_path_parse(text.as_ptr(), &mut path), LpStatus::Ok);
        let (mut i, mut j) = (0, 0);
        assert_eq!(lp_path_endpoint(path, &mut i, &mut j), LpStatus::Ok);
        assert_eq!((i, j), (4, 2));
        assert_eq!(lp_path_weight(path), 1);

        let mut m = ptr::null_mut();
        assert_eq!(lp_path_to_matching(path, &mut m), LpStatus::Ok);
        assert_eq!(lp_matching_crossings(m), 1);
        let mut json = ptr::null_mut();
        assert_eq!(lp_matching_to_json(m, &mut json), LpStatus::Ok);
        assert_eq!(take_string(json), r#"{"m":4,"edges":[[1,3],[2,4]]}"#);

        let mut back = ptr::null_mut();
        assert_eq!(lp_matching_to_path(m, &mut back), LpStatus::Ok);
        let mut s = ptr::null_mut();
        lp_path_to_string(back, &mut s);
        assert_eq!(take_string(s), "EEENEN");

        lp_path_free(back);
        lp_matching_free(m);
        lp_path_free(path);
    }
}

#[test]
fn tree_roundtrip() {
    unsafe {
        let text = CString::new("EEEENEEENNEN").unwrap();
        let mut path = ptr::null_mut();
        assert_eq!(lp_path_parse(text.as_ptr(), &mut path), LpStatus::Ok);
        let mut t = ptr::null_mut();
        assert_eq!(lp_path_to_tree(path, &mut t), LpStatus::Ok);
        assert_eq!(lp_tree_r_index(t), 2);
        assert_eq!(lp_tree_edges(t), 8);

        let mut json = ptr::null_mut();
        assert_eq!(lp_tree_to_json(t, &mut json), LpStatus::Ok);
        let json = CString::new(take_string(json)).unwrap();
        let mut t2 = ptr::null_mut();
        assert_eq!(lp_tree_parse(json.as_ptr(), &mut t2), LpStatus::Ok);

        let mut back = ptr::null_mut();
        assert_eq!(lp_tree_to_path(t2, 8, 4, &mut back), LpStatus::Ok);
        let mut s = ptr::null_mut();
        lp_path_to_string(back, &mut s);
        assert_eq!(take_string(s), "EEEENEEENNEN");

        let mut parens = ptr::null_mut();
        assert_eq!(lp_tree_to_parens(t2, &mut parens), LpStatus::Ok);
        assert!(!take_string(parens).is_empty());

        lp_path_free(back);
        lp_tree_free(t2);
        lp_tree_free(t);
        lp_path_free(path);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut path = ptr::null_mut();
        let bad = CString::new("EXN").unwrap();
        assert_eq!(lp_path_parse(bad.as_ptr(), &mut path), LpStatus::Parse);
        assert!(path.is_null());
        assert!(last_error().contains('X'));

        let above = CString::new("N").unwrap();
        assert_eq!(lp_path_parse(above.as_ptr(), &mut path), LpStatus::Parse);

        assert_eq!(lp_path_parse(ptr::null(), &mut path), LpStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(lp_path_parse(bytes.as_ptr().cast(), &mut path), LpStatus::InvalidUtf8);

        // contains 12312, so it has no preimage
        let m = CString::new(r#"{"m":5,"edges":[[1,4],[2,5]]}"#).unwrap();
        let mut mh = ptr::null_mut();
        assert_eq!(lp_matching_from_json(m.as_ptr(), &mut mh), LpStatus::Ok);
        let mut p = ptr::null_mut();
        assert_eq!(lp_matching_to_path(mh, &mut p), LpStatus::Domain);
        assert!(p.is_null());
        lp_matching_free(mh);

        let mut v = 0;
        assert_eq!(lp_catalan3(1000, &mut v), LpStatus::Overflow);

        let mut ok = false;
        assert_eq!(lp_verify(0, 1, &mut ok, ptr::null_mut()), LpStatus::OutOfRange);

        lp_poly_free(ptr::null_mut());
        lp_string_free(ptr::null_mut());
        assert_eq!(lp_poly_len(ptr::null()), 0);
    }
}

#[test]
fn verify_small() {
    unsafe {
        let mut ok = false;
        let mut report = ptr::null_mut();
        assert_eq!(lp_verify(3, 7, &mut ok, &mut report), LpStatus::Ok);
        assert!(ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(v["overall"], true);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/latpoly.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["lp_lattice_poly", "lp_matching_to_path", "lp_tree_to_path", "lp_verify"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(status.success());
}
