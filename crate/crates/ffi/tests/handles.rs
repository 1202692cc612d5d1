use std::ffi::{c_char, CStr, CString};
use std::ptr;

use segcalc_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    segcalc_string_free(s);
    out
}

unsafe fn parse(s: &str) -> *mut SegcalcRep {
    let mut rep = ptr::null_mut();
    assert_eq!(
        segcalc_rep_parse(c(s).as_ptr(), &mut rep),
        SegcalcStatus::Ok
    );
    rep
}

#[test]
fn theta_two_two() {
    unsafe {
        let rep = parse("char(2,0)");
        let mut theta = ptr::null_mut();
        assert_eq!(segcalc_theta(2, 2, rep, &mut theta), SegcalcStatus::Ok);
        assert_eq!(segcalc_theta_irreducible(theta), 0);
        let mut class = ptr::null_mut();
        assert_eq!(segcalc_theta_class(theta, &mut class), SegcalcStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(
            segcalc_class_render(class, false, &mut s),
            SegcalcStatus::Ok
        );
        assert_eq!(take(s), "Speh[1/2,1/2] x Speh[-1/2,-1/2]");
        let mut ext1 = ptr::null_mut();
        assert_eq!(segcalc_theta_ext(theta, 1, &mut ext1), SegcalcStatus::Ok);
        assert_eq!(segcalc_class_render(ext1, false, &mut s), SegcalcStatus::Ok);
        assert_eq!(take(s), "St[1/2,-1/2]");
        assert_eq!(segcalc_theta_render(theta, true, &mut s), SegcalcStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json["irreducible"], "false");
        segcalc_class_free(ext1);
        segcalc_class_free(class);
        segcalc_theta_free(theta);
        segcalc_rep_free(rep);
    }
}

#[test]
fn products_and_poles() {
    unsafe {
        let a = parse("St[1/2,1/2]");
        let b = parse("St[-1/2,-1/2]");
        let mut p = ptr::null_mut();
        assert_eq!(segcalc_product(a, b, &mut p), SegcalcStatus::Ok);
        assert_eq!(segcalc_class_len(p), 1);
        let ab = parse("St[1/2,1/2] x St[-1/2,-1/2]");
        let mut s = ptr::null_mut();
        assert_eq!(segcalc_ss(ab, &mut s), SegcalcStatus::Ok);
        assert_eq!(segcalc_class_len(s), 2);
        let one2 = parse("char(2,0)");
        let (mut pi, mut dual) = (false, false);
        assert_eq!(
            segcalc_both_pole(2, 2, one2, &mut pi, &mut dual),
            SegcalcStatus::Ok
        );
        assert!(pi && dual);
        let mut order = 9;
        assert_eq!(segcalc_pole_order(one2, -1, &mut order), SegcalcStatus::Ok);
        assert_eq!(order, 1);
        for r in [a, b, ab, one2] {
            segcalc_rep_free(r);
        }
        segcalc_class_free(p);
        segcalc_class_free(s);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let three = parse("St[1/2,1/2] x St[0,0] x St[-1/2,-1/2]");
        let mut out = ptr::null_mut();
        assert_eq!(segcalc_ss(three, &mut out), SegcalcStatus::NotDecidable);
        assert!(out.is_null());
        let mut theta = ptr::null_mut();
        assert_eq!(
            segcalc_theta(3, 2, three, &mut theta),
            SegcalcStatus::RankOrder
        );
        assert_eq!(
            segcalc_ss(ptr::null(), &mut out),
            SegcalcStatus::NullPointer
        );
        assert_eq!(
            segcalc_ss(three, ptr::null_mut()),
            SegcalcStatus::NullPointer
        );
        let msg = CStr::from_ptr(segcalc_last_error()).to_str().unwrap();
        assert_eq!(msg, "null pointer argument");
        segcalc_rep_free(three);
        segcalc_rep_free(ptr::null_mut());
        assert_eq!(segcalc_rep_degree(ptr::null()), 0);
        assert_eq!(segcalc_theta_irreducible(ptr::null()), -1);
    }
}

#[test]
fn character_tables_and_projectivity() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(segcalc_ext_character(3, 2, 0, &mut t), SegcalcStatus::Ok);
        assert_eq!(segcalc_theta_irreducible(t), 1);
        segcalc_theta_free(t);
        assert!(segcalc_is_projective(2, 3));
        assert!(!segcalc_is_projective(2, 2));
        let mut b = 0;
        assert_eq!(segcalc_proj_dim_bound(5, 6, &mut b), SegcalcStatus::Ok);
        assert_eq!(b, 2);
    }
}

#[test]
fn verify_suite() {
    unsafe {
        let mut report = ptr::null_mut();
        let mut passed = false;
        assert_eq!(
            segcalc_verify(c("hopf").as_ptr(), 42, 100, &mut report, &mut passed),
            SegcalcStatus::Ok
        );
        assert!(passed);
        let json: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(json["cases"], 100);
        assert_eq!(
            segcalc_verify(c("bogus").as_ptr(), 42, 0, &mut report, &mut passed),
            SegcalcStatus::UnknownSuite
        );
    }
}
