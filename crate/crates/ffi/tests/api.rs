use std::ffi::{CStr, CString};
use std::ptr;

use sb_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sb_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sb_last_error()) }.to_str().unwrap().to_string()
}

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

const ALPHA6: &str = r#"{"invariants":[{"place":"2","num":1,"den":6},{"place":"3","num":5,"den":6}]}"#;

#[test]
fn class_handles() {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { sb_class_from_json(cstr(ALPHA6).as_ptr(), &mut a) }, SbStatus::Ok);
    assert_eq!(unsafe { sb_class_period(a) }, 6);
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { sb_class_power(a, 3, &mut b) }, SbStatus::Ok);
    assert_eq!(unsafe { sb_class_period(b) }, 2);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sb_class_tensor(a, b, &mut c) }, SbStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sb_class_to_json(c, &mut s) }, SbStatus::Ok);
    // 1/6 + 1/2 = 2/3 at 2
    assert!(take(s).contains(r#"{"den":3,"num":2,"place":"2"}"#));
    unsafe {
        sb_class_free(a);
        sb_class_free(b);
        sb_class_free(c);
        sb_class_free(ptr::null_mut());
    }
    assert_eq!(unsafe { sb_class_period(ptr::null()) }, 0);
}

#[test]
fn errors_are_reported() {
    let mut a = ptr::null_mut();
    let bad = cstr(r#"{"invariants":[{"place":"2","num":1,"den":6}]}"#);
    assert_eq!(unsafe { sb_class_from_json(bad.as_ptr(), &mut a) }, SbStatus::ParseError);
    assert!(last_error().contains("sum"), "{}", last_error());
    assert!(a.is_null());
    assert_eq!(unsafe { sb_class_from_json(ptr::null(), &mut a) }, SbStatus::NullPointer);
    assert_eq!(unsafe { sb_class_from_json(cstr(ALPHA6).as_ptr(), ptr::null_mut()) }, SbStatus::NullPointer);
}

#[test]
fn decide_and_check() {
    let p = cstr(&format!(r#"{{"class":{ALPHA6},"dim":5}}"#));
    let q = cstr(r#"{"class":{"invariants":[{"place":"2","num":5,"den":6},{"place":"3","num":1,"den":6}]},"dim":5}"#);
    let mut verdict = SbVerdict::Unknown;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { sb_decide(p.as_ptr(), q.as_ptr(), &mut verdict, &mut report) }, SbStatus::Ok);
    assert_eq!(verdict, SbVerdict::Birational);
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    let cert = cstr(&v["certificate"].to_string());
    let mut valid = 0;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { sb_check_certificate(cert.as_ptr(), &mut valid, &mut report) }, SbStatus::Ok);
    assert_eq!(valid, 1);
    assert_eq!(take(report), r#"{"verdict":"valid"}"#);

    let mismatched = cstr(&format!(r#"{{"class":{ALPHA6},"dim":11}}"#));
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { sb_decide(p.as_ptr(), mismatched.as_ptr(), &mut verdict, &mut report) }, SbStatus::InvalidInput);
    assert!(report.is_null());
}

#[test]
fn field_arithmetic() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { sb_field_new(2, 2, &mut f) }, SbStatus::Ok);
    assert_eq!(unsafe { sb_field_degree(f) }, 2);
    let t = [0u64, 1];
    let mut sq = [0u64; 2];
    assert_eq!(unsafe { sb_field_mul(f, t.as_ptr(), t.as_ptr(), sq.as_mut_ptr()) }, SbStatus::Ok);
    // t^2 = t + 1 in F_4
    assert_eq!(sq, [1, 1]);
    let mut fr = [0u64; 2];
    assert_eq!(unsafe { sb_field_frobenius(f, t.as_ptr(), 1, fr.as_mut_ptr()) }, SbStatus::Ok);
    assert_eq!(fr, sq);
    let mut inv = [0u64; 2];
    assert_eq!(unsafe { sb_field_inv(f, t.as_ptr(), inv.as_mut_ptr()) }, SbStatus::Ok);
    assert_eq!(inv, [1, 1]);
    let zero = [0u64; 2];
    assert_eq!(unsafe { sb_field_inv(f, zero.as_ptr(), inv.as_mut_ptr()) }, SbStatus::InvalidInput);
    unsafe { sb_field_free(f) };
    assert_eq!(unsafe { sb_field_new(4, 1, &mut f) }, SbStatus::InvalidInput);
}

#[test]
fn transversal_and_verify() {
    let input = cstr(
        r#"{"field":{"p":5},"point":[1,1,1,1],"subspaces":[[[1,0,0,0],[0,1,0,0]],[[0,0,1,0],[0,0,0,1]]]}"#,
    );
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sb_transversal(input.as_ptr(), &mut out) }, SbStatus::Ok);
    assert_eq!(take(out), r#"{"dim":1,"rows":[[[1],[1],[0],[0]],[[0],[0],[1],[1]]]}"#);

    let mut passed = 0;
    let mut report = ptr::null_mut();
    let status = unsafe {
        sb_verify(cstr("thm2").as_ptr(), cstr(r#"{"seed":7,"trials":20,"q":3,"n":2,"m":1}"#).as_ptr(), &mut passed, &mut report)
    };
    assert_eq!(status, SbStatus::Ok);
    assert_eq!(passed, 1);
    assert!(take(report).contains(r#""suite":"thm2""#));

    let status = unsafe { sb_verify(cstr("prop14").as_ptr(), cstr(r#"{"q":3,"n":2,"m":2}"#).as_ptr(), &mut passed, &mut report) };
    assert_eq!(status, SbStatus::InvalidInput);
    let status = unsafe { sb_verify(cstr("nope").as_ptr(), cstr("{}").as_ptr(), &mut passed, &mut report) };
    assert_eq!(status, SbStatus::InvalidInput);
}
