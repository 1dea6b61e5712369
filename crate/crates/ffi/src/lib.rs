//! C ABI over `sb-core`.
//!
//! Objects cross the boundary as opaque handles or JSON strings (same schema
//! as the `sb` command line tool). Every fallible call returns an
//! [`SbStatus`]; on failure a message is available from [`sb_last_error`]
//! until the next failing call on the same thread. Strings returned by this
//! library must be released with [`sb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde::Deserialize;
use serde_json::{json, Value};

use sb_core::brauer::{decide_birational, BrauerClass, SbVariety, Verdict};
use sb_core::cert::{check_certificate, Certificate};
use sb_core::field::{FieldContext, FieldElement};
use sb_core::geom::transversal;
use sb_core::io::{self as sio, ElementJson, FieldSpec};
use sb_core::verify;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SbVerdict {
    Birational = 0,
    NotBirational = 1,
    Unknown = 2,
}

/// Opaque Brauer class.
pub struct SbClass(BrauerClass);

/// Opaque finite field `F_{p^D}`.
pub struct SbField(FieldContext);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

type FfiResult<T> = Result<T, (SbStatus, String)>;

fn invalid(e: impl std::fmt::Display) -> (SbStatus, String) {
    (SbStatus::InvalidInput, e.to_string())
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> SbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SbStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err((SbStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (SbStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_json<T: for<'de> Deserialize<'de>>(s: *const c_char) -> FfiResult<T> {
    serde_json::from_str(read_str(s)?).map_err(|e| (SbStatus::ParseError, e.to_string()))
}

fn out_ptr<'a, T>(out: *mut T) -> FfiResult<&'a mut T> {
    // SAFETY: checked non-null; the caller guarantees it points to writable storage.
    unsafe { out.as_mut() }.ok_or((SbStatus::NullPointer, "null output pointer".into()))
}

fn handle<'a, T>(h: *const T) -> FfiResult<&'a T> {
    // SAFETY: checked non-null; the caller guarantees it is a live handle from this library.
    unsafe { h.as_ref() }.ok_or((SbStatus::NullPointer, "null handle".into()))
}

fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|e| (SbStatus::Panic, e.to_string()))?;
    *out_ptr(out)? = c.into_raw();
    Ok(())
}

fn write_json(out: *mut *mut c_char, v: &Value) -> FfiResult<()> {
    write_string(out, v.to_string())
}

/// Message of the last failing call on this thread, or an empty string.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn sb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a class from `{"invariants": [{"place", "num", "den"}, ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_class_from_json(json: *const c_char, out: *mut *mut SbClass) -> SbStatus {
    guard(|| {
        let c: BrauerClass = read_json(json)?;
        *out_ptr(out)? = Box::into_raw(Box::new(SbClass(c)));
        Ok(())
    })
}

/// # Safety
/// `cls` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_class_to_json(cls: *const SbClass, out: *mut *mut c_char) -> SbStatus {
    guard(|| {
        let c = handle(cls)?;
        write_json(out, &serde_json::to_value(&c.0).map_err(invalid)?)
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_class_tensor(a: *const SbClass, b: *const SbClass, out: *mut *mut SbClass) -> SbStatus {
    guard(|| {
        let c = handle(a)?.0.tensor(&handle(b)?.0);
        *out_ptr(out)? = Box::into_raw(Box::new(SbClass(c)));
        Ok(())
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_class_power(a: *const SbClass, k: i64, out: *mut *mut SbClass) -> SbStatus {
    guard(|| {
        let c = handle(a)?.0.power(k);
        *out_ptr(out)? = Box::into_raw(Box::new(SbClass(c)));
        Ok(())
    })
}

/// Period of the class; 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_class_period(a: *const SbClass) -> u64 {
    a.as_ref().map_or(0, |c| c.0.period())
}

/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_class_free(a: *mut SbClass) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Decides birationality of two varieties given as `{"class", "dim"}`.
/// `report` receives the verdict JSON, including the certificate when one exists.
///
/// # Safety
/// `p`, `q` must be NUL-terminated strings; `verdict` and `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_decide(
    p: *const c_char,
    q: *const c_char,
    verdict: *mut SbVerdict,
    report: *mut *mut c_char,
) -> SbStatus {
    guard(|| {
        let p: SbVariety = read_json(p)?;
        let q: SbVariety = read_json(q)?;
        let v = decide_birational(&p, &q).map_err(invalid)?;
        *out_ptr(verdict)? = match v {
            Verdict::Birational { .. } => SbVerdict::Birational,
            Verdict::NotBirational { .. } => SbVerdict::NotBirational,
            Verdict::Unknown => SbVerdict::Unknown,
        };
        write_json(report, &serde_json::to_value(&v).map_err(invalid)?)
    })
}

/// Replays a certificate; `valid` is set to 1 or 0 and `report` receives the check result.
///
/// # Safety
/// `cert` must be a NUL-terminated string; `valid` and `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_check_certificate(cert: *const c_char, valid: *mut i32, report: *mut *mut c_char) -> SbStatus {
    guard(|| {
        let c: Certificate = read_json(cert)?;
        let result = check_certificate(&c);
        *out_ptr(valid)? = result.is_valid() as i32;
        write_json(report, &serde_json::to_value(&result).map_err(invalid)?)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_field_new(p: u64, degree: u32, out: *mut *mut SbField) -> SbStatus {
    guard(|| {
        let ctx = FieldContext::new(p, degree).map_err(invalid)?;
        *out_ptr(out)? = Box::into_raw(Box::new(SbField(ctx)));
        Ok(())
    })
}

/// Extension degree `D`; 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sb_field_degree(f: *const SbField) -> u32 {
    f.as_ref().map_or(0, |f| f.0.degree())
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_field_free(f: *mut SbField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

unsafe fn read_element(ctx: &FieldContext, coeffs: *const u64) -> FfiResult<FieldElement> {
    if coeffs.is_null() {
        return Err((SbStatus::NullPointer, "null coefficient array".into()));
    }
    let slice = std::slice::from_raw_parts(coeffs, ctx.degree() as usize);
    ctx.from_coeffs(slice).map_err(invalid)
}

unsafe fn write_element(ctx: &FieldContext, x: FieldElement, out: *mut u64) -> FfiResult<()> {
    if out.is_null() {
        return Err((SbStatus::NullPointer, "null output array".into()));
    }
    let coeffs = ctx.coeffs(x);
    ptr::copy_nonoverlapping(coeffs.as_ptr(), out, coeffs.len());
    Ok(())
}

/// `out = a * b`; all three are coefficient arrays of length `D`, lowest degree first.
///
/// # Safety
/// `f` must be a live handle; `a`, `b` readable and `out` writable for `D` values.
#[no_mangle]
pub unsafe extern "C" fn sb_field_mul(f: *const SbField, a: *const u64, b: *const u64, out: *mut u64) -> SbStatus {
    guard(|| {
        let ctx = &handle(f)?.0;
        let x = ctx.mul(read_element(ctx, a)?, read_element(ctx, b)?);
        write_element(ctx, x, out)
    })
}

/// `out = a^-1`.
///
/// # Safety
/// `f` must be a live handle; `a` readable and `out` writable for `D` values.
#[no_mangle]
pub unsafe extern "C" fn sb_field_inv(f: *const SbField, a: *const u64, out: *mut u64) -> SbStatus {
    guard(|| {
        let ctx = &handle(f)?.0;
        let x = ctx.inv(read_element(ctx, a)?).map_err(invalid)?;
        write_element(ctx, x, out)
    })
}

/// `out = a^(p^e)`.
///
/// # Safety
/// `f` must be a live handle; `a` readable and `out` writable for `D` values.
#[no_mangle]
pub unsafe extern "C" fn sb_field_frobenius(f: *const SbField, a: *const u64, e: u32, out: *mut u64) -> SbStatus {
    guard(|| {
        let ctx = &handle(f)?.0;
        let x = ctx.frobenius(read_element(ctx, a)?, e);
        write_element(ctx, x, out)
    })
}

#[derive(Deserialize)]
struct TransversalInput {
    field: FieldSpec,
    point: Vec<ElementJson>,
    subspaces: Vec<Vec<Vec<ElementJson>>>,
}

/// Transversal subspace for `{field, point, subspaces}`; the result holds the echelon rows.
///
/// # Safety
/// `input` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_transversal(input: *const c_char, out: *mut *mut c_char) -> SbStatus {
    guard(|| {
        let inp: TransversalInput = read_json(input)?;
        let ctx = inp.field.context().map_err(invalid)?;
        let p = sio::point_in(&ctx, &inp.point).map_err(invalid)?;
        let ls = inp.subspaces.iter().map(|r| sio::subspace_in(&ctx, r)).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
        let m = transversal(&p, &ls).map_err(|e| invalid(format!("{e:?}: {e}")))?;
        write_json(out, &json!({ "dim": m.dim(), "rows": sio::subspace_out(&m) }))
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    #[serde(default)]
    seed: u64,
    trials: Option<usize>,
    q: Option<u64>,
    n: Option<usize>,
    m: Option<usize>,
    #[serde(rename = "N")]
    big_n: Option<usize>,
    r: Option<u32>,
    max_period: Option<u64>,
}

/// Runs a property suite (`span`, `prop14`, `thm2`, `lemma17`, `brauer-laws`)
/// with a JSON configuration; `passed` is set to 1 iff every check held.
///
/// # Safety
/// `target` and `config` must be NUL-terminated strings; `passed` and `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_verify(
    target: *const c_char,
    config: *const c_char,
    passed: *mut i32,
    report: *mut *mut c_char,
) -> SbStatus {
    guard(|| {
        let target = read_str(target)?;
        let c: RunConfig = read_json(config)?;
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| invalid(format!("{name} is required")));
        let r = match target {
            "span" => verify::verify_span(c.q.unwrap_or(5), c.big_n.unwrap_or(3), c.trials.unwrap_or(100), c.seed),
            "prop14" => verify::verify_prop14(
                c.q.ok_or_else(|| invalid("q is required"))?,
                need(c.n, "n")?,
                need(c.m, "m")?,
                c.trials.unwrap_or(200),
                c.seed,
            ),
            "thm2" => verify::verify_thm2(
                c.q.ok_or_else(|| invalid("q is required"))?,
                need(c.n, "n")?,
                need(c.m, "m")?,
                c.trials.unwrap_or(100),
                c.seed,
            ),
            "lemma17" => verify::verify_lemma17(
                c.q.unwrap_or(7),
                c.n.unwrap_or(1),
                c.m.unwrap_or(1),
                c.r.unwrap_or(2),
                c.trials.unwrap_or(20),
                c.seed,
            ),
            "brauer-laws" => verify::verify_brauer_laws(c.trials.unwrap_or(1000), c.seed, c.max_period.unwrap_or(60)),
            other => return Err(invalid(format!("unknown target {other}"))),
        }
        .map_err(invalid)?;
        *out_ptr(passed)? = r.ok as i32;
        write_json(report, &serde_json::to_value(&r).map_err(invalid)?)
    })
}
