//! C ABI for segcalc.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns a
//! [`SegcalcStatus`]; the message of the last failure on the calling thread is
//! available from [`segcalc_last_error`]. Strings returned through `char **`
//! out-parameters are released with [`segcalc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use segcalc::exprio::{parse_rep, render, Format, Render};
use segcalc::groth::{product, ss, GrothElt, ReptnKey};
use segcalc::lfun::{both_pole_at, gj_lfunction, pole_order_at};
use segcalc::segments::HalfInt;
use segcalc::theta::{
    big_theta, ext_weil_character, is_projective, proj_dim_bound, Irreducibility, ThetaResult,
};
use segcalc::verify::{run_suite, Suite};
use segcalc::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegcalcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotDecidable = 4,
    RankOrder = 5,
    OutOfRange = 6,
    NotLinked = 7,
    InvalidArgument = 8,
    UnknownSuite = 9,
    Panic = 10,
}

/// A canonical representation key.
pub struct SegcalcRep(ReptnKey);

/// An element of the Grothendieck group.
pub struct SegcalcClass(GrothElt);

/// The outcome of a theta-lift computation.
pub struct SegcalcTheta(ThetaResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SegcalcStatus {
    match e {
        Error::NotDecidable(_) | Error::MixedKinds => SegcalcStatus::NotDecidable,
        Error::RankOrder { .. } => SegcalcStatus::RankOrder,
        Error::OutOfRange { .. } => SegcalcStatus::OutOfRange,
        Error::NotLinked(..) => SegcalcStatus::NotLinked,
        Error::InvalidSegment(_) | Error::InvalidLabel(_) => SegcalcStatus::InvalidArgument,
        Error::UnknownSuite(_) => SegcalcStatus::UnknownSuite,
    }
}

struct Failure(SegcalcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SegcalcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SegcalcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SegcalcStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(SegcalcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SegcalcStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

fn nonnull<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err(null())
    } else {
        Ok(())
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s)
        .map_err(|_| Failure(SegcalcStatus::InvalidArgument, "interior NUL".into()))?;
    write_out(out, c.into_raw())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn format_of(json: bool) -> Format {
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

/// Message of the last failed call on this thread; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn segcalc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn segcalc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn segcalc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a representation expression such as `"char(2,0)"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_rep_parse(
    text: *const c_char,
    out: *mut *mut SegcalcRep,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let text = read_str(text)?;
        let expr =
            parse_rep(text).map_err(|e| Failure(SegcalcStatus::ParseError, e.to_string()))?;
        write_out(out, boxed(SegcalcRep(expr.to_key()?)))
    })
}

/// # Safety
/// `rep` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn segcalc_rep_free(rep: *mut SegcalcRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Rank `n` of the group `GL_n` the representation lives on; 0 for a null handle.
///
/// # Safety
/// `rep` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn segcalc_rep_degree(rep: *const SegcalcRep) -> u32 {
    rep.as_ref().map_or(0, |r| r.0.degree())
}

/// Renders a representation as text or JSON.
///
/// # Safety
/// `rep` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_rep_render(
    rep: *const SegcalcRep,
    json: bool,
    out: *mut *mut c_char,
) -> SegcalcStatus {
    guard(|| write_string(out, render(&deref(rep)?.0, format_of(json))))
}

/// Class of the induced product `a × b`.
///
/// # Safety
/// `a`, `b` must be valid handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_product(
    a: *const SegcalcRep,
    b: *const SegcalcRep,
    out: *mut *mut SegcalcClass,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let p = product(&deref(a)?.0.clone().into(), &deref(b)?.0.clone().into());
        write_out(out, boxed(SegcalcClass(p)))
    })
}

/// Semisimplification of a representation's class.
///
/// # Safety
/// `rep` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_ss(
    rep: *const SegcalcRep,
    out: *mut *mut SegcalcClass,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let c = ss(&deref(rep)?.0.clone().into())?;
        write_out(out, boxed(SegcalcClass(c)))
    })
}

/// # Safety
/// `class` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn segcalc_class_free(class: *mut SegcalcClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// Number of distinct irreducible terms in a class.
///
/// # Safety
/// `class` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn segcalc_class_len(class: *const SegcalcClass) -> usize {
    class.as_ref().map_or(0, |c| c.0.len())
}

/// Renders a class as text or JSON.
///
/// # Safety
/// `class` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_class_render(
    class: *const SegcalcClass,
    json: bool,
    out: *mut *mut c_char,
) -> SegcalcStatus {
    guard(|| write_string(out, render(&deref(class)?.0, format_of(json))))
}

/// Order of the real pole of `L(s, π)` at `s = s0_twice / 2`.
///
/// # Safety
/// `rep` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_pole_order(
    rep: *const SegcalcRep,
    s0_twice: i64,
    out: *mut u32,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let l = gj_lfunction(&deref(rep)?.0)?;
        write_out(out, pole_order_at(&l, HalfInt::from_twice(s0_twice)))
    })
}

/// Whether `L(s, π)` and `L(s, π^∨)` have poles at `s = (1 + m - n) / 2`.
///
/// # Safety
/// `rep` must be a valid handle; `pole_pi` and `pole_dual` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_both_pole(
    n: u32,
    m: u32,
    rep: *const SegcalcRep,
    pole_pi: *mut bool,
    pole_dual: *mut bool,
) -> SegcalcStatus {
    guard(|| {
        nonnull(pole_pi)?;
        nonnull(pole_dual)?;
        let p = both_pole_at(n, m, &deref(rep)?.0)?;
        write_out(pole_pi, p.pole_pi)?;
        write_out(pole_dual, p.pole_dual)
    })
}

/// Big theta lift of `π` from `GL_n` to `GL_m`, `n ≤ m`.
///
/// # Safety
/// `rep` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_theta(
    n: u32,
    m: u32,
    rep: *const SegcalcRep,
    out: *mut *mut SegcalcTheta,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let r = big_theta(n, m, &deref(rep)?.0)?;
        write_out(out, boxed(SegcalcTheta(r)))
    })
}

/// Ext groups of the Weil representation against `|det_n|^(x_twice / 2)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_ext_character(
    n: u32,
    m: u32,
    x_twice: i64,
    out: *mut *mut SegcalcTheta,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let r = ext_weil_character(n, m, HalfInt::from_twice(x_twice))?;
        write_out(out, boxed(SegcalcTheta(r)))
    })
}

/// # Safety
/// `theta` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn segcalc_theta_free(theta: *mut SegcalcTheta) {
    if !theta.is_null() {
        drop(Box::from_raw(theta));
    }
}

/// 1 if the lift is irreducible, 0 if not, -1 if unknown or the handle is null.
///
/// # Safety
/// `theta` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn segcalc_theta_irreducible(theta: *const SegcalcTheta) -> i32 {
    match theta.as_ref().map(|t| t.0.irreducible) {
        Some(Irreducibility::Yes) => 1,
        Some(Irreducibility::No) => 0,
        _ => -1,
    }
}

/// Class of the lift; fails with `NotDecidable` when it is not known.
///
/// # Safety
/// `theta` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_theta_class(
    theta: *const SegcalcTheta,
    out: *mut *mut SegcalcClass,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let t = deref(theta)?;
        let c =
            t.0.theta.clone().ok_or_else(|| {
                Failure(SegcalcStatus::NotDecidable, "theta lift not covered".into())
            })?;
        write_out(out, boxed(SegcalcClass(c)))
    })
}

/// Class of `Ext^degree`; zero beyond the known degrees.
///
/// # Safety
/// `theta` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_theta_ext(
    theta: *const SegcalcTheta,
    degree: u32,
    out: *mut *mut SegcalcClass,
) -> SegcalcStatus {
    guard(|| {
        nonnull(out)?;
        let t = deref(theta)?;
        let e =
            t.0.ext.as_ref().ok_or_else(|| {
                Failure(SegcalcStatus::NotDecidable, "Ext groups not covered".into())
            })?;
        write_out(out, boxed(SegcalcClass(e.get(degree))))
    })
}

/// Renders the whole result as text or JSON.
///
/// # Safety
/// `theta` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_theta_render(
    theta: *const SegcalcTheta,
    json: bool,
    out: *mut *mut c_char,
) -> SegcalcStatus {
    guard(|| write_string(out, render(&deref(theta)?.0, format_of(json))))
}

/// Whether the Weil representation is projective.
#[no_mangle]
pub extern "C" fn segcalc_is_projective(n: u32, m: u32) -> bool {
    is_projective(n, m)
}

/// Upper bound for the projective dimension of the Weil representation.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_proj_dim_bound(n: u32, m: u32, out: *mut u32) -> SegcalcStatus {
    guard(|| write_out(out, proj_dim_bound(n, m)?))
}

/// Runs a verification suite with its default parameters, overriding the seed
/// and (when non-zero) the sample count. Writes the JSON report and verdict.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `report` and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn segcalc_verify(
    suite: *const c_char,
    seed: u64,
    samples: u32,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> SegcalcStatus {
    guard(|| {
        nonnull(report)?;
        nonnull(passed)?;
        let suite: Suite = read_str(suite)?.parse()?;
        let mut params = suite.default_params();
        params.seed = seed;
        if samples > 0 {
            params.samples = samples;
        }
        let r = run_suite(suite, &params);
        write_out(passed, r.passed())?;
        write_string(report, r.to_json().to_string())
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> String {
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        segcalc_string_free(s);
        out
    }

    #[test]
    fn parse_render_roundtrip() {
        unsafe {
            let mut rep = ptr::null_mut();
            assert_eq!(
                segcalc_rep_parse(c("char(2,0)").as_ptr(), &mut rep),
                SegcalcStatus::Ok
            );
            assert_eq!(segcalc_rep_degree(rep), 2);
            let mut s = ptr::null_mut();
            assert_eq!(segcalc_rep_render(rep, false, &mut s), SegcalcStatus::Ok);
            assert_eq!(take(s), "Speh[1/2,-1/2]");
            segcalc_rep_free(rep);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut rep = ptr::null_mut();
            assert_eq!(
                segcalc_rep_parse(c("St[1/2").as_ptr(), &mut rep),
                SegcalcStatus::ParseError
            );
            assert!(rep.is_null());
            let msg = CStr::from_ptr(segcalc_last_error()).to_str().unwrap();
            assert!(msg.starts_with("parse error"), "{msg}");
            assert_eq!(
                segcalc_rep_parse(ptr::null(), &mut rep),
                SegcalcStatus::NullPointer
            );
            let mut bound = 0;
            assert_eq!(
                segcalc_proj_dim_bound(3, 2, &mut bound),
                SegcalcStatus::RankOrder
            );
        }
    }
}
