//! C ABI over `singmac`. Handles are opaque boxes; strings returned to the
//! caller are NUL-terminated JSON and must be released with
//! [`singmac_string_free`]. Every call returns a [`SingmacStatus`] and
//! leaves a message for [`singmac_last_error`] on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use singmac::combinat::Composition;
use singmac::critical::find_critical_partners;
use singmac::quasistair::{build_quasistaircase, Quasistaircase};
use singmac::scalars::{normalize_specialization, Ring, SpecField, Specialization};
use singmac::verify::{
    specialize_macdonald, verify_singular, Strategy, VerificationReport, VerifyOptions,
};
use singmac::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingmacStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    Pole = 4,
    NullPointer = 5,
    Internal = 6,
}

pub struct SingmacQuasistaircase(Quasistaircase);
pub struct SingmacSpecialization(Specialization);
pub struct SingmacReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SingmacStatus {
    match e {
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => SingmacStatus::BudgetExceeded,
        Error::Pole { .. } | Error::CriticalObstruction { .. } => SingmacStatus::Pole,
        Error::Internal(_) => SingmacStatus::Internal,
        _ => SingmacStatus::InvalidArgument,
    }
}

/// Run `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<SingmacStatus, Error>) -> SingmacStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside singmac".into());
            SingmacStatus::Internal
        }
    }
}

fn json_out(v: &impl serde::Serialize, out: *mut *mut c_char) -> Result<SingmacStatus, Error> {
    let s = serde_json::to_string(v).map_err(|e| Error::Internal(e.to_string()))?;
    let c = CString::new(s).map_err(|e| Error::Internal(e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(SingmacStatus::Ok)
}

unsafe fn composition(parts: *const u32, len: usize) -> Composition {
    if len == 0 {
        Composition(vec![])
    } else {
        Composition(std::slice::from_raw_parts(parts, len).to_vec())
    }
}

macro_rules! nonnull {
    ($($p:expr),*) => {
        if $($p.is_null())||* {
            set_error("null pointer argument".into());
            return SingmacStatus::NullPointer;
        }
    };
}

/// Message of the most recent failure on this thread, or null. Owned by
/// the library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn singmac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn singmac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn singmac_quasistaircase_new(
    m: u32,
    n: u32,
    d: u32,
    k: u32,
    big_n: usize,
    out: *mut *mut SingmacQuasistaircase,
) -> SingmacStatus {
    nonnull!(out);
    guard(|| {
        let q = build_quasistaircase(m, n, d, k, big_n)?;
        *out = Box::into_raw(Box::new(SingmacQuasistaircase(q)));
        Ok(SingmacStatus::Ok)
    })
}

/// # Safety
/// `q` must come from [`singmac_quasistaircase_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn singmac_quasistaircase_free(q: *mut SingmacQuasistaircase) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// `{m, n, d, K, N, lambda, tau, nu}` as JSON.
///
/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn singmac_quasistaircase_json(
    q: *const SingmacQuasistaircase,
    out: *mut *mut c_char,
) -> SingmacStatus {
    nonnull!(q, out);
    guard(|| json_out(&(*q).0, out))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn singmac_specialization_new(
    m: u64,
    n: u64,
    k: i64,
    out: *mut *mut SingmacSpecialization,
) -> SingmacStatus {
    nonnull!(out);
    guard(|| {
        let s = normalize_specialization(m, n, k)?;
        *out = Box::into_raw(Box::new(SingmacSpecialization(s)));
        Ok(SingmacStatus::Ok)
    })
}

/// # Safety
/// `s` must come from [`singmac_specialization_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn singmac_specialization_free(s: *mut SingmacSpecialization) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Verify singularity of the labels of `q` at `s`. `full`: negative for
/// the default size gate, 0 for structural checks, positive for all
/// checks. Returns `CheckFailed` (with the report still written) when a
/// check fails.
///
/// # Safety
/// Handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn singmac_verify(
    q: *const SingmacQuasistaircase,
    s: *const SingmacSpecialization,
    full: i32,
    out: *mut *mut SingmacReport,
) -> SingmacStatus {
    nonnull!(q, s, out);
    guard(|| {
        let opts = VerifyOptions {
            full: if full < 0 { None } else { Some(full > 0) },
            ..Default::default()
        };
        let r = verify_singular(&(*q).0, &(*s).0, &opts)?;
        let ok = r.passed();
        *out = Box::into_raw(Box::new(SingmacReport(r)));
        Ok(if ok {
            SingmacStatus::Ok
        } else {
            SingmacStatus::CheckFailed
        })
    })
}

/// 1 if no enabled check failed, 0 otherwise, −1 for null.
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn singmac_report_passed(r: *const SingmacReport) -> i32 {
    if r.is_null() {
        return -1;
    }
    i32::from((*r).0.passed())
}

/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn singmac_report_json(
    r: *const SingmacReport,
    out: *mut *mut c_char,
) -> SingmacStatus {
    nonnull!(r, out);
    guard(|| json_out(&(*r).0, out))
}

/// # Safety
/// `r` must come from [`singmac_verify`] or be null.
#[no_mangle]
pub unsafe extern "C" fn singmac_report_free(r: *mut SingmacReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Critical partners of `alpha` as a JSON list of `{beta, p, len}`.
///
/// # Safety
/// `alpha` must point to `len` values and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn singmac_critical_search(
    alpha: *const u32,
    len: usize,
    m: u32,
    n: u32,
    max_len: usize,
    out: *mut *mut c_char,
) -> SingmacStatus {
    nonnull!(alpha, out);
    guard(|| {
        let ps = find_critical_partners(&composition(alpha, len), m, n, max_len)?;
        json_out(&ps, out)
    })
}

/// `M_α` at `s` with coefficients rendered as strings.
///
/// # Safety
/// `alpha` must point to `len` values, `s` be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn singmac_macdonald_specialized(
    alpha: *const u32,
    len: usize,
    s: *const SingmacSpecialization,
    out: *mut *mut c_char,
) -> SingmacStatus {
    nonnull!(alpha, s, out);
    guard(|| {
        let spec = &(*s).0;
        let field = SpecField::new(spec);
        let p = specialize_macdonald(&composition(alpha, len), spec, Strategy::Project)?;
        json_out(
            &p.to_json(|c| serde_json::Value::String(field.show(c))),
            out,
        )
    })
}
