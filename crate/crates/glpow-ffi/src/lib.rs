//! C bindings for the glpow library.
//!
//! Conventions at the boundary:
//! - Fields cross as opaque [`GlpField`] handles, released with
//!   [`glp_field_free`].
//! - Every fallible call returns a [`GlpStatus`]; on failure a thread-local
//!   message describes the cause, readable via [`glp_last_error`].
//! - Result payloads are NUL-terminated UTF-8 strings (decimal integers or
//!   JSON documents) owned by the caller; release them with
//!   [`glp_string_free`].
//! - Panics never unwind across the boundary; they surface as
//!   `InternalError`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use glpow::classdata::CombData;
use glpow::cli::{class_decide_report, classify_poly_report};
use glpow::error::Error;
use glpow::ff::FqField;
use glpow::genfun::{self, GfName};
use glpow::polyarith::PolyFq;
use glpow::{mpower, partitions, series};

/// Status code returned by every fallible binding.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlpStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument failed to parse: field descriptor, series name,
    /// class-data JSON, or an out-of-range coefficient.
    ParseError = 3,
    /// A mathematical precondition failed: not prime, not coprime,
    /// not irreducible, and so on.
    DomainError = 4,
    /// No decision criterion covers the requested case.
    Unsupported = 5,
    /// The named series is not defined under the given hypotheses.
    HypothesisViolated = 6,
    /// An enumeration or census exceeded its configured limit.
    LimitExceeded = 7,
    /// An internal invariant failed; library state remains sound.
    InternalError = 8,
}

/// An opaque finite-field handle.
pub struct GlpField {
    inner: FqField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg)
        .unwrap_or_else(|_| CString::new("error text held a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: GlpStatus, msg: String) -> GlpStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> GlpStatus {
    match e {
        Error::Parse(_) => GlpStatus::ParseError,
        Error::UnsupportedCase(_) | Error::UnsupportedModulus { .. } => GlpStatus::Unsupported,
        Error::HypothesisViolated { .. } => GlpStatus::HypothesisViolated,
        Error::SizeLimitExceeded(_) | Error::BudgetExceeded(_) => GlpStatus::LimitExceeded,
        _ => GlpStatus::DomainError,
    }
}

fn report(e: &Error) -> GlpStatus {
    fail(status_of(e), e.to_string())
}

/// Runs the body behind a panic guard so unwinding never crosses into C.
fn guarded(body: impl FnOnce() -> GlpStatus) -> GlpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(GlpStatus::InternalError, format!("internal error: {msg}"))
        }
    }
}

/// Reads a C string argument, reporting null/UTF-8 failures.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, GlpStatus> {
    if p.is_null() {
        return Err(fail(GlpStatus::NullArgument, format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| fail(GlpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// Hands an owned string to the caller through an out-pointer.
unsafe fn give_string(out: *mut *mut c_char, s: String) -> GlpStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            clear_error();
            GlpStatus::Ok
        }
        Err(_) => fail(GlpStatus::InternalError, "result held a NUL byte".into()),
    }
}

unsafe fn field_ref<'a>(field: *const GlpField) -> Result<&'a FqField, GlpStatus> {
    if field.is_null() {
        return Err(fail(GlpStatus::NullArgument, "field handle is null".into()));
    }
    Ok(unsafe { &(*field).inner })
}

/// Creates a field handle from a descriptor: "p", "p^k", or
/// "p^k/c0,c1,...". On success `*out` owns the handle; release it with
/// `glp_field_free`.
#[no_mangle]
pub unsafe extern "C" fn glp_field_new(
    descriptor: *const c_char,
    out: *mut *mut GlpField,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        let desc = match unsafe { read_str(descriptor, "descriptor") } {
            Ok(s) => s,
            Err(status) => return status,
        };
        match FqField::from_descriptor(desc) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(GlpField { inner })) };
                clear_error();
                GlpStatus::Ok
            }
            Err(e) => report(&e),
        }
    })
}

/// Releases a field handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn glp_field_free(field: *mut GlpField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Writes the order q of the field to `*out`.
#[no_mangle]
pub unsafe extern "C" fn glp_field_order(field: *const GlpField, out: *mut u64) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        match unsafe { field_ref(field) } {
            Ok(f) => {
                unsafe { *out = f.q() };
                clear_error();
                GlpStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Writes the full normalized descriptor "p^k/c0,c1,..." to `*out`.
#[no_mangle]
pub unsafe extern "C" fn glp_field_descriptor(
    field: *const GlpField,
    out: *mut *mut c_char,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        match unsafe { field_ref(field) } {
            Ok(f) => unsafe { give_string(out, f.descriptor()) },
            Err(status) => status,
        }
    })
}

/// Writes N_M(q, d), the number of degree-d irreducibles other than x whose
/// companion classes are M-th powers, to `*out` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn glp_count_nm(
    field: *const GlpField,
    m: u64,
    d: u32,
    out: *mut *mut c_char,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        if m == 0 || d == 0 {
            return fail(GlpStatus::ParseError, "M and d must be positive".into());
        }
        match unsafe { field_ref(field) } {
            Ok(f) => {
                let value = mpower::count_nm(f.q(), m, d);
                unsafe { give_string(out, value.to_string()) }
            }
            Err(status) => status,
        }
    })
}

/// Writes N_M^i(q, d), the degree-d irreducible count in power-map stratum
/// i for a prime-power M coprime to q, to `*out` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn glp_count_nmi(
    field: *const GlpField,
    m: u64,
    d: u32,
    i: u32,
    out: *mut *mut c_char,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        if m == 0 || d == 0 {
            return fail(GlpStatus::ParseError, "M and d must be positive".into());
        }
        match unsafe { field_ref(field) } {
            Ok(f) => match mpower::count_nmi(f.q(), m, d, i) {
                Ok(value) => unsafe { give_string(out, value.to_string()) },
                Err(e) => report(&e),
            },
            Err(status) => status,
        }
    })
}

/// Writes |Θ_M(Λ(n))|, the number of weight-n partitions in the image of
/// the Jordan-block power map, to `*out` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn glp_theta_image_count(
    n: u64,
    m: u64,
    out: *mut *mut c_char,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        if m == 0 {
            return fail(GlpStatus::ParseError, "M must be positive".into());
        }
        let value = partitions::count_theta_image(n, m);
        unsafe { give_string(out, value.to_string()) }
    })
}

/// Evaluates the named catalogue series at the field's order, truncated at
/// `order`, and writes it to `*out` as a JSON document
/// {"order": N, "coeffs": ["num/den", ...]}. Pass `m = 0` for entries that
/// take no power M.
#[no_mangle]
pub unsafe extern "C" fn glp_series_json(
    field: *const GlpField,
    name: *const c_char,
    m: u64,
    order: u32,
    out: *mut *mut c_char,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        let name = match unsafe { read_str(name, "series name") } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let gf_name: GfName = match name.parse() {
            Ok(n) => n,
            Err(e) => return report(&e),
        };
        let f = match unsafe { field_ref(field) } {
            Ok(f) => f,
            Err(status) => return status,
        };
        let m = if m == 0 { None } else { Some(m) };
        match genfun::gf(gf_name, f.q(), m, order as usize) {
            Ok(s) => unsafe { give_string(out, series::series_to_json(&s).to_string()) },
            Err(e) => report(&e),
        }
    })
}

/// Classifies one irreducible polynomial, given as `len` constant-first
/// coefficient indices, under the power map for M. Writes a JSON report
/// with M-power membership, stratum, and the factor profile of f(x^M).
#[no_mangle]
pub unsafe extern "C" fn glp_classify_poly_json(
    field: *const GlpField,
    m: u64,
    coeffs: *const u64,
    len: usize,
    out: *mut *mut c_char,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        if coeffs.is_null() {
            return fail(GlpStatus::NullArgument, "coeffs is null".into());
        }
        if len == 0 {
            return fail(GlpStatus::ParseError, "coefficient list is empty".into());
        }
        if m == 0 {
            return fail(GlpStatus::ParseError, "M must be positive".into());
        }
        let f = match unsafe { field_ref(field) } {
            Ok(f) => f,
            Err(status) => return status,
        };
        let indices = unsafe { std::slice::from_raw_parts(coeffs, len) };
        if let Some(&bad) = indices.iter().find(|&&c| c >= f.q()) {
            return fail(
                GlpStatus::ParseError,
                format!("coefficient index {bad} out of range for a field of order {}", f.q()),
            );
        }
        let poly = PolyFq::from_indices(f, indices);
        match classify_poly_report(&poly, m) {
            Ok(v) => unsafe { give_string(out, v.to_string()) },
            Err(e) => report(&e),
        }
    })
}

/// Decides whether the conjugacy class described by `data_json` (the
/// {"field": ..., "entries": [...]} form) is an M-th power. Writes a JSON
/// report with the class invariants, the verdict, and the image class
/// under powering when defined.
#[no_mangle]
pub unsafe extern "C" fn glp_class_decide_json(
    data_json: *const c_char,
    m: u64,
    out: *mut *mut c_char,
) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        if m == 0 {
            return fail(GlpStatus::ParseError, "M must be positive".into());
        }
        let text = match unsafe { read_str(data_json, "class data") } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let v: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return fail(GlpStatus::ParseError, format!("bad class data JSON: {e}")),
        };
        let class = match CombData::from_json(&v) {
            Ok(c) => c,
            Err(e) => return report(&e),
        };
        match class_decide_report(&class, m) {
            Ok(v) => unsafe { give_string(out, v.to_string()) },
            Err(e) => report(&e),
        }
    })
}

/// Writes a copy of the most recent error message on this thread to
/// `*out`, or null when the last call succeeded. The caller releases a
/// non-null result with `glp_string_free`.
#[no_mangle]
pub unsafe extern "C" fn glp_last_error(out: *mut *mut c_char) -> GlpStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GlpStatus::NullArgument, "out is null".into());
        }
        let msg = LAST_ERROR.with(|slot| slot.borrow().clone());
        unsafe {
            *out = match msg {
                Some(c) => c.into_raw(),
                None => ptr::null_mut(),
            };
        }
        GlpStatus::Ok
    })
}

/// Releases a string produced by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn glp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
