//! C interface to `longres`.
//!
//! Functions return an `LrStatus`; results come back through out-pointers.
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. After a failure `lr_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use longres::cli::{function_to_json, parse_input_str, Input};
use longres::polycore::{fmt_rational, to_f64, RatFn};
use longres::sos::SosOptions;
use longres::synth::{check_positive_real, synthesize_with, PositivityVerdict, Realization, SynthOptions};
use longres::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    BadInput = 4,
    NotPositiveReal = 5,
    OutOfRange = 6,
    Failed = 7,
    Panic = 8,
}

/// Outcome of `lr_check`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrVerdict {
    CertifiedPositive = 0,
    Violation = 1,
    Unknown = 2,
}

/// Rational matrix function `P / q`.
pub struct LrFunction(RatFn);

/// Pencil realizing a function.
pub struct LrRealization(Realization);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> LrStatus {
    match e {
        Error::Parse { .. } => LrStatus::Parse,
        Error::BadInput(_) | Error::DimensionMismatch { .. } | Error::SizeMismatch(_) => LrStatus::BadInput,
        Error::NotPositiveReal(_) => LrStatus::NotPositiveReal,
        _ => LrStatus::Failed,
    }
}

/// Runs `body`, recording any error or panic.
fn guard(body: impl FnOnce() -> Result<(), LrStatus>) -> LrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            LrStatus::Panic
        }
    }
}

fn fail(e: Error) -> LrStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> LrStatus {
    set_error(format!("{what} is null"));
    LrStatus::NullPointer
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, LrStatus> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        LrStatus::InvalidUtf8
    })
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, LrStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a function from JSON text `{"d", "num", "den"}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_function_from_json(json: *const c_char, out: *mut *mut LrFunction) -> LrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let json = text(json, "json")?;
        match parse_input_str(json).map_err(fail)? {
            Input::Function(f) => {
                *out = Box::into_raw(Box::new(LrFunction(f)));
                Ok(())
            }
            Input::Form(_) => Err(fail(Error::BadInput("expected \"num\" and \"den\"".into()))),
        }
    })
}

/// Serializes a function back to JSON. Free the result with `lr_string_free`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_function_to_json(f: *const LrFunction, out: *mut *mut c_char) -> LrStatus {
    guard(|| {
        let f = borrow(f, "function")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = c_string(function_to_json(&f.0));
        Ok(())
    })
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_function_nvars(f: *const LrFunction) -> usize {
    f.as_ref().map_or(0, |f| f.0.nvars())
}

/// Matrix size `m`, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_function_size(f: *const LrFunction) -> usize {
    f.as_ref().map_or(0, |f| f.0.size())
}

/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_function_free(f: *mut LrFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Positivity check. A non-constant or indefinite linear term yields
/// `NOT_POSITIVE_REAL` rather than a verdict.
///
/// # Safety
/// `f` must be a live handle and `verdict` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_check(f: *const LrFunction, seed: u64, verdict: *mut LrVerdict) -> LrStatus {
    guard(|| {
        let f = borrow(f, "function")?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let check = check_positive_real(&f.0, &SosOptions::default(), seed).map_err(fail)?;
        *verdict = match check.verdict {
            PositivityVerdict::CertifiedPositive => LrVerdict::CertifiedPositive,
            PositivityVerdict::Violation { .. } => LrVerdict::Violation,
            PositivityVerdict::Unknown => LrVerdict::Unknown,
        };
        Ok(())
    })
}

/// Synthesizes a pencil for `f`, verified at random points drawn from `seed`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_synthesize(f: *const LrFunction, seed: u64, out: *mut *mut LrRealization) -> LrStatus {
    guard(|| {
        let f = borrow(f, "function")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = SynthOptions {
            seed,
            ..SynthOptions::default()
        };
        let r = synthesize_with(&f.0, &opts).map_err(fail)?;
        *out = Box::into_raw(Box::new(LrRealization(r)));
        Ok(())
    })
}

/// Pencil size `N`, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_realization_size(r: *const LrRealization) -> usize {
    r.as_ref().map_or(0, |r| r.0.pencil.size())
}

/// Number of pencil coefficients, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_realization_nvars(r: *const LrRealization) -> usize {
    r.as_ref().map_or(0, |r| r.0.pencil.coeffs().len())
}

/// Size of the leading block, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_realization_block(r: *const LrRealization) -> usize {
    r.as_ref().map_or(0, |r| r.0.m)
}

/// Whether every pencil coefficient was verified PSD in exact arithmetic.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_realization_is_exact(r: *const LrRealization) -> bool {
    r.as_ref().is_some_and(|r| r.0.exact_psd && !r.0.numeric)
}

/// Copies coefficient `k` row-major into `buf`, which holds `len >= N*N`
/// doubles.
///
/// # Safety
/// `r` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn lr_realization_coefficient(
    r: *const LrRealization,
    k: usize,
    buf: *mut f64,
    len: usize,
) -> LrStatus {
    guard(|| {
        let r = borrow(r, "realization")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let coeffs = r.0.pencil.coeffs();
        let Some(a) = coeffs.get(k) else {
            set_error(format!("coefficient {k} out of range (have {})", coeffs.len()));
            return Err(LrStatus::OutOfRange);
        };
        let n = a.size();
        if len < n * n {
            set_error(format!("buffer holds {len} entries, need {}", n * n));
            return Err(LrStatus::OutOfRange);
        }
        let out = std::slice::from_raw_parts_mut(buf, n * n);
        for (i, row) in a.rows().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[i * n + j] = to_f64(x);
            }
        }
        Ok(())
    })
}

/// Exact pencil as JSON: `{"m", "size", "coefficients": [[["p/q", ...], ...], ...]}`.
/// Free the result with `lr_string_free`.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_realization_to_json(r: *const LrRealization, out: *mut *mut c_char) -> LrStatus {
    guard(|| {
        let r = borrow(r, "realization")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let coefficients: Vec<Vec<Vec<String>>> =
            r.0.pencil
                .coeffs()
                .iter()
                .map(|a| {
                    a.rows()
                        .iter()
                        .map(|row| row.iter().map(fmt_rational).collect())
                        .collect()
                })
                .collect();
        let value = serde_json::json!({
            "m": r.0.m,
            "size": r.0.pencil.size(),
            "coefficients": coefficients,
        });
        *out = c_string(value.to_string());
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_realization_free(r: *mut LrRealization) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
