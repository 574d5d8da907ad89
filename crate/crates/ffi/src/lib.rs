//! C interface to `lsv-core`.
//!
//! Handles are opaque and owned by the caller; free them with the matching
//! `*_free` function. Every fallible call returns an [`LsvStatus`] and, on
//! failure, leaves a message readable through [`lsv_last_error`] on the same
//! thread. Strings returned by the library are freed with [`lsv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lsv_core::algebra::{antisymmetry_sweep, bracket, jacobi_sweep, Element, Window};
use lsv_core::cohomology::reduce;
use lsv_core::config::{cocycle_from_json, parse_config, reduction_to_json};
use lsv_core::error::Error;
use lsv_core::parse::parse_element;
use lsv_core::scalars::GroupData;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsvStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed text or a basis element outside the algebra.
    ParseError = 3,
    /// Bad configuration or an input the computation cannot accept.
    InvalidInput = 4,
    /// The computation ran and produced a failure witness.
    CheckFailed = 5,
    Panic = 6,
}

/// A group `(Gamma, s)` together with the window used for checks.
pub struct LsvAlgebra {
    group: GroupData,
    window: Window,
}

/// An element of the algebra.
pub struct LsvElement(Element);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> LsvStatus {
    match lsv_core::cli::exit_code(e) {
        1 => LsvStatus::CheckFailed,
        _ => match e {
            Error::Parse { .. } | Error::Membership { .. } => LsvStatus::ParseError,
            _ => LsvStatus::InvalidInput,
        },
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), LsvStatus>>(f: F) -> LsvStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LsvStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            LsvStatus::Panic
        }
    }
}

fn fail(e: Error) -> LsvStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, LsvStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(LsvStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        LsvStatus::InvalidUtf8
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, LsvStatus> {
    p.as_ref().ok_or_else(|| {
        set_error(format!("{what} is null"));
        LsvStatus::NullArgument
    })
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), LsvStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(LsvStatus::NullArgument);
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn lsv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// The default algebra: Gamma = Z, s = 1/2, window (3, 3).
#[no_mangle]
pub extern "C" fn lsv_algebra_new_default() -> *mut LsvAlgebra {
    Box::into_raw(Box::new(LsvAlgebra { group: GroupData::integers_half(), window: Window::default() }))
}

/// Build an algebra from a JSON group configuration such as
/// `{"field":"Q","gamma_generators":["2"],"s":"1"}`.
///
/// # Safety
/// `config_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lsv_algebra_from_config(config_json: *const c_char, out: *mut *mut LsvAlgebra) -> LsvStatus {
    guard(|| {
        out_arg(out, "out")?;
        let text = str_arg(config_json, "config_json")?;
        let (group, window) = parse_config(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(LsvAlgebra { group, window }));
        Ok(())
    })
}

/// Replace the check window.
///
/// # Safety
/// `alg` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn lsv_algebra_set_window(alg: *mut LsvAlgebra, gamma_height: u32, loop_bound: u32) -> LsvStatus {
    guard(|| {
        let a = alg.as_mut().ok_or_else(|| {
            set_error("alg is null");
            LsvStatus::NullArgument
        })?;
        if gamma_height == 0 {
            set_error("gamma_height must be positive");
            return Err(LsvStatus::InvalidInput);
        }
        a.window = Window::new(gamma_height, loop_bound);
        Ok(())
    })
}

/// # Safety
/// `alg` must be null or come from this library, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn lsv_algebra_free(alg: *mut LsvAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Parse an element such as `2*L(1,0) - 1/2*Y(1/2,3)`.
///
/// # Safety
/// `alg` must be a live handle, `text` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lsv_element_parse(
    alg: *const LsvAlgebra,
    text: *const c_char,
    out: *mut *mut LsvElement,
) -> LsvStatus {
    guard(|| {
        out_arg(out, "out")?;
        let a = ref_arg(alg, "alg")?;
        let text = str_arg(text, "text")?;
        let x = parse_element(&a.group, text).map_err(fail)?;
        *out = Box::into_raw(Box::new(LsvElement(x)));
        Ok(())
    })
}

/// `[x, y]` as a new element.
///
/// # Safety
/// `x` and `y` must be live handles, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lsv_element_bracket(
    x: *const LsvElement,
    y: *const LsvElement,
    out: *mut *mut LsvElement,
) -> LsvStatus {
    guard(|| {
        out_arg(out, "out")?;
        let (x, y) = (ref_arg(x, "x")?, ref_arg(y, "y")?);
        *out = Box::into_raw(Box::new(LsvElement(bracket(&x.0, &y.0))));
        Ok(())
    })
}

/// 1 if `x` is zero, 0 otherwise, -1 for a null handle.
///
/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsv_element_is_zero(x: *const LsvElement) -> i32 {
    x.as_ref().map_or(-1, |x| i32::from(x.0.is_zero()))
}

/// Text form of `x`; free with [`lsv_string_free`]. Null for a null handle.
///
/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lsv_element_to_string(x: *const LsvElement) -> *mut c_char {
    match x.as_ref() {
        Some(x) => into_c_string(x.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `x` must be null or come from this library, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn lsv_element_free(x: *mut LsvElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lsv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Antisymmetry and Jacobi over the window. Writes the number of failing
/// instances to `failures`; returns `CHECK_FAILED` when it is nonzero.
///
/// # Safety
/// `alg` must be a live handle and `failures` valid.
#[no_mangle]
pub unsafe extern "C" fn lsv_check_jacobi(alg: *const LsvAlgebra, failures: *mut usize) -> LsvStatus {
    guard(|| {
        out_arg(failures, "failures")?;
        let a = ref_arg(alg, "alg")?;
        let mut w = antisymmetry_sweep(&a.group, &a.window);
        w.extend(jacobi_sweep(&a.group, &a.window));
        *failures = w.len();
        if let Some(first) = w.first() {
            set_error(format!("{} failures, first at {first}", w.len()));
            return Err(LsvStatus::CheckFailed);
        }
        Ok(())
    })
}

/// Reduce a cocycle given as JSON (`{"classes":..,"f":..}` or `{"table":..}`)
/// and write the report, e.g. `{"classes":{"0":"3"},"residual":"0"}`, to `out`.
/// A nonzero residual still writes the report and returns `CHECK_FAILED`.
///
/// # Safety
/// `alg` must be a live handle, `cocycle_json` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lsv_cocycle_class(
    alg: *const LsvAlgebra,
    cocycle_json: *const c_char,
    out: *mut *mut c_char,
) -> LsvStatus {
    guard(|| {
        out_arg(out, "out")?;
        let a = ref_arg(alg, "alg")?;
        let text = str_arg(cocycle_json, "cocycle_json")?;
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| fail(e.into()))?;
        let c = cocycle_from_json(&a.group, &a.window, &v).map_err(fail)?;
        let r = reduce(&c, &a.group, &a.window).map_err(fail)?;
        *out = into_c_string(reduction_to_json(&r, &a.group, &a.window, false).to_string());
        if r.passes() {
            Ok(())
        } else {
            set_error("reduction left a nonzero residual");
            Err(LsvStatus::CheckFailed)
        }
    })
}
