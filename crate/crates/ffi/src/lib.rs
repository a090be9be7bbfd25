//! C ABI over `howe_kostant`: an opaque dual-pair handle, status codes, and
//! JSON strings for structured results.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use howe_kostant::howe::{verify_duality, verify_euler_poincare, verify_omega_transport, DualPairSpec, Label, Side};
use howe_kostant::weights::Sizes;
use howe_kostant::weyl::AlgebraTag;
use howe_kostant::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ComputationFailed = 4,
    Panic = 5,
}

/// Opaque dual-pair specification.
pub struct HkSpec {
    inner: DualPairSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

fn status_of(e: &Error) -> HkStatus {
    match e {
        Error::Parse(_)
        | Error::OutOfRange(_)
        | Error::Inadmissible(_)
        | Error::InvalidPartition(_)
        | Error::TagMismatch(_)
        | Error::NotDominant(_) => HkStatus::InvalidArgument,
        _ => HkStatus::ComputationFailed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HkStatus, String)>) -> HkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HkStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside howe_kostant");
            HkStatus::Panic
        }
    }
}

fn lib<T>(r: howe_kostant::Result<T>) -> Result<T, (HkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (HkStatus, String)> {
    if p.is_null() {
        return Err((HkStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HkStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn spec_ref<'a>(p: *const HkSpec) -> Result<&'a DualPairSpec, (HkStatus, String)> {
    p.as_ref().map(|s| &s.inner).ok_or((HkStatus::NullPointer, "null spec handle".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (HkStatus, String)> {
    if out.is_null() {
        return Err((HkStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: serde_json::Value) -> Result<(), (HkStatus, String)> {
    let s = CString::new(v.to_string()).map_err(|e| (HkStatus::ComputationFailed, e.to_string()))?;
    write_out(out, s.into_raw())
}

fn label(spec: &DualPairSpec, s: &str) -> Result<Label, (HkStatus, String)> {
    lib(Label::parse(spec.group.family, spec.d(), s))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a dual-pair handle.
///
/// `side` is `positive`, `super` or `negative`; `tag` is `a`, `b`, `c`, `d` or `b0`.
/// `p`, `q`, `m`, `n` are used on the super side only.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_spec_new(
    side: *const c_char,
    tag: *const c_char,
    d: u32,
    p: usize,
    q: usize,
    m: usize,
    n: usize,
    degree: u32,
    out: *mut *mut HkSpec,
) -> HkStatus {
    guard(|| {
        let side: Side = lib(text(side)?.parse())?;
        let tag: AlgebraTag = lib(text(tag)?.parse())?;
        let inner = lib(DualPairSpec::new(side, tag, d, Sizes::new(p, q, m, n), degree))?;
        write_out(out, Box::into_raw(Box::new(HkSpec { inner })))
    })
}

/// Releases a handle from [`hk_spec_new`]; null is ignored.
///
/// # Safety
/// `spec` must come from [`hk_spec_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hk_spec_free(spec: *mut HkSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Releases a string returned through an output pointer; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parameters of the handle as a JSON object.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_spec_params_json(spec: *const HkSpec, out: *mut *mut c_char) -> HkStatus {
    guard(|| write_json(out, spec_ref(spec)?.params()))
}

/// Character of the module labelled by `lambda`, as JSON.
///
/// # Safety
/// `spec` must be a live handle; `lambda` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_module_char_json(
    spec: *const HkSpec,
    lambda: *const c_char,
    out: *mut *mut c_char,
) -> HkStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        let l = label(spec, text(lambda)?)?;
        write_json(out, lib(spec.module_char(&l))?.to_json())
    })
}

/// `k`-th homology character with its contributors, as JSON.
///
/// # Safety
/// `spec` must be a live handle; `lambda` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_homology_json(
    spec: *const HkSpec,
    lambda: *const c_char,
    k: u32,
    out: *mut *mut c_char,
) -> HkStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        let l = label(spec, text(lambda)?)?;
        write_json(out, lib(spec.homology_char(&l, k))?.to_json())
    })
}

/// Checks the duality identity; writes the verdict to `ok`.
///
/// # Safety
/// `spec` must be a live handle; `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_verify_duality(spec: *const HkSpec, ok: *mut bool) -> HkStatus {
    guard(|| {
        let r = lib(verify_duality(spec_ref(spec)?))?;
        write_out(ok, r.ok)
    })
}

/// Checks the Euler-Poincare identity for `lambda`; writes the verdict to `ok`.
///
/// # Safety
/// `spec` must be a live handle; `lambda` NUL-terminated; `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_verify_euler_poincare(
    spec: *const HkSpec,
    lambda: *const c_char,
    ok: *mut bool,
) -> HkStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        let l = label(spec, text(lambda)?)?;
        write_out(ok, lib(verify_euler_poincare(spec, &l))?.ok)
    })
}

/// Checks omega transport of the `k`-th homology; writes the verdict to `ok`.
///
/// # Safety
/// `spec` must be a live handle; `lambda` NUL-terminated; `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_verify_omega(
    spec: *const HkSpec,
    lambda: *const c_char,
    k: u32,
    ok: *mut bool,
) -> HkStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        let l = label(spec, text(lambda)?)?;
        write_out(ok, lib(verify_omega_transport(spec, &l, k))?.ok)
    })
}

/// Runs one JSON job in the batch format and writes the result object.
/// `exit_code` receives the code the command line would return.
///
/// # Safety
/// `job` NUL-terminated; `out` and `exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_run_job_json(job: *const c_char, out: *mut *mut c_char, exit_code: *mut i32) -> HkStatus {
    guard(|| {
        let (v, code) = howe_kostant::cli::run_job(text(job)?);
        if exit_code.is_null() {
            return Err((HkStatus::NullPointer, "null exit code pointer".into()));
        }
        write_json(out, v)?;
        write_out(exit_code, code)
    })
}
