//! C ABI over `jkpencil`.
//!
//! Pencils live behind the opaque `JkPencil` handle. Every fallible call
//! returns a `JkStatus`; on failure `jk_last_error_message` describes the
//! error for the calling thread. Strings returned through `char **out` are
//! owned by the caller and must be released with `jk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use jkpencil::io;
use jkpencil::pencil::{char_poly, eigenvalue_set, jk_invariants, pencil_rank, SkewPencil};
use jkpencil::reduction::{bilagrangian_completion, obstruction_check};
use jkpencil::subspaces::{core_subspace, mantle_subspace};
use jkpencil::JkError;

/// Status codes; the nonzero error values match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JkStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    Structural = 3,
    Check = 4,
    Panic = 5,
}

/// Opaque pencil handle.
pub struct JkPencil {
    inner: SkewPencil,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &JkError) -> JkStatus {
    match e.exit_code() {
        2 => JkStatus::Parse,
        3 => JkStatus::Structural,
        _ => JkStatus::Check,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (JkStatus, String)>) -> JkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            JkStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            JkStatus::Panic
        }
    }
}

fn lib<T>(r: jkpencil::Result<T>) -> Result<T, (JkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (JkStatus, String) {
    (JkStatus::NullArgument, format!("{what} is null"))
}

unsafe fn input_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (JkStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (JkStatus::Parse, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(p: *const JkPencil) -> Result<&'a SkewPencil, (JkStatus, String)> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("pencil"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (JkStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).expect("JSON has no NUL bytes").into_raw();
    Ok(())
}

/// Parses a pencil JSON document (`{"n", "A", "B"}`) into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_from_json(json: *const c_char, out: *mut *mut JkPencil) -> JkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let p = lib(io::parse_pencil(input_str(json, "json")?))?;
        *out = Box::into_raw(Box::new(JkPencil { inner: p }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `p` must come from `jk_pencil_from_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_free(p: *mut JkPencil) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_dim(p: *const JkPencil, out: *mut usize) -> JkStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = p.n();
        Ok(())
    })
}

/// Rank of the generic form.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_rank(p: *const JkPencil, out: *mut usize) -> JkStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = pencil_rank(p);
        Ok(())
    })
}

/// Invariants report as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_invariants_json(p: *const JkPencil, out: *mut *mut c_char) -> JkStatus {
    guard(|| {
        let p = handle(p)?;
        let v = io::invariants_json(&lib(jk_invariants(p))?, &char_poly(p), &lib(eigenvalue_set(p))?);
        write_string(out, v.to_string())
    })
}

/// Core subspace as `{"ambient", "basis"}` JSON.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_core_json(p: *const JkPencil, out: *mut *mut c_char) -> JkStatus {
    guard(|| {
        let p = handle(p)?;
        write_string(out, io::subspace_json(&lib(core_subspace(p))?).to_string())
    })
}

/// Mantle subspace as `{"ambient", "basis"}` JSON.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_mantle_json(p: *const JkPencil, out: *mut *mut c_char) -> JkStatus {
    guard(|| {
        let p = handle(p)?;
        write_string(out, io::subspace_json(&lib(mantle_subspace(p))?).to_string())
    })
}

/// Bi-Lagrangian completion trace as JSON, starting from the subspace in
/// `from_json`, or from the core when it is null.
///
/// # Safety
/// `p` must be a live handle, `from_json` null or NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_complete_json(
    p: *const JkPencil,
    from_json: *const c_char,
    out: *mut *mut c_char,
) -> JkStatus {
    guard(|| {
        let p = handle(p)?;
        let l0 = if from_json.is_null() {
            lib(core_subspace(p))?
        } else {
            lib(io::parse_subspace(input_str(from_json, "from_json")?))?
        };
        write_string(out, io::trace_json(&lib(bilagrangian_completion(p, &l0))?).to_string())
    })
}

/// Sets `*pass` to 1 when the vector (a JSON array) lies in the image of the
/// generic form, 0 otherwise.
///
/// # Safety
/// `p` must be a live handle, `vector_json` NUL-terminated, `pass` writable.
#[no_mangle]
pub unsafe extern "C" fn jk_pencil_obstruct(
    p: *const JkPencil,
    vector_json: *const c_char,
    pass: *mut c_int,
) -> JkStatus {
    guard(|| {
        let p = handle(p)?;
        let pass = pass.as_mut().ok_or_else(|| null("output pointer"))?;
        let v = lib(io::parse_vector(input_str(vector_json, "vector_json")?))?;
        *pass = c_int::from(lib(obstruction_check(p, &v))?.pass);
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn jk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
