//! C interface. Multisegments cross the boundary as opaque handles built
//! from JSON; results come back as status codes with out-parameters.
//! Strings returned by this library must be released with
//! [`ms_string_free`], handles with [`ms_multisegment_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use multiseg::{kl_polynomial, mult, symmetrize, Error, Multisegment, Permutation};

/// Outcome of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    ResourceLimit = 5,
    Internal = 6,
    Panic = 7,
}

/// A multisegment owned by the library.
pub struct MsMultisegment(Multisegment);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let text = CString::new(bytes).expect("interior nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(MsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => MsStatus::Parse,
            Error::ResourceLimit { .. } => MsStatus::ResourceLimit,
            Error::Invariant(_) => MsStatus::Internal,
            _ => MsStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `f` and records any failure for [`ms_last_error_message`].
/// A panic becomes [`MsStatus::Panic`].
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> MsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            MsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside multiseg");
            MsStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(MsStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(MsStatus::InvalidUtf8, e.to_string()))
}

/// # Safety
/// `p` is null or a handle from [`ms_multisegment_from_json`].
unsafe fn read_handle<'a>(p: *const MsMultisegment) -> Result<&'a Multisegment, Failure> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Failure(MsStatus::NullPointer, "null multisegment handle".into()))
}

/// # Safety
/// `out` is null or writable.
unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(MsStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(text).map_err(|e| Failure(MsStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses `{"segments":[[b,e],...]}` or `{[b,e],[k]}` into a new handle.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ms_multisegment_from_json(
    json: *const c_char,
    out: *mut *mut MsMultisegment,
) -> MsStatus {
    guarded(|| {
        if out.is_null() {
            return Err(Failure(MsStatus::NullPointer, "null output pointer".into()));
        }
        let text = read_str(json)?;
        let m = serde_json::from_str::<Multisegment>(text)
            .or_else(|_| text.trim().parse::<Multisegment>())
            .map_err(|e| Failure(MsStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(MsMultisegment(m)));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `handle` is null or an unreleased handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ms_multisegment_free(handle: *mut MsMultisegment) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of segments, or 0 for a null handle.
///
/// # Safety
/// `handle` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ms_multisegment_len(handle: *const MsMultisegment) -> usize {
    handle.as_ref().map_or(0, |h| h.0.len())
}

/// Total number of integers counted with multiplicity, or 0 for null.
///
/// # Safety
/// `handle` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ms_multisegment_degree(handle: *const MsMultisegment) -> u64 {
    handle.as_ref().map_or(0, |h| h.0.degree())
}

/// Canonical JSON of a handle.
///
/// # Safety
/// `handle` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ms_multisegment_to_json(
    handle: *const MsMultisegment,
    out: *mut *mut c_char,
) -> MsStatus {
    guarded(|| write_string(out, serde_json::to_string(read_handle(handle)?).expect("multisegments serialize")))
}

/// The multiplicity `m(b, a)`.
///
/// # Safety
/// `b` and `a` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ms_mult(
    b: *const MsMultisegment,
    a: *const MsMultisegment,
    out: *mut u64,
) -> MsStatus {
    guarded(|| {
        if out.is_null() {
            return Err(Failure(MsStatus::NullPointer, "null output pointer".into()));
        }
        *out = mult(read_handle(b)?, read_handle(a)?)?;
        Ok(())
    })
}

/// Coefficients of `P_{x,w}` as a JSON array, constant term first.
/// Permutations are in one-line notation such as `"1324"`.
///
/// # Safety
/// `x` and `w` are nul-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ms_kl_polynomial(
    x: *const c_char,
    w: *const c_char,
    out: *mut *mut c_char,
) -> MsStatus {
    guarded(|| {
        let x: Permutation = read_str(x)?.parse()?;
        let w: Permutation = read_str(w)?.parse()?;
        write_string(out, serde_json::to_string(&kl_polynomial(&x, &w)?).expect("polynomials serialize"))
    })
}

/// The symmetrization data of `a` as JSON.
///
/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ms_symmetrize_json(
    a: *const MsMultisegment,
    out: *mut *mut c_char,
) -> MsStatus {
    guarded(|| {
        let data = symmetrize(read_handle(a)?)?;
        write_string(out, serde_json::to_string(&data).expect("symmetrization data serializes"))
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` is null or an unreleased string from this library.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
