//! C interface to the `spintensor` engine.
//!
//! Decompositions are exposed as opaque handles. Weights cross the boundary
//! as arrays of doubled coordinates (`3/2` is passed as `3`). Every function
//! returns a [`TpStatus`]; on failure a message is kept per thread and can be
//! read back with [`tp_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spintensor::cli::{self, JobSpec, Overrides};
use spintensor::{multiplicity_discrete, multiplicity_principal, Error, Sign, TensorDecomposition, WeightVector};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpStatus {
    Ok = 0,
    Internal = 1,
    Invalid = 2,
    NullPointer = 3,
    Utf8 = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A completed decomposition `δ ↦ N(δ)`.
pub struct TpDecomposition {
    inner: TensorDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: TpStatus, msg: impl Into<String>) -> TpStatus {
    set_error(msg);
    status
}

fn from_error(err: Error) -> TpStatus {
    let status = match err {
        Error::Internal(_) => TpStatus::Internal,
        _ => TpStatus::Invalid,
    };
    fail(status, err.to_string())
}

fn guard(f: impl FnOnce() -> TpStatus) -> TpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TpStatus::Panic, "panic inside spintensor"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TpStatus> {
    if p.is_null() {
        return Err(fail(TpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(TpStatus::Utf8, "argument is not valid UTF-8"))
}

unsafe fn read_weight(doubled: *const i64, len: usize) -> Result<WeightVector, TpStatus> {
    if doubled.is_null() {
        return Err(fail(TpStatus::NullPointer, "null weight argument"));
    }
    let xs = std::slice::from_raw_parts(doubled, len);
    WeightVector::from_doubled(xs).map_err(from_error)
}

/// Runs a job document and returns the result document as a newly allocated
/// string (free it with [`tp_string_free`]). `exit_code` receives the same
/// 0/1/2 code the command-line tool would exit with.
///
/// # Safety
/// `job_json` must be a NUL-terminated string; `out_json` and `exit_code`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tp_run_job(job_json: *const c_char, out_json: *mut *mut c_char, exit_code: *mut i32) -> TpStatus {
    guard(|| {
        if out_json.is_null() || exit_code.is_null() {
            return fail(TpStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(job_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let outcome = cli::run_job_str(text, &Overrides::default());
        *exit_code = outcome.exit_code;
        match CString::new(outcome.output) {
            Ok(s) => {
                *out_json = s.into_raw();
                TpStatus::Ok
            }
            Err(_) => fail(TpStatus::Internal, "result contains a NUL byte"),
        }
    })
}

/// Decomposes the representations described by a job document. The
/// `command` field is required but otherwise ignored.
///
/// # Safety
/// `job_json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tp_decompose(job_json: *const c_char, out: *mut *mut TpDecomposition) -> TpStatus {
    guard(|| {
        if out.is_null() {
            return fail(TpStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(job_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let job = match JobSpec::parse(text) {
            Ok(j) => j,
            Err(msg) => return fail(TpStatus::Invalid, msg),
        };
        match cli::decompose_job(&job, &Overrides::default()) {
            Ok(dec) => {
                *out = Box::into_raw(Box::new(TpDecomposition { inner: dec }));
                TpStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `dec` must come from [`tp_decompose`] and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn tp_decomposition_free(dec: *mut TpDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}

/// Number of distinct `δ`, and the rank of each `δ` (which is the rank of `M′`).
///
/// # Safety
/// `dec` must be a live handle; `count` and `rank` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tp_decomposition_shape(dec: *const TpDecomposition, count: *mut usize, rank: *mut usize) -> TpStatus {
    let Some(dec) = dec.as_ref() else {
        return fail(TpStatus::NullPointer, "null decomposition");
    };
    if count.is_null() || rank.is_null() {
        return fail(TpStatus::NullPointer, "null output pointer");
    }
    *count = dec.inner.blocks.len();
    *rank = dec.inner.ctx.rs_mprime.rank;
    TpStatus::Ok
}

/// Writes block `index` (in ascending `δ` order) as doubled coordinates into
/// `delta_doubled[0..len]` and its multiplicity into `multiplicity`.
///
/// # Safety
/// `dec` must be a live handle; `delta_doubled` must be valid for `len`
/// writes; `multiplicity` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tp_decomposition_block(
    dec: *const TpDecomposition,
    index: usize,
    delta_doubled: *mut i64,
    len: usize,
    multiplicity: *mut u64,
) -> TpStatus {
    let Some(dec) = dec.as_ref() else {
        return fail(TpStatus::NullPointer, "null decomposition");
    };
    if delta_doubled.is_null() || multiplicity.is_null() {
        return fail(TpStatus::NullPointer, "null output pointer");
    }
    let Some((delta, n)) = dec.inner.blocks.iter().nth(index) else {
        return fail(TpStatus::Invalid, format!("block index {index} out of range"));
    };
    let coords = delta.doubled();
    if len < coords.len() {
        return fail(TpStatus::BufferTooSmall, format!("need {} coordinates, got {len}", coords.len()));
    }
    std::slice::from_raw_parts_mut(delta_doubled, coords.len()).copy_from_slice(&coords);
    *multiplicity = *n;
    TpStatus::Ok
}

/// Multiplicity of the principal-series family with `M`-label `φ`.
///
/// # Safety
/// `dec` must be a live handle; `phi_doubled` must be valid for `len` reads.
#[no_mangle]
pub unsafe extern "C" fn tp_multiplicity_principal(
    dec: *const TpDecomposition,
    phi_doubled: *const i64,
    len: usize,
    out: *mut u64,
) -> TpStatus {
    guard(|| {
        let Some(dec) = dec.as_ref() else {
            return fail(TpStatus::NullPointer, "null decomposition");
        };
        if out.is_null() {
            return fail(TpStatus::NullPointer, "null output pointer");
        }
        let phi = match read_weight(phi_doubled, len) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match multiplicity_principal(&dec.inner, &phi) {
            Ok(n) => {
                *out = n;
                TpStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Multiplicity of the discrete series with parameter `a` and sign
/// `sign` (`+1` or `-1`).
///
/// # Safety
/// `dec` must be a live handle; `a_doubled` must be valid for `len` reads.
#[no_mangle]
pub unsafe extern "C" fn tp_multiplicity_discrete(
    dec: *const TpDecomposition,
    a_doubled: *const i64,
    len: usize,
    sign: i32,
    out: *mut u64,
) -> TpStatus {
    guard(|| {
        let Some(dec) = dec.as_ref() else {
            return fail(TpStatus::NullPointer, "null decomposition");
        };
        if out.is_null() {
            return fail(TpStatus::NullPointer, "null output pointer");
        }
        let sign = match sign {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => return fail(TpStatus::Invalid, format!("sign must be +1 or -1, got {sign}")),
        };
        let a = match read_weight(a_doubled, len) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match multiplicity_discrete(&dec.inner, &a, sign) {
            Ok(n) => {
                *out = n;
                TpStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must come from [`tp_run_job`] and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn tp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL, or 0
/// if there is none.
///
/// # Safety
/// `buf` must be valid for `len` writes, or null with `len == 0`.
#[no_mangle]
pub unsafe extern "C" fn tp_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}
