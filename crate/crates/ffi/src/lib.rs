//! C ABI over `k3weyl-core`.
//!
//! Objects are opaque handles created by `*_new` functions and released with
//! the matching `*_free`. Every fallible call returns a [`K3Status`]; on
//! failure [`k3_last_error_message`] describes the error on the calling
//! thread. Strings returned through out-parameters are owned by the caller
//! and released with [`k3_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use k3weyl_core::lattice::Lattice;
use k3weyl_core::matrix::IntMatrix;
use k3weyl_core::surface::SurfaceSpec;
use k3weyl_core::weyl::CertificateInput;
use k3weyl_core::zeta::{count_points_with, run_van_luijk, CountOptions, VanLuijkConfig};
use k3weyl_core::{Error, ErrorClass};
use num_bigint::BigInt;

/// Result of a call. The first four values match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K3Status {
    Ok = 0,
    /// A mathematical check failed.
    Math = 1,
    /// Malformed input.
    Input = 2,
    /// Refused by the cost policy or missing data.
    Budget = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// A value does not fit the requested C type.
    Overflow = 5,
    /// Internal panic.
    Panic = 6,
}

/// Opaque integral lattice.
pub struct K3Lattice {
    inner: Lattice,
}

/// Opaque surface description.
pub struct K3Surface {
    inner: SurfaceSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: K3Status, msg: impl Into<String>) -> K3Status {
    set_last_error(msg.into());
    status
}

fn from_error(e: Error) -> K3Status {
    let status = match e.class() {
        ErrorClass::Math => K3Status::Math,
        ErrorClass::Input => K3Status::Input,
        ErrorClass::Budget => K3Status::Budget,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> K3Status) -> K3Status {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(K3Status::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, K3Status> {
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(K3Status::Input, "string is not valid UTF-8"))
}

fn write_string(out: *mut *mut c_char, s: String) -> K3Status {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            K3Status::Ok
        }
        Err(_) => fail(K3Status::Panic, "output contains a nul byte"),
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn k3_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn k3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a lattice from a row-major `rank × rank` Gram matrix.
///
/// # Safety
/// `gram` must point to `rank * rank` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3_lattice_new(
    gram: *const i64,
    rank: usize,
    out: *mut *mut K3Lattice,
) -> K3Status {
    guard(|| {
        if gram.is_null() || out.is_null() {
            return fail(K3Status::NullPointer, "null argument");
        }
        let Some(len) = rank.checked_mul(rank) else {
            return fail(K3Status::Overflow, "rank too large");
        };
        let entries = std::slice::from_raw_parts(gram, len);
        let rows: Vec<Vec<BigInt>> = entries
            .chunks(rank.max(1))
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let result = IntMatrix::from_rows(rows).and_then(Lattice::new);
        match result {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(K3Lattice { inner }));
                K3Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `lat` must come from [`k3_lattice_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn k3_lattice_free(lat: *mut K3Lattice) {
    if !lat.is_null() {
        drop(Box::from_raw(lat));
    }
}

/// # Safety
/// `lat` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn k3_lattice_rank(lat: *const K3Lattice) -> usize {
    lat.as_ref().map_or(0, |l| l.inner.rank())
}

/// # Safety
/// `lat` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k3_lattice_discriminant(lat: *const K3Lattice, out: *mut i64) -> K3Status {
    guard(|| {
        let (Some(l), false) = (lat.as_ref(), out.is_null()) else {
            return fail(K3Status::NullPointer, "null argument");
        };
        match i64::try_from(l.inner.discriminant()) {
            Ok(d) => {
                *out = d;
                K3Status::Ok
            }
            Err(_) => fail(K3Status::Overflow, "discriminant does not fit in 64 bits"),
        }
    })
}

/// # Safety
/// `lat` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k3_lattice_is_even(lat: *const K3Lattice, out: *mut bool) -> K3Status {
    guard(|| {
        let (Some(l), false) = (lat.as_ref(), out.is_null()) else {
            return fail(K3Status::NullPointer, "null argument");
        };
        *out = l.inner.is_even();
        K3Status::Ok
    })
}

/// Runs the non-normality certificate and writes its JSON report. A null
/// `lattice_json` uses the bundled data.
///
/// # Safety
/// `lattice_json` must be null or a nul-terminated string; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn k3_certify_json(
    lattice_json: *const c_char,
    out_json: *mut *mut c_char,
) -> K3Status {
    guard(|| {
        if out_json.is_null() {
            return fail(K3Status::NullPointer, "null argument");
        }
        let input = if lattice_json.is_null() {
            CertificateInput::bundled()
        } else {
            let s = match read_str(lattice_json) {
                Ok(s) => s,
                Err(st) => return st,
            };
            match CertificateInput::from_json(s) {
                Ok(i) => i,
                Err(e) => return from_error(e),
            }
        };
        match input.certify() {
            Ok(cert) => match serde_json::to_string(&cert.report()) {
                Ok(s) => write_string(out_json, s),
                Err(e) => fail(K3Status::Panic, e.to_string()),
            },
            Err(e) => from_error(e),
        }
    })
}

/// The bundled example surface.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3_surface_bundled(out: *mut *mut K3Surface) -> K3Status {
    guard(|| {
        if out.is_null() {
            return fail(K3Status::NullPointer, "null argument");
        }
        *out = Box::into_raw(Box::new(K3Surface {
            inner: SurfaceSpec::bundled_example(),
        }));
        K3Status::Ok
    })
}

/// Parses a surface spec from JSON.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k3_surface_from_json(
    json: *const c_char,
    out: *mut *mut K3Surface,
) -> K3Status {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(K3Status::NullPointer, "null argument");
        }
        let s = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match SurfaceSpec::from_json(s) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(K3Surface { inner }));
                K3Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn k3_surface_free(s: *mut K3Surface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of points of the surface over `F_{p^n}`. `threads = 0` uses all
/// available cores; `long_run` raises the cost threshold.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k3_count_points(
    s: *const K3Surface,
    p: u32,
    n: u32,
    threads: u32,
    long_run: bool,
    out: *mut u64,
) -> K3Status {
    guard(|| {
        let (Some(s), false) = (s.as_ref(), out.is_null()) else {
            return fail(K3Status::NullPointer, "null argument");
        };
        let opts = options(threads).long(long_run);
        let result = s
            .inner
            .quartic()
            .and_then(|h| count_points_with(&h, p, n, &opts));
        match result {
            Ok(rec) => {
                *out = rec.count;
                K3Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

fn options(threads: u32) -> CountOptions {
    if threads == 0 {
        CountOptions::default()
    } else {
        CountOptions::with_threads(threads as usize)
    }
}

/// Runs the full Picard number argument and writes the JSON report. The
/// return value reflects the first failing stage; the report is written
/// whenever the status is not `NullPointer` or `Panic`.
///
/// # Safety
/// `s` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn k3_verify_json(
    s: *const K3Surface,
    threads: u32,
    use_reference_counts: bool,
    out_json: *mut *mut c_char,
) -> K3Status {
    guard(|| {
        let (Some(s), false) = (s.as_ref(), out_json.is_null()) else {
            return fail(K3Status::NullPointer, "null argument");
        };
        let config = VanLuijkConfig {
            count_options: options(threads),
            use_reference_counts,
            ..VanLuijkConfig::default()
        };
        let report = run_van_luijk(&s.inner, &config);
        let json = match serde_json::to_string(&report) {
            Ok(j) => j,
            Err(e) => return fail(K3Status::Panic, e.to_string()),
        };
        let written = write_string(out_json, json);
        match &report.failure {
            None => written,
            Some(f) => {
                let status = match f.class {
                    ErrorClass::Math => K3Status::Math,
                    ErrorClass::Input => K3Status::Input,
                    ErrorClass::Budget => K3Status::Budget,
                };
                fail(status, format!("stage '{}': {}", f.stage, f.message))
            }
        }
    })
}
