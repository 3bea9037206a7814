//! C interface. Objects are opaque heap handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns
//! a [`VoltopsStatus`]; on failure the message is available from
//! [`voltops_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use voltops::cosetenum::coxeter_flag_graph;
use voltops::format::{read_pmx, read_vop, write_pmx, write_vop};
use voltops::operators::builtin;
use voltops::symmetry::{automorphisms, covers, is_isomorphic};
use voltops::voltage::VoltageOperator;
use voltops::voltage::{preserves_connectivity, product, Connectivity};
use voltops::{Error, Premaniplex};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoltopsStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8 or an out-of-range argument.
    InvalidArgument = 1,
    /// The inputs are well formed but the operation does not apply to them.
    Domain = 2,
    /// A coset enumeration hit its cap.
    Inconclusive = 3,
    Parse = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoltopsConnectivity {
    Yes = 0,
    No = 1,
    Inconclusive = 2,
}

/// Opaque premaniplex handle.
pub struct VoltopsPremaniplex(Premaniplex);

/// Opaque voltage operator handle.
pub struct VoltopsOperator(VoltageOperator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: VoltopsStatus, message: impl Into<String>) -> VoltopsStatus {
    set_error(message.into());
    status
}

fn status_of(e: &Error) -> VoltopsStatus {
    match e {
        Error::Capped { .. } => VoltopsStatus::Inconclusive,
        Error::Parse { .. } => VoltopsStatus::Parse,
        Error::InvalidArgument(_) => VoltopsStatus::InvalidArgument,
        _ => VoltopsStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> Result<(), VoltopsStatus>) -> VoltopsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VoltopsStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(VoltopsStatus::Panic, msg)
        }
    }
}

fn lib<T>(r: voltops::Result<T>) -> Result<T, VoltopsStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, VoltopsStatus> {
    if s.is_null() {
        return Err(fail(VoltopsStatus::InvalidArgument, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(VoltopsStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, VoltopsStatus> {
    p.as_ref()
        .ok_or_else(|| fail(VoltopsStatus::InvalidArgument, "null handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), VoltopsStatus> {
    if out.is_null() {
        return Err(fail(VoltopsStatus::InvalidArgument, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, VoltopsStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(VoltopsStatus::Domain, "output contains a NUL byte"))
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn voltops_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn voltops_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.pmx` text.
///
/// # Safety
/// `pmx` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_premaniplex_from_pmx(
    pmx: *const c_char,
    out: *mut *mut VoltopsPremaniplex,
) -> VoltopsStatus {
    guard(|| {
        let p = lib(read_pmx(text(pmx)?))?;
        put(out, Box::into_raw(Box::new(VoltopsPremaniplex(p))))
    })
}

/// Serializes to `.pmx` text; free the result with [`voltops_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_premaniplex_to_pmx(
    p: *const VoltopsPremaniplex,
    out: *mut *mut c_char,
) -> VoltopsStatus {
    guard(|| {
        let s = owned_string(write_pmx(&deref(p)?.0))?;
        put(out, s)
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn voltops_premaniplex_free(p: *mut VoltopsPremaniplex) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Rank of `p`, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn voltops_premaniplex_rank(p: *const VoltopsPremaniplex) -> usize {
    p.as_ref().map_or(0, |p| p.0.rank())
}

/// Flag count of `p`, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn voltops_premaniplex_flag_count(p: *const VoltopsPremaniplex) -> usize {
    p.as_ref().map_or(0, |p| p.0.flag_count())
}

/// Flag graph of the string Coxeter group with Schläfli symbol
/// `schlafli[0..len]`, by coset enumeration with at most `cap` cosets.
///
/// # Safety
/// `schlafli` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_build_coxeter(
    schlafli: *const usize,
    len: usize,
    cap: usize,
    out: *mut *mut VoltopsPremaniplex,
) -> VoltopsStatus {
    guard(|| {
        if schlafli.is_null() && len > 0 {
            return Err(fail(VoltopsStatus::InvalidArgument, "null Schläfli symbol"));
        }
        let symbol = if len == 0 {
            &[][..]
        } else {
            slice::from_raw_parts(schlafli, len)
        };
        let p = lib(coxeter_flag_graph(symbol, &[], cap))?;
        put(out, Box::into_raw(Box::new(VoltopsPremaniplex(p))))
    })
}

/// Built-in operator by name, such as `"medial"` or `"prism:3"`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_operator_builtin(
    name: *const c_char,
    out: *mut *mut VoltopsOperator,
) -> VoltopsStatus {
    guard(|| {
        let op = lib(builtin(text(name)?))?;
        put(out, Box::into_raw(Box::new(VoltopsOperator(op))))
    })
}

/// Parses `.vop` text.
///
/// # Safety
/// `vop` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_operator_from_vop(
    vop: *const c_char,
    out: *mut *mut VoltopsOperator,
) -> VoltopsStatus {
    guard(|| {
        let op = lib(read_vop(text(vop)?))?;
        put(out, Box::into_raw(Box::new(VoltopsOperator(op))))
    })
}

/// Serializes to `.vop` text; free the result with [`voltops_string_free`].
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_operator_to_vop(
    op: *const VoltopsOperator,
    out: *mut *mut c_char,
) -> VoltopsStatus {
    guard(|| {
        let s = owned_string(write_vop(&deref(op)?.0))?;
        put(out, s)
    })
}

/// # Safety
/// `op` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn voltops_operator_free(op: *mut VoltopsOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// The product `X ⋊ Y`.
///
/// # Safety
/// `x` and `op` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_product(
    x: *const VoltopsPremaniplex,
    op: *const VoltopsOperator,
    out: *mut *mut VoltopsPremaniplex,
) -> VoltopsStatus {
    guard(|| {
        let p = lib(product(&deref(x)?.0, &deref(op)?.0))?;
        put(out, Box::into_raw(Box::new(VoltopsPremaniplex(p))))
    })
}

/// Order of the automorphism group of a connected premaniplex.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_automorphism_order(
    p: *const VoltopsPremaniplex,
    out: *mut usize,
) -> VoltopsStatus {
    guard(|| {
        let g = lib(automorphisms(&deref(p)?.0))?;
        put(out, g.order())
    })
}

/// Number of flag orbits under the automorphism group.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_orbit_count(
    p: *const VoltopsPremaniplex,
    out: *mut usize,
) -> VoltopsStatus {
    guard(|| {
        let g = lib(automorphisms(&deref(p)?.0))?;
        put(out, g.orbit_count())
    })
}

/// # Safety
/// `p` and `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_is_isomorphic(
    p: *const VoltopsPremaniplex,
    q: *const VoltopsPremaniplex,
    out: *mut bool,
) -> VoltopsStatus {
    guard(|| {
        let m = lib(is_isomorphic(&deref(p)?.0, &deref(q)?.0))?;
        put(out, m.is_some())
    })
}

/// Whether `p` covers `q`.
///
/// # Safety
/// `p` and `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_covers(
    p: *const VoltopsPremaniplex,
    q: *const VoltopsPremaniplex,
    out: *mut bool,
) -> VoltopsStatus {
    guard(|| {
        let w = lib(covers(&deref(p)?.0, &deref(q)?.0))?;
        put(out, w.is_some())
    })
}

/// Whether the operator sends connected premaniplexes to connected ones.
/// `index` receives the subgroup index for a `No` answer when it is known,
/// and 0 otherwise.
///
/// # Safety
/// `op` must be a live handle; `answer` and `index` must be writable.
#[no_mangle]
pub unsafe extern "C" fn voltops_preserves_connectivity(
    op: *const VoltopsOperator,
    cap: usize,
    answer: *mut VoltopsConnectivity,
    index: *mut usize,
) -> VoltopsStatus {
    guard(|| {
        let (a, i) = match preserves_connectivity(&deref(op)?.0, cap) {
            Connectivity::Yes => (VoltopsConnectivity::Yes, 0),
            Connectivity::No { index } => (VoltopsConnectivity::No, index.unwrap_or(0)),
            Connectivity::Inconclusive { .. } => (VoltopsConnectivity::Inconclusive, 0),
        };
        put(answer, a)?;
        put(index, i)
    })
}
