//! C ABI over `newton_spectrum`.
//!
//! Polyhedra live behind an opaque `NsPolyhedron` handle. Every fallible call
//! returns an `NsStatus`; on failure the message is kept in a thread-local
//! slot readable with `ns_last_error`. Strings handed out by the library must
//! be released with `ns_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use newton_spectrum::motivic::descent_check;
use newton_spectrum::newton::{parse_json, parse_polynomial, NewtonPolyhedron};
use newton_spectrum::{report, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NsStatus {
    Ok = 0,
    /// The input could not be parsed or is malformed.
    InputError = 1,
    /// The input is valid but the invariant is unavailable for it.
    DomainError = 2,
    NullPointer = 3,
    /// A string argument is not valid UTF-8.
    Utf8 = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// Report selector for `ns_report_json`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NsReport {
    Analyze = 0,
    Spectrum = 1,
    Pairs = 2,
    Jordan = 3,
    BsRoot = 4,
    Fan = 5,
    DescentCheck = 6,
    OracleCheck = 7,
    Identities = 8,
}

/// Opaque handle to a Newton polyhedron.
pub struct NsPolyhedron {
    inner: NewtonPolyhedron,
}

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

fn status_of(e: &Error) -> NsStatus {
    set_error(format!("{}: {}", e.kind(), e));
    if e.is_domain() {
        NsStatus::DomainError
    } else {
        NsStatus::InputError
    }
}

fn guard(f: impl FnOnce() -> NsStatus) -> NsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            NsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, NsStatus> {
    if s.is_null() {
        set_error("null pointer argument");
        return Err(NsStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        NsStatus::Utf8
    })
}

fn hand_out(s: String, out: *mut *mut c_char) -> NsStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = c.into_raw() };
            NsStatus::Ok
        }
        Err(_) => {
            set_error("output contains an interior NUL byte");
            NsStatus::Panic
        }
    }
}

fn build(text: &str, json: bool, dim: usize, assume_isolated: bool, out: *mut *mut NsPolyhedron) -> NsStatus {
    let support = if json { parse_json(text) } else { parse_polynomial(text, (dim > 0).then_some(dim)) };
    let support = match support {
        Ok(s) => {
            let isolated = s.assume_isolated || assume_isolated;
            let nondegenerate = s.assume_nondegenerate;
            s.with_flags(nondegenerate, isolated)
        }
        Err(e) => return status_of(&e),
    };
    match NewtonPolyhedron::build(support) {
        Ok(p) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = Box::into_raw(Box::new(NsPolyhedron { inner: p })) };
            NsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds a polyhedron from polynomial text such as `"x^2+y^3"`.
///
/// `dim` is the number of variables, or 0 to infer it.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_polyhedron_from_text(
    text: *const c_char,
    dim: usize,
    assume_isolated: bool,
    out: *mut *mut NsPolyhedron,
) -> NsStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return NsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match read_str(text) {
            Ok(t) => build(t, false, dim, assume_isolated, out),
            Err(s) => s,
        }
    })
}

/// Builds a polyhedron from the JSON input form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_polyhedron_from_json(json: *const c_char, out: *mut *mut NsPolyhedron) -> NsStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return NsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        match read_str(json) {
            Ok(t) => build(t, true, 0, false, out),
            Err(s) => s,
        }
    })
}

/// Releases a polyhedron. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ns_polyhedron_free(p: *mut NsPolyhedron) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of variables of the polyhedron, or 0 for null.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ns_polyhedron_dim(p: *const NsPolyhedron) -> usize {
    p.as_ref().map_or(0, |p| p.inner.n)
}

/// Computes a report and writes it as a JSON string to `out`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_report_json(p: *const NsPolyhedron, which: NsReport, out: *mut *mut c_char) -> NsStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            set_error("null pointer argument");
            return NsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let p = &(*p).inner;
        let value = match which {
            NsReport::Analyze => report::analyze(p),
            NsReport::Spectrum => report::spectrum(p).map(|x| x.1),
            NsReport::Pairs => report::pairs(p).map(|x| x.1),
            NsReport::Jordan => report::jordan(p).map(|x| x.1),
            NsReport::BsRoot => report::bs_root(p).map(|x| x.1),
            NsReport::Fan => report::fan(p).map(|x| x.2),
            NsReport::DescentCheck => report::descent(p).map(|x| x.1),
            NsReport::OracleCheck => report::oracle_check(p).map(|x| x.1),
            NsReport::Identities => report::identities(p).map(|x| x.1),
        };
        match value {
            Ok(v) => hand_out(report::to_string(&v), out),
            Err(e) => status_of(&e),
        }
    })
}

/// Maximal Bernstein-Sato root as a canonical `"p/q"` string, and whether it
/// is a root of the reduced polynomial.
///
/// # Safety
/// `p` must be a live handle; `root` and `reduced` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ns_bs_root(p: *const NsPolyhedron, root: *mut *mut c_char, reduced: *mut bool) -> NsStatus {
    guard(|| {
        if p.is_null() || root.is_null() || reduced.is_null() {
            set_error("null pointer argument");
            return NsStatus::NullPointer;
        }
        *root = ptr::null_mut();
        match report::bs_root(&(*p).inner) {
            Ok((b, _)) => {
                *reduced = b.reduced;
                hand_out(newton_spectrum::exactla::format_rational(&b.root), root)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Runs the motivic descent check; `holds` receives the verdict.
///
/// # Safety
/// `p` must be a live handle and `holds` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ns_descent_check(p: *const NsPolyhedron, holds: *mut bool) -> NsStatus {
    guard(|| {
        if p.is_null() || holds.is_null() {
            set_error("null pointer argument");
            return NsStatus::NullPointer;
        }
        match descent_check(&(*p).inner) {
            Ok(r) => {
                *holds = r.holds;
                NsStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ns_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
