//! C ABI over `gunc`. Rings are opaque handles; strings returned to the caller
//! are owned by the caller and released with `gunc_string_free`. Every call
//! records a message retrievable with `gunc_last_error_message` when it does
//! not return `GUNC_STATUS_OK`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use gunc::deciders::{decide, Property};
use gunc::harness::{verify, CorpusSpec};
use gunc::spec::{parse_spec, Builder};
use gunc::{Caps, Error, GradedRing};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GuncStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// The document parsed but does not describe a valid ring.
    InvalidSpec = 4,
    CapExceeded = 5,
    UnknownProperty = 6,
    UnknownTheorem = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// An immutable ring. Safe to share between threads.
pub struct GuncRing {
    ring: Arc<GradedRing>,
    caps: Caps,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GuncStatus {
    match e {
        Error::Parse { .. } | Error::UnknownKind { .. } => GuncStatus::ParseError,
        Error::CapExceeded { .. } => GuncStatus::CapExceeded,
        Error::UnknownProperty(_) => GuncStatus::UnknownProperty,
        Error::UnknownTheorem(_) => GuncStatus::UnknownTheorem,
        _ => GuncStatus::InvalidSpec,
    }
}

/// Runs `f`, turning errors and panics into a status and a recorded message.
fn guard(f: impl FnOnce() -> Result<(), (GuncStatus, String)>) -> GuncStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GuncStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GuncStatus::Internal
        }
    }
}

fn lift(e: Error) -> (GuncStatus, String) {
    (status_of(&e), e.to_string())
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (GuncStatus, String)> {
    if s.is_null() {
        return Err((GuncStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (GuncStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("json has no nul").into_raw()
}

/// Parses and builds a ring-spec document with default caps.
///
/// # Safety
/// `spec_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gunc_ring_from_spec(spec_json: *const c_char, out: *mut *mut GuncRing) -> GuncStatus {
    guard(|| {
        if out.is_null() {
            return Err((GuncStatus::NullPointer, "out is null".into()));
        }
        *out = ptr::null_mut();
        let doc = parse_spec(text(spec_json, "spec_json")?).map_err(lift)?;
        let caps = Caps::default();
        let ring = Builder::new(caps).build(&doc).map_err(lift)?;
        *out = Box::into_raw(Box::new(GuncRing { ring, caps }));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from `gunc_ring_from_spec` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gunc_ring_free(ring: *mut GuncRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// The number of elements, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gunc_ring_order(ring: *const GuncRing) -> usize {
    ring.as_ref().map_or(0, |r| r.ring.order())
}

/// Decides `property` (`"graded-u-nil-clean"`, `"graded-nil-good"`, ...).
/// `holds` receives 1 or 0; `counterexample`, if not null, receives the
/// least failing element or `SIZE_MAX`.
///
/// # Safety
/// `ring` must be a live handle, `property` a nul-terminated string, `holds`
/// a valid pointer and `counterexample` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gunc_ring_check(
    ring: *const GuncRing,
    property: *const c_char,
    strict_literal: bool,
    holds: *mut c_int,
    counterexample: *mut usize,
) -> GuncStatus {
    guard(|| {
        let r = ring.as_ref().ok_or((GuncStatus::NullPointer, "ring is null".into()))?;
        if holds.is_null() {
            return Err((GuncStatus::NullPointer, "holds is null".into()));
        }
        let p: Property = text(property, "property")?.parse().map_err(lift)?;
        let verdict = decide(&r.ring, p, strict_literal);
        *holds = c_int::from(verdict.holds);
        if !counterexample.is_null() {
            *counterexample = verdict.counterexample.unwrap_or(usize::MAX);
        }
        Ok(())
    })
}

/// Structural facts as a JSON object; free with `gunc_string_free`.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gunc_ring_inspect_json(ring: *const GuncRing, out: *mut *mut c_char) -> GuncStatus {
    guard(|| {
        let r = ring.as_ref().ok_or((GuncStatus::NullPointer, "ring is null".into()))?;
        if out.is_null() {
            return Err((GuncStatus::NullPointer, "out is null".into()));
        }
        let doc = gunc::cli::inspect_ring(&r.ring, &r.caps);
        *out = into_c_string(doc.to_string());
        Ok(())
    })
}

/// Runs theorem checks. `ids` is a comma-separated list of registry ids or
/// `"all"`; `corpus_json` is a corpus spec or null for the default corpus.
/// `clean` receives 1 when no counterexample was found. The report JSON
/// goes to `report_out`.
///
/// # Safety
/// `ids` must be a nul-terminated string, `corpus_json` null or one, and the
/// out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn gunc_verify(
    ids: *const c_char,
    corpus_json: *const c_char,
    workers: usize,
    clean: *mut c_int,
    report_out: *mut *mut c_char,
) -> GuncStatus {
    guard(|| {
        if clean.is_null() || report_out.is_null() {
            return Err((GuncStatus::NullPointer, "out pointer is null".into()));
        }
        let ids: Vec<String> = text(ids, "ids")?.split(',').map(|s| s.trim().to_string()).collect();
        let spec: CorpusSpec = if corpus_json.is_null() {
            CorpusSpec::default()
        } else {
            serde_json::from_str(text(corpus_json, "corpus_json")?)
                .map_err(|e| (GuncStatus::ParseError, e.to_string()))?
        };
        let report = verify(&ids, &spec, workers).map_err(lift)?;
        *clean = c_int::from(report.is_clean());
        *report_out = into_c_string(serde_json::to_string(&report).expect("serializable"));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gunc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of this thread's last failed call, or `""`. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn gunc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
