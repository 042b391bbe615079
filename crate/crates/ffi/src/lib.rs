//! C ABI over the `oneconn` engine.
//!
//! Graphs cross the boundary as JSON text and live behind an opaque
//! [`OcGraph`] handle. Results come back as NUL-terminated JSON strings
//! owned by the caller and released with [`oc_string_free`]. Every entry
//! point returns an [`OcStatus`]; on failure [`oc_last_error`] describes
//! what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use oneconn::covariance::{
    covariance_matrix, det_linear_subgraphs, naive_inverse, trek_rule, CovarianceResult,
};
use oneconn::graph::MixedGraph;
use oneconn::ideal::degree_scan;
use oneconn::ident::identifiability_report;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Precondition = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OcMethod {
    OneConn = 0,
    Naive = 1,
}

/// Opaque graph handle.
pub struct OcGraph {
    graph: MixedGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Outcome<T> = Result<T, (OcStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome<()>) -> OcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            OcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            OcStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const OcGraph) -> Outcome<&'a MixedGraph> {
    unsafe { g.as_ref() }
        .map(|h| &h.graph)
        .ok_or((OcStatus::NullPointer, "graph handle is null".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome<()> {
    if out.is_null() {
        return Err((OcStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|e| (OcStatus::Internal, e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Outcome<String> {
    serde_json::to_string(v).map_err(|e| (OcStatus::Internal, e.to_string()))
}

fn covariance_json(cov: &CovarianceResult) -> Outcome<String> {
    to_json(&cov.serialize())
}

/// Parses a graph from JSON text. On success `*out` receives a handle to
/// be released with [`oc_graph_free`].
///
/// # Safety
/// `json` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_from_json(json: *const c_char, out: *mut *mut OcGraph) -> OcStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err((OcStatus::NullPointer, "null argument".into()));
        }
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|e| (OcStatus::InvalidUtf8, e.to_string()))?;
        let graph = MixedGraph::parse(text).map_err(|e| (OcStatus::ParseError, e.to_string()))?;
        unsafe { *out = Box::into_raw(Box::new(OcGraph { graph })) };
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from [`oc_graph_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_free(g: *mut OcGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn oc_graph_vertex_count(g: *const OcGraph, out: *mut usize) -> OcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err((OcStatus::NullPointer, "output pointer is null".into()));
        }
        unsafe { *out = g.n() };
        Ok(())
    })
}

/// `det(I - Lambda)` as a polynomial string.
///
/// # Safety
/// `g` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn oc_det(g: *const OcGraph, out: *mut *mut c_char) -> OcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        unsafe { write_string(out, det_linear_subgraphs(g).to_string()) }
    })
}

/// Covariance as `{"det": ..., "numerators": [[...]]}`.
///
/// # Safety
/// `g` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn oc_covariance(
    g: *const OcGraph,
    method: OcMethod,
    out: *mut *mut c_char,
) -> OcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let cov = match method {
            OcMethod::OneConn => covariance_matrix(g),
            OcMethod::Naive => naive_inverse(g),
        };
        unsafe { write_string(out, covariance_json(&cov)?) }
    })
}

/// Covariance by the trek rule; [`OcStatus::Precondition`] on cyclic graphs.
///
/// # Safety
/// `g` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn oc_trek_rule(g: *const OcGraph, out: *mut *mut c_char) -> OcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let cov = trek_rule(g).map_err(|e| (OcStatus::Precondition, e.to_string()))?;
        unsafe { write_string(out, covariance_json(&cov)?) }
    })
}

/// Identifiability report as JSON.
///
/// # Safety
/// `g` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn oc_ident(
    g: *const OcGraph,
    trials: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> OcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if trials == 0 {
            return Err((OcStatus::Precondition, "trials must be at least 1".into()));
        }
        let report = identifiability_report(g, trials, seed);
        unsafe { write_string(out, to_json(&report)?) }
    })
}

/// Vanishing-ideal scan over degrees `1..=max_degree`, as a JSON array of
/// per-degree reports.
///
/// # Safety
/// `g` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn oc_ideal_scan(
    g: *const OcGraph,
    max_degree: usize,
    out: *mut *mut c_char,
) -> OcStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if max_degree == 0 {
            return Err((OcStatus::Precondition, "max_degree must be at least 1".into()));
        }
        let reports = degree_scan(g, max_degree);
        unsafe { write_string(out, to_json(&reports)?) }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string produced by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn oc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
