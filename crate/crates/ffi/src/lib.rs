//! C ABI over `gctk`.
//!
//! Objects are opaque handles created through out-pointers and released with
//! the matching `*_free`; a failed constructor leaves the out-pointer null.
//! Every entry point returns a [`GctkStatus`]; on failure `gctk_last_error`
//! describes the problem on the calling thread.
//! Strings handed out by the library are released with `gctk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gctk::anti_rips::{ar_complex, parse_rational, PointSet};
use gctk::homology::{betti, homological_connectivity};
use gctk::independence::{c_graph, ind, l_graph};
use gctk::{dt, limits, DirectedGraph, Error, SimplicialComplex, UndirectedGraph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GctkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed text, unknown or duplicate vertices, bad point data.
    InvalidInput = 3,
    /// Input is well formed but outside the operation's domain.
    Domain = 4,
    SizeLimit = 5,
    /// An internal consistency check failed.
    Verification = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

pub struct GctkDigraph(DirectedGraph);
pub struct GctkGraph(UndirectedGraph);
pub struct GctkPointSet(PointSet);
pub struct GctkComplex(SimplicialComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Fail(GctkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. }
            | Error::UnknownVertex(_)
            | Error::UnknownEdge(_)
            | Error::DuplicateVertex(_)
            | Error::SelfLoop(_)
            | Error::ParallelEdge(_)
            | Error::DuplicatePoint(_)
            | Error::InvalidPoint(_)
            | Error::TooManyVertices { .. } => GctkStatus::InvalidInput,
            Error::SizeLimit { .. } => GctkStatus::SizeLimit,
            Error::EquivalenceViolation(_) | Error::FactViolation(_) | Error::NotAcyclic(_) => {
                GctkStatus::Verification
            }
            _ => GctkStatus::Domain,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GctkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GctkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            GctkStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(GctkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(GctkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Writes a fresh handle to `out`, or null on failure.
unsafe fn emit<T>(out: *mut *mut T, make: impl FnOnce() -> Result<T, Fail>) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = ptr::null_mut();
    *out = Box::into_raw(Box::new(make()?));
    Ok(())
}

unsafe fn store<T>(out: *mut T, value: impl FnOnce() -> Result<T, Fail>) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value()?;
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failing call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gctk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn gctk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Caps every face enumeration at `cap` items (process wide).
#[no_mangle]
pub extern "C" fn gctk_set_size_cap(cap: usize) -> GctkStatus {
    guard(|| {
        if cap == 0 {
            return Err(Fail(GctkStatus::Domain, "size cap must be positive".into()));
        }
        limits::set_face_cap(cap);
        Ok(())
    })
}

/// Parses an edge list (`x y` per line, `vertex v` for isolated vertices).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_digraph_parse(text: *const c_char, out: *mut *mut GctkDigraph) -> GctkStatus {
    guard(|| emit(out, || Ok(GctkDigraph(DirectedGraph::parse(self::text(text, "text")?)?))))
}

/// # Safety
/// `g` must come from `gctk_digraph_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn gctk_digraph_free(g: *mut GctkDigraph) {
    let _ = catch_unwind(AssertUnwindSafe(|| release(g)));
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_graph_parse(text: *const c_char, out: *mut *mut GctkGraph) -> GctkStatus {
    guard(|| emit(out, || Ok(GctkGraph(UndirectedGraph::parse(self::text(text, "text")?)?))))
}

/// Path-power graph on 1..n: i ~ j when 0 < |i − j| < k.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_graph_l(n: usize, k: usize, out: *mut *mut GctkGraph) -> GctkStatus {
    guard(|| emit(out, || Ok(GctkGraph(l_graph(n, k)?))))
}

/// Cycle-power graph on 1..n.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_graph_c(n: usize, k: usize, out: *mut *mut GctkGraph) -> GctkStatus {
    guard(|| emit(out, || Ok(GctkGraph(c_graph(n, k)?))))
}

/// # Safety
/// `g` must come from a `gctk_graph_*` constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn gctk_graph_free(g: *mut GctkGraph) {
    let _ = catch_unwind(AssertUnwindSafe(|| release(g)));
}

/// Reads `{"metric": "line"|"euclidean"|"grid", "points": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_point_set_from_json(json: *const c_char, out: *mut *mut GctkPointSet) -> GctkStatus {
    guard(|| emit(out, || Ok(GctkPointSet(PointSet::from_json(text(json, "json")?)?))))
}

/// # Safety
/// `p` must come from `gctk_point_set_from_json` or be null.
#[no_mangle]
pub unsafe extern "C" fn gctk_point_set_free(p: *mut GctkPointSet) {
    let _ = catch_unwind(AssertUnwindSafe(|| release(p)));
}

/// Complex of directed forests of `g`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_dt(g: *const GctkDigraph, out: *mut *mut GctkComplex) -> GctkStatus {
    guard(|| emit(out, || Ok(GctkComplex(dt::dt(&handle(g, "graph")?.0)?))))
}

/// Rooted variant; `roots` is a comma-separated vertex list.
///
/// # Safety
/// `g` must be a live handle, `roots` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_dt_rooted(
    g: *const GctkDigraph,
    roots: *const c_char,
    out: *mut *mut GctkComplex,
) -> GctkStatus {
    guard(|| {
        emit(out, || {
            let roots: Vec<&str> = text(roots, "roots")?.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            Ok(GctkComplex(dt::dt_rooted(&handle(g, "graph")?.0, &roots)?))
        })
    })
}

/// Reduced Euler characteristic of the forest complex of a DAG from in-degrees.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_dt_euler(g: *const GctkDigraph, out: *mut i64) -> GctkStatus {
    guard(|| store(out, || Ok(dt::euler_dt_dag(&handle(g, "graph")?.0)?)))
}

/// Independence complex of `g`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_ind(g: *const GctkGraph, out: *mut *mut GctkComplex) -> GctkStatus {
    guard(|| emit(out, || Ok(GctkComplex(ind(&handle(g, "graph")?.0)?))))
}

/// Anti-Rips complex at threshold `r` (decimal or fraction text).
///
/// # Safety
/// `p` must be a live handle, `r` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_ar(p: *const GctkPointSet, r: *const c_char, out: *mut *mut GctkComplex) -> GctkStatus {
    guard(|| {
        emit(out, || {
            let r = parse_rational(text(r, "r")?)?;
            Ok(GctkComplex(ar_complex(&handle(p, "points")?.0, &r)?))
        })
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_complex_vertex_count(c: *const GctkComplex, out: *mut usize) -> GctkStatus {
    guard(|| store(out, || Ok(handle(c, "complex")?.0.vertex_count())))
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_complex_reduced_euler(c: *const GctkComplex, out: *mut i64) -> GctkStatus {
    guard(|| store(out, || Ok(handle(c, "complex")?.0.reduced_euler()?)))
}

/// Reduced ℤ₂ Betti numbers without trailing zeros. `*len` receives the count
/// even when `cap` is too small; `*is_empty` is set for the complex with no
/// vertices, which reports length 0.
///
/// # Safety
/// `c` must be a live handle; `buf` must hold `cap` values (may be null when
/// `cap` is 0); `len` and `is_empty` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_complex_betti(
    c: *const GctkComplex,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
    is_empty: *mut bool,
) -> GctkStatus {
    guard(|| {
        if len.is_null() || is_empty.is_null() {
            return Err(null("len"));
        }
        let b = betti(&handle(c, "complex")?.0)?;
        let values = b.trimmed();
        *len = values.len();
        *is_empty = b.empty;
        if values.len() > cap {
            return Err(Fail(GctkStatus::BufferTooSmall, format!("need {} slots, have {cap}", values.len())));
        }
        if !values.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        }
        Ok(())
    })
}

/// Largest k with vanishing reduced homology through degree k (−1 when
/// disconnected).
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_complex_connectivity(c: *const GctkComplex, out: *mut i64) -> GctkStatus {
    guard(|| store(out, || Ok(homological_connectivity(&handle(c, "complex")?.0)?)))
}

/// `{"vertices": [...], "maximal_faces": [[...], ...]}`; free with `gctk_string_free`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gctk_complex_to_json(c: *const GctkComplex, out: *mut *mut c_char) -> GctkStatus {
    guard(|| {
        store(out, || {
            let json = serde_json::to_string(&handle(c, "complex")?.0.to_json())
                .map_err(|e| Fail(GctkStatus::Panic, e.to_string()))?;
            let s = CString::new(json).map_err(|e| Fail(GctkStatus::InvalidInput, e.to_string()))?;
            Ok(s.into_raw())
        })
    })
}

/// # Safety
/// `c` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn gctk_complex_free(c: *mut GctkComplex) {
    let _ = catch_unwind(AssertUnwindSafe(|| release(c)));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes() {
        assert_eq!(Fail::from(Error::Parse { line: 1, message: "x".into() }).0, GctkStatus::InvalidInput);
        assert_eq!(Fail::from(Error::CyclicGraph(vec![])).0, GctkStatus::Domain);
        assert_eq!(Fail::from(Error::SizeLimit { what: "x".into(), cap: 1 }).0, GctkStatus::SizeLimit);
        assert_eq!(Fail::from(Error::NotAcyclic("x".into())).0, GctkStatus::Verification);
    }

    #[test]
    fn panics_become_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, GctkStatus::Panic);
        let msg = unsafe { CStr::from_ptr(gctk_last_error()) }.to_str().unwrap();
        assert!(msg.contains("boom"));
    }
}
