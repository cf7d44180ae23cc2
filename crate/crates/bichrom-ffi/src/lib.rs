//! C ABI for the bichrom library.
//!
//! Conventions:
//!
//! * Handles ([`BichromGraph`], [`BichromPoly`]) are opaque. Create them with
//!   the constructors here and release them with the matching `_free`; a
//!   `_free` accepts NULL.
//! * Every fallible call returns a [`BichromStatus`]. On failure, a
//!   thread-local diagnostic is readable via [`bichrom_last_error`]; the
//!   pointer stays valid until the next failing call on the same thread.
//! * Strings handed out through `out` parameters are NUL-terminated UTF-8,
//!   owned by the caller, and must be released with [`bichrom_string_free`].
//! * Every entry point catches panics and reports them as
//!   `BICHROM_STATUS_INTERNAL`, so unwinding never crosses the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bichrom::{
    check_arc_delcontr, check_bop_reciprocity, check_chromatic_reciprocity, check_edge_delcontr,
    chi_by_decomposition, chi_by_delcontr, count_colorings, enumerate_acyclic_orientations,
    interpolate_chi, poset_from_orientation, BivariatePolynomial, Error, MixedGraph,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BichromStatus {
    Ok = 0,
    /// A NULL pointer, a malformed string, or an argument the library
    /// rejects.
    InvalidArgument = 1,
    /// The graph text did not parse; the diagnostic names the line.
    ParseError = 2,
    /// The graph or poset is larger than the requested bound.
    BoundExceeded = 3,
    /// Arguments outside a function's numeric domain (e.g. threshold above
    /// palette).
    DomainError = 4,
    /// A caught panic; indicates a library bug.
    Internal = 5,
}

/// Which algorithm computes the polynomial.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BichromMethod {
    /// Order-polynomial sum over flats and acyclic orientations.
    Decomposition = 0,
    /// Exact interpolation through counted grid points.
    Interpolate = 1,
    /// Deletion–contraction on undirected edges.
    Delcontr = 2,
}

/// Rendering target for [`bichrom_poly_render`].
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BichromFormat {
    Plain = 0,
    Latex = 1,
    Json = 2,
}

/// Identity checked by [`bichrom_verify`].
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum BichromIdentity {
    /// Edge deletion–contraction–correction, for every edge whose pair
    /// carries no arc.
    DelcontrEdge = 0,
    /// Arc deletion–contraction–correction, for every arc whose pair carries
    /// only that arc.
    DelcontrArc = 1,
    /// The three compute methods agree exactly.
    Decomposition = 2,
    /// Chromatic reciprocity on the integer grid plus interpolation.
    Reciprocity = 3,
    /// Order-polynomial reciprocity for every induced bicolored poset.
    BopReciprocity = 4,
}

/// Opaque handle to a parsed mixed graph.
pub struct BichromGraph {
    inner: MixedGraph,
}

/// Opaque handle to an exact bivariate polynomial.
pub struct BichromPoly {
    inner: BivariatePolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', "?");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: BichromStatus, message: &str) -> BichromStatus {
    set_last_error(message);
    status
}

fn status_of(err: &Error) -> BichromStatus {
    match err {
        Error::BoundExceeded { .. } | Error::InterpolationLimit { .. } => {
            BichromStatus::BoundExceeded
        }
        Error::ThresholdExceedsPalette { .. } | Error::WeakThresholdTooSmall(_) => {
            BichromStatus::DomainError
        }
        _ => BichromStatus::InvalidArgument,
    }
}

/// Run `f` with panics converted to `Internal`.
fn guarded(f: impl FnOnce() -> BichromStatus) -> BichromStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(BichromStatus::Internal, "internal panic"),
    }
}

/// # Safety
/// `text` must be NUL-terminated (or NULL, which yields `InvalidArgument`).
unsafe fn str_arg<'a>(text: *const c_char) -> Result<&'a str, BichromStatus> {
    if text.is_null() {
        return Err(fail(BichromStatus::InvalidArgument, "string argument is NULL"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(BichromStatus::InvalidArgument, "string argument is not UTF-8"))
}

unsafe fn graph_arg<'a>(g: *const BichromGraph) -> Result<&'a MixedGraph, BichromStatus> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or_else(|| fail(BichromStatus::InvalidArgument, "graph handle is NULL"))
}

unsafe fn poly_arg<'a>(p: *const BichromPoly) -> Result<&'a BivariatePolynomial, BichromStatus> {
    p.as_ref()
        .map(|p| &p.inner)
        .ok_or_else(|| fail(BichromStatus::InvalidArgument, "polynomial handle is NULL"))
}

unsafe fn out_arg<'a, T>(out: *mut T) -> Result<&'a mut T, BichromStatus> {
    out.as_mut()
        .ok_or_else(|| fail(BichromStatus::InvalidArgument, "out pointer is NULL"))
}

fn export_string(text: String, out: &mut *mut c_char) -> BichromStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            BichromStatus::Ok
        }
        Err(_) => fail(
            BichromStatus::Internal,
            "rendered text contains an interior NUL",
        ),
    }
}

/// Most recent diagnostic for this thread; empty string when no call has
/// failed yet. Owned by the library — do not free.
#[no_mangle]
pub extern "C" fn bichrom_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string allocated by this library. NULL is allowed.
///
/// # Safety
/// `s` must have been returned by a bichrom function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn bichrom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a graph from its text format (`vertex NAME` / `edge A B` /
/// `arc A B` lines). On success, `*out` owns the new handle.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bichrom_graph_parse(
    text: *const c_char,
    out: *mut *mut BichromGraph,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let text = match str_arg(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        match MixedGraph::parse(text) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(BichromGraph { inner: graph }));
                BichromStatus::Ok
            }
            Err(err) => fail(BichromStatus::ParseError, &err.to_string()),
        }
    })
}

/// Release a graph handle. NULL is allowed.
///
/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bichrom_graph_free(g: *mut BichromGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for a NULL handle.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bichrom_graph_vertex_count(g: *const BichromGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Number of undirected edges; 0 for a NULL handle.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bichrom_graph_edge_count(g: *const BichromGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Number of arcs; 0 for a NULL handle.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bichrom_graph_arc_count(g: *const BichromGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.arc_count())
}

/// Serialize the graph back to its text format (re-parses to an equal
/// graph). The caller frees `*out` with [`bichrom_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_graph_to_text(
    g: *const BichromGraph,
    out: *mut *mut c_char,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        match graph_arg(g) {
            Ok(graph) => export_string(graph.to_text(), out),
            Err(status) => status,
        }
    })
}

/// Compute the bivariate chromatic polynomial by the chosen method.
/// `bound` caps the vertex count (pass 6 for the library default). On
/// success, `*out` owns the new polynomial handle.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_chi(
    g: *const BichromGraph,
    method: BichromMethod,
    bound: usize,
    out: *mut *mut BichromPoly,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let graph = match graph_arg(g) {
            Ok(graph) => graph,
            Err(status) => return status,
        };
        let result = match method {
            BichromMethod::Decomposition => chi_by_decomposition(graph, bound),
            BichromMethod::Interpolate => interpolate_chi(graph, bound),
            BichromMethod::Delcontr => chi_by_delcontr(graph, bound),
        };
        match result {
            Ok(poly) => {
                *out = Box::into_raw(Box::new(BichromPoly { inner: poly }));
                BichromStatus::Ok
            }
            Err(err) => fail(status_of(&err), &err.to_string()),
        }
    })
}

/// Count proper colorings directly (no polynomial): palette `{1..x}`,
/// threshold `y`. Requires `y <= x`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_count_colorings(
    g: *const BichromGraph,
    x: u64,
    y: u64,
    out: *mut u64,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let graph = match graph_arg(g) {
            Ok(graph) => graph,
            Err(status) => return status,
        };
        match count_colorings(graph, x, y) {
            Ok(count) => {
                *out = count;
                BichromStatus::Ok
            }
            Err(err) => fail(status_of(&err), &err.to_string()),
        }
    })
}

/// Release a polynomial handle. NULL is allowed.
///
/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bichrom_poly_free(p: *mut BichromPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Render a polynomial as plain text, LaTeX, or canonical JSON. The caller
/// frees `*out` with [`bichrom_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_poly_render(
    p: *const BichromPoly,
    format: BichromFormat,
    out: *mut *mut c_char,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let poly = match poly_arg(p) {
            Ok(poly) => poly,
            Err(status) => return status,
        };
        let text = match format {
            BichromFormat::Plain => poly.render_plain(),
            BichromFormat::Latex => poly.render_latex(),
            BichromFormat::Json => poly.to_json_string(),
        };
        export_string(text, out)
    })
}

/// Rebuild a polynomial from the JSON produced by
/// [`bichrom_poly_render`] with `BICHROM_FORMAT_JSON`.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_poly_parse_json(
    text: *const c_char,
    out: *mut *mut BichromPoly,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let text = match str_arg(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        match BivariatePolynomial::from_json_str(text) {
            Ok(poly) => {
                *out = Box::into_raw(Box::new(BichromPoly { inner: poly }));
                BichromStatus::Ok
            }
            Err(err) => fail(BichromStatus::ParseError, &err.to_string()),
        }
    })
}

/// Evaluate exactly at integer `(x, y)`; writes the rational value in
/// lowest terms (`"7"`, `"-5/2"`). The caller frees `*out` with
/// [`bichrom_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_poly_eval(
    p: *const BichromPoly,
    x: i64,
    y: i64,
    out: *mut *mut c_char,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let poly = match poly_arg(p) {
            Ok(poly) => poly,
            Err(status) => return status,
        };
        export_string(poly.eval_int(x, y).to_string(), out)
    })
}

/// Exact equality of two polynomials.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_poly_equal(
    a: *const BichromPoly,
    b: *const BichromPoly,
    out: *mut bool,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let a = match poly_arg(a) {
            Ok(a) => a,
            Err(status) => return status,
        };
        let b = match poly_arg(b) {
            Ok(b) => b,
            Err(status) => return status,
        };
        *out = a == b;
        BichromStatus::Ok
    })
}

fn run_verify(
    g: &MixedGraph,
    identity: BichromIdentity,
    xmax: u64,
    bound: usize,
) -> Result<bool, Error> {
    match identity {
        BichromIdentity::DelcontrEdge => {
            for (u, v) in g.edge_names() {
                if g.has_arc(u, v) || g.has_arc(v, u) {
                    // Not a valid pivot: contraction would drop a
                    // color-forcing loop.
                    continue;
                }
                if !check_edge_delcontr(g, u, v, bound)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        BichromIdentity::DelcontrArc => {
            for (t, h) in g.arc_names() {
                if g.has_edge(t, h) || g.has_arc(h, t) {
                    continue;
                }
                if !check_arc_delcontr(g, t, h, bound)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        BichromIdentity::Decomposition => {
            let by_decomposition = chi_by_decomposition(g, bound)?;
            Ok(by_decomposition == interpolate_chi(g, bound)?
                && by_decomposition == chi_by_delcontr(g, bound)?)
        }
        BichromIdentity::Reciprocity => check_chromatic_reciprocity(g, xmax, bound),
        BichromIdentity::BopReciprocity => {
            for flat in g.enumerate_flats() {
                for sigma in enumerate_acyclic_orientations(&flat.quotient().underlying()) {
                    if !check_bop_reciprocity(&poset_from_orientation(&flat, &sigma), bound)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Machine-check one identity on the graph. `xmax` is the reciprocity grid
/// limit (ignored by the other identities; 4 is a sensible default).
/// `*out_holds` reports whether the identity held; the status only reports
/// whether the check could run.
///
/// # Safety
/// `g` must be a live handle; `out_holds` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bichrom_verify(
    g: *const BichromGraph,
    identity: BichromIdentity,
    xmax: u64,
    bound: usize,
    out_holds: *mut bool,
) -> BichromStatus {
    guarded(|| {
        let out = match out_arg(out_holds) {
            Ok(out) => out,
            Err(status) => return status,
        };
        let graph = match graph_arg(g) {
            Ok(graph) => graph,
            Err(status) => return status,
        };
        match run_verify(graph, identity, xmax, bound) {
            Ok(holds) => {
                *out = holds;
                BichromStatus::Ok
            }
            Err(err) => fail(status_of(&err), &err.to_string()),
        }
    })
}
