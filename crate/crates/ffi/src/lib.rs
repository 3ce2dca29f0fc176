//! C ABI for the `bihole` library.
//!
//! Graphs and witnesses are opaque heap handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns a
//! [`BiholeStatus`]; on failure a message is available from
//! [`bihole_last_error_message`] on the same thread. Strings returned through
//! out-parameters are NUL-terminated UTF-8 and must be released with
//! [`bihole_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bihole::bounds::{floor_bound, BoundReport};
use bihole::extract::{find_bihole, find_degenerate, DegenerateWitness};
use bihole::oracle::{
    degeneracy_certificate, max_bihole_exact, max_degenerate_exact, verify_degenerate_witness,
    DegeneracyCheck, OracleLimits,
};
use bihole::{BipartiteGraph, Error, GraphModel, Rational, Side, VertexRef};

pub const BIHOLE_FFI_ABI_VERSION: u32 = 1;

/// Status codes; the nonzero values shared with the CLI use the same numbers
/// as its exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiholeStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    Unbalanced = 3,
    VerifyFailed = 4,
    TooLarge = 5,
    NullPointer = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiholeModel {
    Gnp = 0,
    Complete = 1,
    Edgeless = 2,
    Matching = 3,
    Cycle = 4,
    Crown = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiholeSide {
    Left = 0,
    Right = 1,
}

/// Opaque graph handle.
pub struct BiholeGraph {
    inner: BipartiteGraph,
}

/// Opaque witness handle: balanced vertex sets in the input graph's labels
/// plus an elimination order (left vertices encoded as `i`, right as `n + i`
/// in [`bihole_witness_copy_order`]).
pub struct BiholeWitness {
    inner: DegenerateWitness,
    d: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let msg = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> BiholeStatus {
    match e {
        Error::MalformedHeader(_)
        | Error::MalformedEdgeLine { .. }
        | Error::IndexOutOfRangeAtLine { .. } => BiholeStatus::ParseError,
        Error::UnbalancedGraph { .. } => BiholeStatus::Unbalanced,
        Error::TraceMismatch { .. } => BiholeStatus::VerifyFailed,
        Error::InstanceTooLarge { .. } => BiholeStatus::TooLarge,
        _ => BiholeStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status and last-error message.
fn guard(f: impl FnOnce() -> Result<(), (BiholeStatus, String)>) -> BiholeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BiholeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            BiholeStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (BiholeStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (BiholeStatus, String) {
    (BiholeStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn graph_ref<'a>(g: *const BiholeGraph) -> Result<&'a BipartiteGraph, (BiholeStatus, String)> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("graph"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (BiholeStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn d_arg(d: i64) -> Result<usize, (BiholeStatus, String)> {
    usize::try_from(d).map_err(|_| lib_err(Error::NegativeD(d)))
}

fn limits(max_side: usize) -> OracleLimits {
    let mut l = OracleLimits::default();
    if max_side > 0 {
        l.max_side_bihole = max_side;
        l.max_side_degenerate = max_side;
    }
    l
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bihole_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bihole_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`
/// (`edges[2k]` left, `edges[2k+1]` right). Duplicates collapse.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (may be NULL when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_new(
    left_count: usize,
    right_count: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut BiholeGraph,
) -> BiholeStatus {
    guard(|| {
        let pairs: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let g = BipartiteGraph::new(
            left_count,
            right_count,
            pairs.chunks_exact(2).map(|p| (p[0], p[1])),
        )
        .map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(BiholeGraph { inner: g })))
    })
}

/// Parses the edge-list text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_parse(
    text: *const c_char,
    out: *mut *mut BiholeGraph,
) -> BiholeStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (BiholeStatus::ParseError, e.to_string()))?;
        let g = BipartiteGraph::parse_edge_list(text).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(BiholeGraph { inner: g })))
    })
}

/// Balanced `n x n` graph; `p` is used only by `BIHOLE_MODEL_GNP`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_generate(
    model: BiholeModel,
    n: usize,
    p: f64,
    seed: u64,
    out: *mut *mut BiholeGraph,
) -> BiholeStatus {
    guard(|| {
        let model = match model {
            BiholeModel::Gnp => GraphModel::Gnp(p),
            BiholeModel::Complete => GraphModel::Complete,
            BiholeModel::Edgeless => GraphModel::Edgeless,
            BiholeModel::Matching => GraphModel::Matching,
            BiholeModel::Cycle => GraphModel::Cycle,
            BiholeModel::Crown => GraphModel::Crown,
        };
        let g = BipartiteGraph::generate(model, n, seed).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(BiholeGraph { inner: g })))
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_free(g: *mut BiholeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be NULL or a live graph handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_left_count(g: *const BiholeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.left_count())
}

/// # Safety
/// `g` must be NULL or a live graph handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_right_count(g: *const BiholeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.right_count())
}

/// # Safety
/// `g` must be NULL or a live graph handle. Returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_edge_count(g: *const BiholeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_degree(
    g: *const BiholeGraph,
    side: BiholeSide,
    index: usize,
    out: *mut usize,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let v = match side {
            BiholeSide::Left => VertexRef::left(index),
            BiholeSide::Right => VertexRef::right(index),
        };
        let deg = g.degree(v).map_err(lib_err)?;
        write_out(out, deg)
    })
}

/// Canonical edge-list text; free with [`bihole_string_free`].
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_graph_to_edge_list(
    g: *const BiholeGraph,
    out: *mut *mut c_char,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write_out(out, into_c_string(g.to_edge_list()))
    })
}

/// `⌊ Σ_v min(1, (d+1)/(deg(v)+1)) / 2 ⌋` for a balanced graph.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_floor_bound(
    g: *const BiholeGraph,
    d: i64,
    out: *mut usize,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let v = floor_bound(g, d_arg(d)?).map_err(lib_err)?;
        write_out(out, v)
    })
}

/// Full bound report as JSON (rationals as `{"num","den","approx"}`), with
/// the logarithmic reference value at ε = 1/2. Free with [`bihole_string_free`].
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_bound_report_json(
    g: *const BiholeGraph,
    d: i64,
    out: *mut *mut c_char,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let report =
            BoundReport::compute(g, d_arg(d)?, Some(&Rational::new(1, 2))).map_err(lib_err)?;
        let json = serde_json::to_string(&report).expect("serializable");
        write_out(out, into_c_string(json))
    })
}

/// Extracts a bihole (`d = 0`) or a balanced `d`-degenerate witness.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_extract(
    g: *const BiholeGraph,
    d: i64,
    out: *mut *mut BiholeWitness,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let d = d_arg(d)?;
        let inner = if d == 0 {
            let (w, _) = find_bihole(g).map_err(lib_err)?;
            let order = match degeneracy_certificate(g, &w.left, &w.right, 0).map_err(lib_err)? {
                DegeneracyCheck::Degenerate(order) => order,
                DegeneracyCheck::Core(_) => {
                    return Err((BiholeStatus::VerifyFailed, "bihole has an edge".into()))
                }
            };
            DegenerateWitness {
                left: w.left,
                right: w.right,
                elimination_order: order,
            }
        } else {
            find_degenerate(g, d).map_err(lib_err)?.0
        };
        write_out(out, Box::into_raw(Box::new(BiholeWitness { inner, d })))
    })
}

/// # Safety
/// `w` must be NULL or a witness handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bihole_witness_free(w: *mut BiholeWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Vertices per side; 0 for NULL.
///
/// # Safety
/// `w` must be NULL or a live witness handle.
#[no_mangle]
pub unsafe extern "C" fn bihole_witness_size(w: *const BiholeWitness) -> usize {
    w.as_ref().map_or(0, |w| w.inner.size())
}

unsafe fn copy_into(src: &[usize], buf: *mut usize, len: usize) -> Result<(), (BiholeStatus, String)> {
    if len < src.len() {
        return Err((
            BiholeStatus::BufferTooSmall,
            format!("buffer holds {len}, need {}", src.len()),
        ));
    }
    if src.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

/// Copies the left set (ascending) into `buf`, which must hold `size` entries.
///
/// # Safety
/// `w` must be a live witness handle; `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn bihole_witness_copy_left(
    w: *const BiholeWitness,
    buf: *mut usize,
    len: usize,
) -> BiholeStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("witness"))?;
        copy_into(&w.inner.left, buf, len)
    })
}

/// Copies the right set (ascending) into `buf`, which must hold `size` entries.
///
/// # Safety
/// `w` must be a live witness handle; `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn bihole_witness_copy_right(
    w: *const BiholeWitness,
    buf: *mut usize,
    len: usize,
) -> BiholeStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("witness"))?;
        copy_into(&w.inner.right, buf, len)
    })
}

/// Copies the elimination order (`2 * size` entries). Left vertex `i` is
/// written as `i`, right vertex `i` as `n + i` with `n` the graph's side size.
///
/// # Safety
/// `g` and `w` must be live handles, `w` extracted from `g`; `buf` must have
/// room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn bihole_witness_copy_order(
    g: *const BiholeGraph,
    w: *const BiholeWitness,
    buf: *mut usize,
    len: usize,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let w = w.as_ref().ok_or_else(|| null("witness"))?;
        let n = g.left_count();
        let flat: Vec<usize> = w
            .inner
            .elimination_order
            .iter()
            .map(|v| match v.side {
                Side::Left => v.index,
                Side::Right => n + v.index,
            })
            .collect();
        copy_into(&flat, buf, len)
    })
}

/// Re-checks the witness against `g`: balanced, and its elimination order
/// certifies `d`-degeneracy (for the `d` it was extracted with).
///
/// # Safety
/// `g` and `w` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_witness_verify(
    g: *const BiholeGraph,
    w: *const BiholeWitness,
    out: *mut bool,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let w = w.as_ref().ok_or_else(|| null("witness"))?;
        let ok = verify_degenerate_witness(g, &w.inner, w.d).map_err(lib_err)?;
        write_out(out, ok)
    })
}

/// Witness as JSON `{"left","right","size","elimination_order"}`; free with
/// [`bihole_string_free`].
///
/// # Safety
/// `w` must be a live witness handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_witness_json(
    w: *const BiholeWitness,
    out: *mut *mut c_char,
) -> BiholeStatus {
    guard(|| {
        let w = w.as_ref().ok_or_else(|| null("witness"))?;
        let json = serde_json::to_string(&w.inner).expect("serializable");
        write_out(out, into_c_string(json))
    })
}

/// Exact β(G) by enumeration. `max_side = 0` keeps the default limit (22).
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_max_bihole_exact(
    g: *const BiholeGraph,
    max_side: usize,
    out: *mut usize,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let v = max_bihole_exact(g, &limits(max_side)).map_err(lib_err)?;
        write_out(out, v)
    })
}

/// Exact β_d(G) by enumeration. `max_side = 0` keeps the default limit (8).
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bihole_max_degenerate_exact(
    g: *const BiholeGraph,
    d: i64,
    max_side: usize,
    out: *mut usize,
) -> BiholeStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let v = max_degenerate_exact(g, d_arg(d)?, &limits(max_side)).map_err(lib_err)?;
        write_out(out, v)
    })
}
