//! C interface to the `ncd` solver.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Vertex ids are 0-based. Every fallible call
//! returns an [`NcdStatus`]; on failure a message is available from
//! [`ncd_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncd::format::{parse, Instance, InstanceKind};
use ncd::graph::{MAX_ABS_WEIGHT, MAX_VERTICES};
use ncd::{solve, solve_mixed, ApspOutcome, Error, SolveOptions};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcdStatus {
    Ok = 0,
    NullPointer = 1,
    Malformed = 2,
    LimitExceeded = 3,
    Internal = 4,
    OutOfRange = 5,
    NoPath = 6,
    BufferTooSmall = 7,
    /// Distances and paths were asked of a rejected instance.
    NotNearlyConservative = 8,
    /// A witness was asked of an accepted instance.
    NoWitness = 9,
}

/// Arcs and edges collected before solving.
pub struct NcdInstance {
    inner: Instance,
}

/// Result of [`ncd_solve`]: either distances and paths or a witness cycle.
pub struct NcdSolution {
    outcome: ApspOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: NcdStatus, msg: impl Into<String>) -> NcdStatus {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

fn from_error(e: &Error) -> NcdStatus {
    let status = match e {
        Error::MalformedInput { .. } | Error::InvalidConfig(_) => NcdStatus::Malformed,
        Error::LimitExceeded { .. } | Error::SizeGuard { .. } => NcdStatus::LimitExceeded,
        Error::VertexOutOfRange { .. } => NcdStatus::OutOfRange,
        Error::NoPath { .. } => NcdStatus::NoPath,
        Error::Internal(_) => NcdStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> NcdStatus) -> NcdStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(NcdStatus::Internal, "panic inside the solver"))
}

/// Copies `items` into `buf` and stores the needed length in `len`.
unsafe fn fill(items: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> NcdStatus {
    *len = items.len();
    if items.len() > cap {
        return fail(NcdStatus::BufferTooSmall, format!("{} entries needed, room for {cap}", items.len()));
    }
    if !items.is_empty() {
        if buf.is_null() {
            return fail(NcdStatus::NullPointer, "null buffer");
        }
        ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    }
    NcdStatus::Ok
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ncd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// New directed instance with `n` vertices and no arcs. Returns NULL when
/// `n` is too large.
#[no_mangle]
pub extern "C" fn ncd_instance_new(n: usize) -> *mut NcdInstance {
    if n > MAX_VERTICES {
        fail(NcdStatus::LimitExceeded, format!("{n} vertices exceeds {MAX_VERTICES}"));
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(NcdInstance { inner: Instance::directed(n, Vec::new()) }))
}

unsafe fn add(inst: *mut NcdInstance, u: usize, v: usize, weight: i64, edge: bool) -> NcdStatus {
    let Some(inst) = inst.as_mut() else { return fail(NcdStatus::NullPointer, "null instance") };
    let n = inst.inner.n;
    if u >= n || v >= n {
        return fail(NcdStatus::OutOfRange, format!("arc {u} -> {v} outside 0..{n}"));
    }
    if weight.unsigned_abs() > MAX_ABS_WEIGHT as u64 {
        return fail(NcdStatus::Malformed, format!("weight {weight} exceeds 2^40 in absolute value"));
    }
    if edge {
        inst.inner.kind = InstanceKind::Mixed;
        inst.inner.edges.push((u, v, weight));
    } else {
        inst.inner.arcs.push((u, v, weight));
    }
    NcdStatus::Ok
}

/// # Safety
/// `inst` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn ncd_instance_add_arc(inst: *mut NcdInstance, u: usize, v: usize, weight: i64) -> NcdStatus {
    add(inst, u, v, weight, false)
}

/// Undirected edge; the instance becomes mixed.
///
/// # Safety
/// `inst` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn ncd_instance_add_edge(inst: *mut NcdInstance, u: usize, v: usize, weight: i64) -> NcdStatus {
    add(inst, u, v, weight, true)
}

/// Parses the text file format (1-based ids in the text).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ncd_instance_parse(text: *const c_char, out: *mut *mut NcdInstance) -> NcdStatus {
    if text.is_null() || out.is_null() {
        return fail(NcdStatus::NullPointer, "null argument");
    }
    *out = ptr::null_mut();
    let Ok(text) = CStr::from_ptr(text).to_str() else { return fail(NcdStatus::Malformed, "input is not UTF-8") };
    match parse(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(NcdInstance { inner }));
            NcdStatus::Ok
        }
        Err(e) => from_error(&e),
    }
}

/// # Safety
/// `inst` must be NULL or come from this library, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ncd_instance_free(inst: *mut NcdInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Decides the instance and, when it is nearly conservative, computes all
/// distances. `max_k` bounds the trees per block; 0 picks the default.
/// A rejected instance is still a successful call.
///
/// # Safety
/// `inst` must come from this library and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn ncd_solve(inst: *const NcdInstance, max_k: usize, out: *mut *mut NcdSolution) -> NcdStatus {
    if inst.is_null() || out.is_null() {
        return fail(NcdStatus::NullPointer, "null argument");
    }
    *out = ptr::null_mut();
    let inst = &(*inst).inner;
    guard(|| {
        let mut options = SolveOptions::default();
        if max_k > 0 {
            options.max_k = max_k;
        }
        let outcome = if inst.is_mixed() {
            solve_mixed(&inst.to_mixed(), &options)
        } else {
            inst.digraph().and_then(|g| solve(&g, &options))
        };
        match outcome {
            Ok(outcome) => {
                *out = Box::into_raw(Box::new(NcdSolution { outcome }));
                NcdStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `sol` must be NULL or come from this library, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ncd_solution_free(sol: *mut NcdSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// 1 if nearly conservative, 0 if not, -1 for NULL.
///
/// # Safety
/// `sol` must be NULL or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ncd_solution_is_nearly_conservative(sol: *const NcdSolution) -> i32 {
    match sol.as_ref() {
        Some(s) => i32::from(s.outcome.is_solved()),
        None => -1,
    }
}

unsafe fn solved<'a>(sol: *const NcdSolution) -> Result<&'a ncd::Solution, NcdStatus> {
    let s = sol.as_ref().ok_or_else(|| fail(NcdStatus::NullPointer, "null solution"))?;
    s.outcome
        .solution()
        .ok_or_else(|| fail(NcdStatus::NotNearlyConservative, "instance is not nearly conservative"))
}

/// Shortest simple path length from `s` to `t`. `reachable` is set to 0
/// and `dist` left untouched when no path exists.
///
/// # Safety
/// `sol` must come from this library; `dist` and `reachable` be writable.
#[no_mangle]
pub unsafe extern "C" fn ncd_solution_distance(
    sol: *const NcdSolution,
    s: usize,
    t: usize,
    dist: *mut i64,
    reachable: *mut i32,
) -> NcdStatus {
    if dist.is_null() || reachable.is_null() {
        return fail(NcdStatus::NullPointer, "null output");
    }
    let sol = match solved(sol) {
        Ok(sol) => sol,
        Err(status) => return status,
    };
    let n = sol.n();
    if s >= n || t >= n {
        return fail(NcdStatus::OutOfRange, format!("pair {s}, {t} outside 0..{n}"));
    }
    match sol.distance(s, t) {
        Some(d) => {
            *dist = d;
            *reachable = 1;
        }
        None => *reachable = 0,
    }
    NcdStatus::Ok
}

/// Writes the vertices of a shortest simple path, `s` first. `len` always
/// receives the vertex count, so a call with `cap == 0` sizes the buffer.
///
/// # Safety
/// `sol` must come from this library, `buf` hold `cap` entries, `len` be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ncd_solution_path(
    sol: *const NcdSolution,
    s: usize,
    t: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> NcdStatus {
    if len.is_null() {
        return fail(NcdStatus::NullPointer, "null length");
    }
    *len = 0;
    let sol = match solved(sol) {
        Ok(sol) => sol,
        Err(status) => return status,
    };
    guard(|| match sol.path(s, t) {
        Ok(path) => fill(&path.vertices, buf, cap, len),
        Err(e) => from_error(&e),
    })
}

/// Writes the vertices of the negative cycle proving the instance is not
/// nearly conservative, and its length.
///
/// # Safety
/// `sol` must come from this library, `buf` hold `cap` entries, `len` and
/// `length` be writable.
#[no_mangle]
pub unsafe extern "C" fn ncd_solution_witness(
    sol: *const NcdSolution,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
    length: *mut i64,
) -> NcdStatus {
    if sol.is_null() || len.is_null() || length.is_null() {
        return fail(NcdStatus::NullPointer, "null argument");
    }
    *len = 0;
    match (*sol).outcome.witness() {
        Some(w) => {
            *length = w.length;
            fill(&w.cycle, buf, cap, len)
        }
        None => fail(NcdStatus::NoWitness, "instance is nearly conservative"),
    }
}
