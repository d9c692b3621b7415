//! C ABI for `haargap`.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`HgStatus`]; results come back
//!   through out-pointers, which are written only on `HG_STATUS_OK`.
//! * Exact values cross the boundary as NUL-terminated `"p/q"` strings
//!   (integers print without a denominator). Strings returned by the library
//!   are owned by the caller and released with [`hg_string_free`].
//! * Root systems and solved Haar-weight programs are opaque handles with
//!   their own `_free` functions. Handles are immutable once created and may
//!   be shared between threads.
//! * After a failure, [`hg_last_error`] describes it. The message is
//!   per-thread and stays valid until the next failing call on that thread.
//! * Panics never unwind into C; they are reported as `HG_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use haargap::cotlar_stein::{complex_matrix, operator_norm};
use haargap::entropy::{entropy_lower_bound, haar_entropy};
use haargap::rational::{fmt_rational, parse_rational, parse_rational_list};
use haargap::rigidity::{solve_problem, BoundMode, Lattice, RigidityOutcome, RigidityProblem};
use haargap::{CartanElement, Error, RootSystem};

/// Status codes. The nonzero values shared with the command-line tool
/// (2, 3, 4) have the same meaning there.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    InvalidInput = 2,
    Capacity = 3,
    Validation = 4,
    NullPointer = 5,
    Panic = 6,
}

pub const HG_LATTICE_GENERIC: u32 = 0;
pub const HG_LATTICE_INNER: u32 = 1;
pub const HG_BOUND_HAAR_FRACTION: u32 = 0;
pub const HG_BOUND_HALF_MAXIMAL: u32 = 1;

/// Opaque root system of type `A_{n-1}`.
pub struct HgRootSystem {
    inner: RootSystem,
}

/// Opaque solved Haar-weight linear program.
pub struct HgHaarSolution {
    outcome: RigidityOutcome,
    min_weight: CString,
    labels: Vec<CString>,
    weights: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

enum Failure {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn status_of(e: &Error) -> HgStatus {
    match e.exit_code() {
        3 => HgStatus::Capacity,
        4 => HgStatus::Validation,
        _ => HgStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HgStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is a null pointer"));
            HgStatus::NullPointer
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            HgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::InvalidInput(format!("{what} is not valid UTF-8")).into())
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).unwrap_or_default().into_raw()
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn hg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the most recent failure on this thread ("" if none).
/// Owned by the library.
#[no_mangle]
pub extern "C" fn hg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned through an out-pointer. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the root system of `SL_n` (type `A_{n-1}`), `n >= 2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_root_system_new(n: usize, out: *mut *mut HgRootSystem) -> HgStatus {
    guard(|| {
        let inner = RootSystem::type_a(n)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        out.write(Box::into_raw(Box::new(HgRootSystem { inner })));
        Ok(())
    })
}

/// # Safety
/// `rs` must be null or a handle from [`hg_root_system_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn hg_root_system_free(rs: *mut HgRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Number of roots (`n(n-1)`), or 0 for a null handle.
///
/// # Safety
/// `rs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_root_system_num_roots(rs: *const HgRootSystem) -> usize {
    rs.as_ref().map_or(0, |r| r.inner.len())
}

unsafe fn exact_query(
    rs: *const HgRootSystem,
    direction: *const c_char,
    out: *mut *mut c_char,
    f: fn(&RootSystem, &CartanElement) -> haargap::Result<haargap::Rational>,
) -> HgStatus {
    guard(|| {
        let rs = deref(rs, "root system")?;
        let x = CartanElement::new(parse_rational_list(read_str(direction, "direction")?)?)?;
        let value = f(&rs.inner, &x)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        out.write(owned_string(fmt_rational(&value)));
        Ok(())
    })
}

/// Half-maximal-exponent entropy lower bound at `direction`, a
/// comma-separated trace-zero list of rationals such as `"3,-1,-1,-1"`.
/// Writes a newly allocated `"p/q"` string to `out`.
///
/// # Safety
/// `rs` must be a live handle, `direction` a NUL-terminated string and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_entropy_lower_bound(
    rs: *const HgRootSystem,
    direction: *const c_char,
    out: *mut *mut c_char,
) -> HgStatus {
    exact_query(rs, direction, out, entropy_lower_bound)
}

/// Entropy of Haar measure at `direction`; same conventions as
/// [`hg_entropy_lower_bound`].
///
/// # Safety
/// As for [`hg_entropy_lower_bound`].
#[no_mangle]
pub unsafe extern "C" fn hg_haar_entropy(
    rs: *const HgRootSystem,
    direction: *const c_char,
    out: *mut *mut c_char,
) -> HgStatus {
    exact_query(rs, direction, out, haar_entropy)
}

/// Solves the Haar-weight program for `SL_n` on the Weyl orbit of
/// `diag(n-1, -1, ..., -1)`. `lattice` is one of `HG_LATTICE_*`,
/// `bound_mode` one of `HG_BOUND_*`, `beta` a rational string in `[0, 1]`.
///
/// # Safety
/// `beta` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_haar_lp_solve(
    n: usize,
    lattice: u32,
    beta: *const c_char,
    bound_mode: u32,
    out: *mut *mut HgHaarSolution,
) -> HgStatus {
    guard(|| {
        let lattice = match lattice {
            HG_LATTICE_GENERIC => Lattice::Generic,
            HG_LATTICE_INNER => Lattice::Inner,
            other => return Err(Error::InvalidInput(format!("unknown lattice code {other}")).into()),
        };
        let bound_mode = match bound_mode {
            HG_BOUND_HAAR_FRACTION => BoundMode::FractionOfHaar,
            HG_BOUND_HALF_MAXIMAL => BoundMode::HalfMaximal,
            other => return Err(Error::InvalidInput(format!("unknown bound mode {other}")).into()),
        };
        let beta = parse_rational(read_str(beta, "beta")?)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let outcome = solve_problem(RigidityProblem::standard(n, lattice, beta, bound_mode)?)?;
        let min_weight = CString::new(fmt_rational(&outcome.min_haar_weight()?)).unwrap_or_default();
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for (s, w) in outcome.problem.supports().iter().zip(&outcome.solution.values) {
            labels.push(CString::new(s.label()).unwrap_or_default());
            weights.push(CString::new(fmt_rational(w)).unwrap_or_default());
        }
        out.write(Box::into_raw(Box::new(HgHaarSolution {
            outcome,
            min_weight,
            labels,
            weights,
        })));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from [`hg_haar_lp_solve`], freed once.
#[no_mangle]
pub unsafe extern "C" fn hg_haar_solution_free(s: *mut HgHaarSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Minimal Haar weight as a `"p/q"` string owned by the handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_haar_solution_min_weight(s: *const HgHaarSolution) -> *const c_char {
    s.as_ref().map_or(ptr::null(), |s| s.min_weight.as_ptr())
}

/// Number of candidate supports (LP variables), or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_haar_solution_num_supports(s: *const HgHaarSolution) -> usize {
    s.as_ref().map_or(0, |s| s.outcome.problem.supports().len())
}

/// Label and weight of support `index` at the returned optimal vertex.
/// Both strings are owned by the handle. Optimal vertices need not be
/// unique; this is the one the solver found.
///
/// # Safety
/// `s` must be a live handle; `label` and `weight` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_haar_solution_support(
    s: *const HgHaarSolution,
    index: usize,
    label: *mut *const c_char,
    weight: *mut *const c_char,
) -> HgStatus {
    guard(|| {
        let s = deref(s, "solution")?;
        if index >= s.labels.len() {
            return Err(Error::RootIndexOutOfRange {
                index,
                len: s.labels.len(),
            }
            .into());
        }
        if label.is_null() || weight.is_null() {
            return Err(Failure::Null("label/weight"));
        }
        label.write(s.labels[index].as_ptr());
        weight.write(s.weights[index].as_ptr());
        Ok(())
    })
}

/// Largest singular value of a `rows × cols` complex matrix given as
/// row-major real and imaginary parts (`rows * cols` doubles each).
///
/// # Safety
/// `re` and `im` must point to `rows * cols` readable doubles (they may be
/// null when the matrix is empty); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_operator_norm(
    re: *const f64,
    im: *const f64,
    rows: usize,
    cols: usize,
    out: *mut f64,
) -> HgStatus {
    guard(|| {
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::InvalidInput(format!("{rows}x{cols} overflows")))?;
        let slice = |p: *const f64, what| -> Result<&[f64], Failure> {
            match (p.is_null(), len) {
                (_, 0) => Ok(&[]),
                (true, _) => Err(Failure::Null(what)),
                (false, _) => Ok(std::slice::from_raw_parts(p, len)),
            }
        };
        let m = complex_matrix(rows, cols, slice(re, "re")?, slice(im, "im")?)?;
        let norm = operator_norm(&m)?;
        write_out(out, norm, "out")
    })
}
