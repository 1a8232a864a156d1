//! C ABI over `latpoly`.
//!
//! Objects cross the boundary as opaque handles (`LpPoly`, `LpPath`,
//! `LpMatching`, `LpTree`) owned by the caller and released with the matching
//! `*_free` function. Strings returned through `char **` out-parameters are
//! released with [`lp_string_free`]. Every fallible call returns an
//! [`LpStatus`]; on failure [`lp_last_error_message`] describes the error for
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use latpoly::eventree::{self, EvenTree};
use latpoly::lattice::{self, GridPosition, LatticePath};
use latpoly::matching::{self, PartialMatching};
use latpoly::verify::{self, Formulas};
use latpoly::{Error, Poly};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input text.
    Parse = 3,
    /// Well-formed input rejected by a domain rule.
    Domain = 4,
    Overflow = 5,
    OutOfRange = 6,
    Panic = 7,
}

pub struct LpPoly(Poly);
pub struct LpPath(LatticePath);
pub struct LpMatching(PartialMatching);
pub struct LpTree(EvenTree);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (LpStatus, String);

fn from_error(e: Error) -> Failure {
    let status = match e {
        Error::Overflow(_) => LpStatus::Overflow,
        ref e if e.is_parse() => LpStatus::Parse,
        _ => LpStatus::Domain,
    };
    (status, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside latpoly");
            LpStatus::Panic
        }
    }
}

fn null() -> Failure {
    (LpStatus::NullPointer, "null pointer argument".into())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|e| (LpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|e| (LpStatus::Domain, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_value<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = v;
    Ok(())
}

unsafe fn free_box<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- polynomials ----

/// `L(i, j)(x)`; the zero polynomial above the line `x = 2y`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn lp_lattice_poly(i: u32, j: u32, out: *mut *mut LpPoly) -> LpStatus {
    guard(|| {
        let p = lattice::lattice_poly(GridPosition::new(i, j)).map_err(from_error)?;
        write_out(out, LpPoly(p))
    })
}

/// Brute-force `Q(i, j)(x)` over 12312-avoiding partial matchings in class Q.
///
/// # Safety
/// As [`lp_lattice_poly`].
#[no_mangle]
pub unsafe extern "C" fn lp_q_poly(i: u32, j: u32, out: *mut *mut LpPoly) -> LpStatus {
    guard(|| write_out(out, LpPoly(matching::q_poly(i, j).map_err(from_error)?)))
}

/// Brute-force `R_n(x)` over even trees with `2n` edges.
///
/// # Safety
/// As [`lp_lattice_poly`].
#[no_mangle]
pub unsafe extern "C" fn lp_r_poly(n: u32, out: *mut *mut LpPoly) -> LpStatus {
    guard(|| write_out(out, LpPoly(eventree::r_poly(n).map_err(from_error)?)))
}

/// `sum_k T(n, k) x^k`.
///
/// # Safety
/// As [`lp_lattice_poly`].
#[no_mangle]
pub unsafe extern "C" fn lp_t_poly(n: u32, out: *mut *mut LpPoly) -> LpStatus {
    guard(|| write_out(out, LpPoly(lattice::t_poly(n).map_err(from_error)?)))
}

/// # Safety
/// As [`lp_lattice_poly`].
#[no_mangle]
pub unsafe extern "C" fn lp_descent_formula(n: u32, out: *mut *mut LpPoly) -> LpStatus {
    guard(|| write_out(out, LpPoly(lattice::descent_formula(n).map_err(from_error)?)))
}

/// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
/// Returns 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_poly_len(p: *const LpPoly) -> usize {
    p.as_ref().map_or(0, |p| p.0.coeffs().len())
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_poly_coeff(p: *const LpPoly, k: usize, out: *mut i64) -> LpStatus {
    guard(|| {
        let p = borrow(p)?;
        let c = *p.0.coeffs().get(k).ok_or_else(|| {
            (LpStatus::OutOfRange, format!("coefficient index {k} beyond length {}", p.0.coeffs().len()))
        })?;
        write_value(out, c)
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_poly_eval_at_one(p: *const LpPoly, out: *mut i64) -> LpStatus {
    guard(|| write_value(out, borrow(p)?.0.eval_at_one().map_err(from_error)?))
}

/// Text rendering such as `2 + 3*x + 2*x^2`.
///
/// # Safety
/// `p` must be a live handle; `out` receives a string for [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_poly_to_string(p: *const LpPoly, out: *mut *mut c_char) -> LpStatus {
    guard(|| write_string(out, borrow(p)?.0.to_string()))
}

/// # Safety
/// `p` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_poly_free(p: *mut LpPoly) {
    free_box(p)
}

// ---- closed formulas ----

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_t_coeff(n: u32, k: u32, out: *mut i64) -> LpStatus {
    guard(|| write_value(out, lattice::t_coeff(n, k).map_err(from_error)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_catalan3(n: u32, out: *mut i64) -> LpStatus {
    guard(|| write_value(out, lattice::catalan3(n).map_err(from_error)?))
}

// ---- paths ----

/// Parses an `E`/`N` string.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_path_parse(text: *const c_char, out: *mut *mut LpPath) -> LpStatus {
    guard(|| {
        let p: LatticePath = read_str(text)?.parse().map_err(from_error)?;
        write_out(out, LpPath(p))
    })
}

/// Number of north steps at odd x. Returns 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_path_weight(p: *const LpPath) -> u32 {
    p.as_ref().map_or(0, |p| p.0.weight_exponent())
}

/// # Safety
/// `p` must be a live handle; `i` and `j` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_path_endpoint(p: *const LpPath, i: *mut u32, j: *mut u32) -> LpStatus {
    guard(|| {
        let end = borrow(p)?.0.endpoint();
        write_value(i, end.i)?;
        write_value(j, end.j)
    })
}

/// # Safety
/// `p` must be a live handle; `out` receives a string for [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_path_to_string(p: *const LpPath, out: *mut *mut c_char) -> LpStatus {
    guard(|| write_string(out, borrow(p)?.0.to_string()))
}

/// # Safety
/// `p` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_path_free(p: *mut LpPath) {
    free_box(p)
}

// ---- matchings ----

/// # Safety
/// `p` must be a live path handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_path_to_matching(p: *const LpPath, out: *mut *mut LpMatching) -> LpStatus {
    guard(|| write_out(out, LpMatching(matching::path_to_matching(&borrow(p)?.0))))
}

/// Parses `{"m": .., "edges": [[a, b], ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_matching_from_json(json: *const c_char, out: *mut *mut LpMatching) -> LpStatus {
    guard(|| {
        let m: PartialMatching =
            serde_json::from_str(read_str(json)?).map_err(|e| (LpStatus::Parse, e.to_string()))?;
        write_out(out, LpMatching(m))
    })
}

/// # Safety
/// `m` must be a live handle; `out` receives a string for [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_matching_to_json(m: *const LpMatching, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let s = serde_json::to_string(&borrow(m)?.0).map_err(|e| (LpStatus::Domain, e.to_string()))?;
        write_string(out, s)
    })
}

/// Generalized crossing number. Returns 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_matching_crossings(m: *const LpMatching) -> u32 {
    m.as_ref().map_or(0, |m| m.0.crossings())
}

/// Inverse bijection; `LpStatus::Domain` when the matching is outside
/// `Q(12312)`.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_matching_to_path(m: *const LpMatching, out: *mut *mut LpPath) -> LpStatus {
    guard(|| write_out(out, LpPath(matching::matching_to_path(&borrow(m)?.0).map_err(from_error)?)))
}

/// # Safety
/// `m` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_matching_free(m: *mut LpMatching) {
    free_box(m)
}

// ---- even trees ----

/// # Safety
/// `p` must be a live path handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_path_to_tree(p: *const LpPath, out: *mut *mut LpTree) -> LpStatus {
    guard(|| write_out(out, LpTree(eventree::path_to_tree(&borrow(p)?.0))))
}

/// Parses either the JSON object `{"dotted": .., "root": [..]}` or the
/// parenthesis encoding (optionally `*`-prefixed).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_parse(text: *const c_char, out: *mut *mut LpTree) -> LpStatus {
    guard(|| {
        let s = read_str(text)?.trim();
        let t: EvenTree = if s.starts_with('{') {
            serde_json::from_str(s).map_err(|e| (LpStatus::Parse, e.to_string()))?
        } else {
            s.parse().map_err(from_error)?
        };
        write_out(out, LpTree(t))
    })
}

/// # Safety
/// `t` must be a live handle; `out` receives a string for [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_tree_to_json(t: *const LpTree, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let s = serde_json::to_string(&borrow(t)?.0).map_err(|e| (LpStatus::Domain, e.to_string()))?;
        write_string(out, s)
    })
}

/// # Safety
/// `t` must be a live handle; `out` receives a string for [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_tree_to_parens(t: *const LpTree, out: *mut *mut c_char) -> LpStatus {
    guard(|| write_string(out, borrow(t)?.0.to_parens()))
}

/// Returns 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_r_index(t: *const LpTree) -> u32 {
    t.as_ref().map_or(0, |t| t.0.r_index())
}

/// Returns 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_edges(t: *const LpTree) -> usize {
    t.as_ref().map_or(0, |t| t.0.edges())
}

/// Inverse generation for a tree produced at position `(i, j)`.
///
/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_to_path(t: *const LpTree, i: u32, j: u32, out: *mut *mut LpPath) -> LpStatus {
    guard(|| {
        let p = eventree::tree_to_path(&borrow(t)?.0, GridPosition::new(i, j)).map_err(from_error)?;
        write_out(out, LpPath(p))
    })
}

/// # Safety
/// `t` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_free(t: *mut LpTree) {
    free_box(t)
}

// ---- verification ----

/// Runs the identity suite up to `max_n`. `overall` receives the verdict;
/// `report_json`, if not NULL, receives the full report.
///
/// # Safety
/// `overall` must be writable; `report_json` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn lp_verify(max_n: u32, seed: u64, overall: *mut bool, report_json: *mut *mut c_char) -> LpStatus {
    guard(|| {
        if max_n == 0 {
            return Err((LpStatus::OutOfRange, "max_n must be at least 1".into()));
        }
        let report = verify::run(max_n, seed, &Formulas::default());
        write_value(overall, report.overall)?;
        if !report_json.is_null() {
            let s = serde_json::to_string(&report).map_err(|e| (LpStatus::Domain, e.to_string()))?;
            write_string(report_json, s)?;
        }
        Ok(())
    })
}
