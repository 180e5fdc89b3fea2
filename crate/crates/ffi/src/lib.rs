//! C ABI over `maxcurve`.
//!
//! Fields and curves are opaque heap handles released with their `_free`
//! functions. Every call returns a [`MaxcurveStatus`]; on failure a message is
//! kept per thread and can be read with [`maxcurve_last_error`]. Strings handed
//! out by the library must be released with [`maxcurve_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use maxcurve::criteria;
use maxcurve::curves::{make_fermat, make_generalized, make_hermitian, make_hurwitz, CurveError};
use maxcurve::field::FieldError;
use maxcurve::point_count::{self, CountError};
use maxcurve::{Field, PlaneCurve};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxcurveStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    CharacteristicDivides = 4,
    NoGenusFormula = 5,
    Internal = 6,
}

/// Opaque finite field `F_{q^2}`.
pub struct MaxcurveField(Field);

/// Opaque plane curve.
pub struct MaxcurveCurve(PlaneCurve);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: MaxcurveStatus, msg: impl Into<String>) -> MaxcurveStatus {
    set_error(msg);
    status
}

fn curve_status(e: &CurveError) -> MaxcurveStatus {
    match e {
        CurveError::CharacteristicDividesQ { .. } | CurveError::CharacteristicDividesM { .. } => {
            MaxcurveStatus::CharacteristicDivides
        }
        CurveError::BudgetExceeded { .. }
        | CurveError::Field(FieldError::BudgetExceeded { .. }) => MaxcurveStatus::BudgetExceeded,
        _ => MaxcurveStatus::InvalidArgument,
    }
}

fn count_status(e: &CountError) -> MaxcurveStatus {
    match e {
        CountError::BudgetExceeded { .. } => MaxcurveStatus::BudgetExceeded,
        CountError::NoGenusFormula => MaxcurveStatus::NoGenusFormula,
        CountError::Curve(c) => curve_status(c),
        CountError::Criteria(_) => MaxcurveStatus::InvalidArgument,
    }
}

fn criteria_status(e: &criteria::CriteriaError) -> MaxcurveStatus {
    match e {
        criteria::CriteriaError::CharacteristicDividesQ { .. }
        | criteria::CriteriaError::CharacteristicDividesM { .. } => {
            MaxcurveStatus::CharacteristicDivides
        }
        _ => MaxcurveStatus::InvalidArgument,
    }
}

/// Runs `f`, turning panics into `Internal` and clearing the error on success.
fn guard(f: impl FnOnce() -> MaxcurveStatus) -> MaxcurveStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(MaxcurveStatus::Ok) => {
            set_error("");
            MaxcurveStatus::Ok
        }
        Ok(s) => s,
        Err(_) => fail(MaxcurveStatus::Internal, "internal panic"),
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn maxcurve_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates `F_{q^2}` with `q = p^k`, within the default size budget.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_field_create(
    p: u64,
    k: u32,
    out: *mut *mut MaxcurveField,
) -> MaxcurveStatus {
    guard(|| {
        if out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "out is null");
        }
        match Field::create(p, k) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(MaxcurveField(f)));
                MaxcurveStatus::Ok
            }
            Err(e) => {
                let status = match e {
                    FieldError::BudgetExceeded { .. } => MaxcurveStatus::BudgetExceeded,
                    _ => MaxcurveStatus::InvalidArgument,
                };
                fail(status, e.to_string())
            }
        }
    })
}

/// # Safety
/// `field` must come from [`maxcurve_field_create`] and not be freed twice.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_field_free(field: *mut MaxcurveField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle and `q_out` writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_field_q(
    field: *const MaxcurveField,
    q_out: *mut u64,
) -> MaxcurveStatus {
    guard(|| {
        if field.is_null() || q_out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "null argument");
        }
        *q_out = (*field).0.q();
        MaxcurveStatus::Ok
    })
}

unsafe fn make_curve(
    field: *const MaxcurveField,
    out: *mut *mut MaxcurveCurve,
    build: impl FnOnce(&Field) -> Result<PlaneCurve, CurveError>,
) -> MaxcurveStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "null argument");
        }
        match build(&(*field).0) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(MaxcurveCurve(c)));
                MaxcurveStatus::Ok
            }
            Err(e) => fail(curve_status(&e), e.to_string()),
        }
    })
}

/// `X^{q+1} + Y^{q+1} + Z^{q+1}`.
///
/// # Safety
/// `field` must be a live handle and `out` writable. The curve keeps its own
/// reference to the field, which may be freed independently.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_curve_hermitian(
    field: *const MaxcurveField,
    out: *mut *mut MaxcurveCurve,
) -> MaxcurveStatus {
    make_curve(field, out, |f| Ok(make_hermitian(f)))
}

/// `X^n Y + Y^n Z + Z^n X`.
///
/// # Safety
/// As for [`maxcurve_curve_hermitian`].
#[no_mangle]
pub unsafe extern "C" fn maxcurve_curve_hurwitz(
    field: *const MaxcurveField,
    n: u64,
    out: *mut *mut MaxcurveCurve,
) -> MaxcurveStatus {
    make_curve(field, out, |f| make_hurwitz(n, f))
}

/// `X^n Y^l + Y^n Z^l + Z^n X^l`.
///
/// # Safety
/// As for [`maxcurve_curve_hermitian`].
#[no_mangle]
pub unsafe extern "C" fn maxcurve_curve_generalized(
    field: *const MaxcurveField,
    n: u64,
    l: u64,
    out: *mut *mut MaxcurveCurve,
) -> MaxcurveStatus {
    make_curve(field, out, |f| make_generalized(n, l, f))
}

/// `U^m + V^m + W^m`.
///
/// # Safety
/// As for [`maxcurve_curve_hermitian`].
#[no_mangle]
pub unsafe extern "C" fn maxcurve_curve_fermat(
    field: *const MaxcurveField,
    m: u64,
    out: *mut *mut MaxcurveCurve,
) -> MaxcurveStatus {
    make_curve(field, out, |f| make_fermat(m, f))
}

/// # Safety
/// `curve` must come from a constructor and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_curve_free(curve: *mut MaxcurveCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_curve_degree(
    curve: *const MaxcurveCurve,
    out: *mut u32,
) -> MaxcurveStatus {
    guard(|| {
        if curve.is_null() || out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "null argument");
        }
        *out = (*curve).0.degree();
        MaxcurveStatus::Ok
    })
}

/// Genus of the curve's nonsingular model.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_curve_genus(
    curve: *const MaxcurveCurve,
    out: *mut u64,
) -> MaxcurveStatus {
    guard(|| {
        if curve.is_null() || out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "null argument");
        }
        match (*curve).0.genus() {
            Some(g) => {
                *out = g;
                MaxcurveStatus::Ok
            }
            None => fail(MaxcurveStatus::NoGenusFormula, "no genus formula"),
        }
    })
}

fn budget_or_default(budget: u64) -> u64 {
    if budget == 0 {
        point_count::DEFAULT_POINT_BUDGET
    } else {
        budget
    }
}

/// Number of `F_{q^2}`-rational points; `budget` caps `q^4` (0 for the default).
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_count_points(
    curve: *const MaxcurveCurve,
    budget: u64,
    out: *mut u64,
) -> MaxcurveStatus {
    guard(|| {
        if curve.is_null() || out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "null argument");
        }
        match point_count::count_points(&(*curve).0, budget_or_default(budget)) {
            Ok(n) => {
                *out = n;
                MaxcurveStatus::Ok
            }
            Err(e) => fail(count_status(&e), e.to_string()),
        }
    })
}

/// Maximality verdict as a JSON object; release with [`maxcurve_string_free`].
/// `budget` as in [`maxcurve_count_points`].
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_verdict_json(
    curve: *const MaxcurveCurve,
    budget: u64,
    out: *mut *mut c_char,
) -> MaxcurveStatus {
    guard(|| {
        if curve.is_null() || out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "null argument");
        }
        match point_count::verdict(&(*curve).0, budget_or_default(budget)) {
            Ok(v) => {
                let json = serde_json::to_string(&v).expect("verdict serializes");
                *out = CString::new(json).expect("no interior nul").into_raw();
                MaxcurveStatus::Ok
            }
            Err(e) => fail(count_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn criterion(
    out: *mut bool,
    f: impl FnOnce() -> Result<bool, criteria::CriteriaError>,
) -> MaxcurveStatus {
    guard(|| {
        if out.is_null() {
            return fail(MaxcurveStatus::NullPointer, "out is null");
        }
        match f() {
            Ok(b) => {
                *out = b;
                MaxcurveStatus::Ok
            }
            Err(e) => fail(criteria_status(&e), e.to_string()),
        }
    })
}

/// Whether `Hurwitz(n)` is maximal over `F_{q^2}`, `q = p^k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_hurwitz_criterion(
    n: u64,
    p: u64,
    k: u32,
    out: *mut bool,
) -> MaxcurveStatus {
    criterion(out, || criteria::hurwitz_criterion(n, p, k))
}

/// Whether `Fermat(m)` is maximal over `F_{q^2}`, `q = p^k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_fermat_criterion(
    m: u64,
    p: u64,
    k: u32,
    out: *mut bool,
) -> MaxcurveStatus {
    criterion(out, || criteria::fermat_criterion(m, p, k))
}

/// `Q | q + 1` with `Q = n^2 - nl + l^2`: sufficient for maximality of the
/// generalized Hurwitz curve, and necessary when `Q` is prime.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn maxcurve_generalized_criterion(
    n: u64,
    l: u64,
    p: u64,
    k: u32,
    out: *mut bool,
) -> MaxcurveStatus {
    criterion(out, || {
        criteria::generalized_criterion(n, l, p, k).map(|c| c.maximal)
    })
}

/// Copies the last error into a Rust string; for tests and Rust callers.
pub fn last_error_string() -> String {
    // SAFETY: the pointer refers to the thread-local CString, alive for this call.
    unsafe { CStr::from_ptr(maxcurve_last_error()) }
        .to_string_lossy()
        .into_owned()
}
