//! C interface to the homaloidal toolkit.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! an `HmlStatus`; on failure `hml_last_error` describes the cause for the
//! calling thread. Strings returned through out-parameters are released with
//! `hml_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homaloidal::arrangements::{classify_arrangement, LineArrangement};
use homaloidal::atlas::{analyze_any, family_make, AnalysisReport, AnalyzeOptions, AnyPoly, FamilyName, FamilySpec};
use homaloidal::field::{AnyField, Field, FieldSpec};
use homaloidal::poly::PolyRing;
use homaloidal::polar::Verdict;
use homaloidal::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidField = 3,
    InvalidInput = 4,
    /// The computation failed (for instance a degree did not stabilize).
    Computation = 5,
    /// Two independent methods disagreed.
    Inconsistency = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmlVerdict {
    Homaloidal = 0,
    NotDominant = 1,
    FixedComponent = 2,
    DegreeGtOne = 3,
    UndefinedMap = 4,
}

impl From<Verdict> for HmlVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Homaloidal => HmlVerdict::Homaloidal,
            Verdict::NotDominant => HmlVerdict::NotDominant,
            Verdict::FixedComponent => HmlVerdict::FixedComponent,
            Verdict::DegreeGtOne => HmlVerdict::DegreeGtOne,
            Verdict::UndefinedMap => HmlVerdict::UndefinedMap,
        }
    }
}

/// A ternary form over a chosen field.
pub struct HmlPoly(AnyPoly);

/// The result of `hml_analyze`.
pub struct HmlReport {
    report: AnalysisReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HmlStatus {
    match e {
        Error::InvalidField(_) => HmlStatus::InvalidField,
        Error::Syntax { .. }
        | Error::UnknownVariable { .. }
        | Error::DivisionInInput(_)
        | Error::NotHomogeneous
        | Error::DegreeTooSmall
        | Error::InvalidArrangement(_)
        | Error::InvalidFamily(_)
        | Error::FieldTooSmall(_)
        | Error::TooManyVariables(_) => HmlStatus::InvalidInput,
        e if e.is_inconsistency() => HmlStatus::Inconsistency,
        _ => HmlStatus::Computation,
    }
}

fn fail(e: &Error) -> HmlStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Runs `body`, turning panics into `HmlStatus::Panic`.
fn guard(body: impl FnOnce() -> HmlStatus) -> HmlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            HmlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HmlStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(HmlStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        HmlStatus::InvalidUtf8
    })
}

fn parse_field(text: &str) -> Result<FieldSpec, HmlStatus> {
    FieldSpec::parse(text, 0).map_err(|e| fail(&e))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message of the last failure on this thread; empty when none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hml_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hml_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `text` in `x0, x1, x2` over `field` (`"0"`, `"p"` or `"p:e"`).
///
/// # Safety
/// `field` and `text` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hml_poly_parse(field: *const c_char, text: *const c_char, out: *mut *mut HmlPoly) -> HmlStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return HmlStatus::NullArgument;
        }
        let field = try_status!(read_str(field).and_then(parse_field));
        let text = try_status!(read_str(text));
        match AnyPoly::parse(&field, text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(HmlPoly(p)));
                HmlStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds a named family member; `n < 0` means no parameter.
///
/// # Safety
/// `name` and `field` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hml_family_make(name: *const c_char, n: i32, field: *const c_char, out: *mut *mut HmlPoly) -> HmlStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return HmlStatus::NullArgument;
        }
        let name: FamilyName = match try_status!(read_str(name)).parse() {
            Ok(n) => n,
            Err(e) => return fail(&e),
        };
        let field = try_status!(read_str(field).and_then(parse_field));
        let spec = FamilySpec::new(name, (n >= 0).then_some(n as u32), field);
        match family_make(&spec) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(HmlPoly(f.poly)));
                HmlStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// The polynomial in normal form; release with `hml_string_free`.
///
/// # Safety
/// `poly` must come from `hml_poly_parse` or `hml_family_make`.
#[no_mangle]
pub unsafe extern "C" fn hml_poly_to_string(poly: *const HmlPoly) -> *mut c_char {
    match poly.as_ref() {
        Some(p) => into_c_string(p.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `poly` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hml_poly_free(poly: *mut HmlPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Runs the full analysis with `trials` generic trials from `seed`.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hml_analyze(poly: *const HmlPoly, trials: u32, seed: u64, out: *mut *mut HmlReport) -> HmlStatus {
    guard(|| {
        let (Some(p), false) = (poly.as_ref(), out.is_null()) else {
            set_error("null argument");
            return HmlStatus::NullArgument;
        };
        let opts = AnalyzeOptions { trials: trials.max(1) as usize, seed };
        match analyze_any(&p.0, None, opts) {
            Ok(report) => {
                let json = serde_json::to_string(&report).expect("report serializes");
                let json = CString::new(json).expect("JSON has no NUL");
                *out = Box::into_raw(Box::new(HmlReport { report, json }));
                HmlStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e.error)
            }
        }
    })
}

/// The report as JSON, owned by the report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hml_report_json(report: *const HmlReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hml_report_verdict(report: *const HmlReport) -> HmlVerdict {
    report.as_ref().map_or(HmlVerdict::UndefinedMap, |r| r.report.verdict.into())
}

/// Projective degrees `(d0, d1, d2)`; fails when the map has none (undefined
/// map or fixed component).
///
/// # Safety
/// `report` must be a live handle and `d` point to three writable integers.
#[no_mangle]
pub unsafe extern "C" fn hml_report_multidegree(report: *const HmlReport, d: *mut u64) -> HmlStatus {
    let (Some(r), false) = (report.as_ref(), d.is_null()) else {
        set_error("null argument");
        return HmlStatus::NullArgument;
    };
    match r.report.certificate.multidegree {
        Some(m) => {
            *d = m.d0;
            *d.add(1) = m.d1;
            *d.add(2) = m.d2;
            HmlStatus::Ok
        }
        None => {
            set_error("no projective degrees for this verdict");
            HmlStatus::InvalidInput
        }
    }
}

/// # Safety
/// `report` must come from `hml_analyze` and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hml_report_free(report: *mut HmlReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

fn classify_json<F: Field>(field: F, lines: &str, cross_check: bool, seed: u64) -> Result<String, Error> {
    let arr = LineArrangement::parse(&PolyRing::plane(field), lines)?;
    let v = classify_arrangement(&arr, cross_check.then_some((2, seed)))?;
    Ok(serde_json::to_string(&v).expect("verdict serializes"))
}

/// Classifies the arrangement `"x0; x1; x0+x1; x2"` and writes its JSON
/// verdict to `out_json` (release with `hml_string_free`).
///
/// # Safety
/// `field` and `lines` must be NUL-terminated strings and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hml_arrangement_classify(
    field: *const c_char,
    lines: *const c_char,
    cross_check: bool,
    seed: u64,
    out_json: *mut *mut c_char,
) -> HmlStatus {
    guard(|| {
        if out_json.is_null() {
            set_error("null output pointer");
            return HmlStatus::NullArgument;
        }
        let field = try_status!(read_str(field).and_then(parse_field));
        let lines = try_status!(read_str(lines));
        let result = match AnyField::from_spec(&field) {
            Ok(AnyField::Rational(q)) => classify_json(q, lines, cross_check, seed),
            Ok(AnyField::Finite(g)) => classify_json(g, lines, cross_check, seed),
            Err(e) => Err(e),
        };
        match result {
            Ok(s) => {
                *out_json = into_c_string(s);
                HmlStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
