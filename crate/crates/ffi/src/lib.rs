//! C ABI for graykit.
//!
//! Forms live behind the opaque `GkForm` handle. Every fallible call returns a
//! `GkStatus`; on failure `gk_last_error()` describes the most recent error on
//! the calling thread. Strings handed out by the library must be released
//! with `gk_string_free`, handles with `gk_form_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graykit::algebra::{hodge_star, lambda_contract, omega, psi_minus, psi_plus, volume, Form, Vector};
use graykit::cli::{decompose_value, s6_report, DecomposeKind, S6Config, S6Suite};
use graykit::json::AnyForm;
use graykit::s6::FiniteDiff;
use graykit::suite::algebra_suite;
use graykit::{Error, Mode, Rational};
use libc::{c_char, c_int};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Degree = 4,
    ModeMismatch = 5,
    NotInDomain = 6,
    StepOutOfRange = 7,
    InvalidArgument = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkMode {
    Exact = 0,
    Float = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkStructure {
    Omega = 0,
    PsiPlus = 1,
    PsiMinus = 2,
    Volume = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkDecomposition {
    TwoForm = 0,
    ThreeForm = 1,
    AntiEndo = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkS6Suite {
    Gray = 0,
    Spectral = 1,
    Linearized = 2,
    Cl = 3,
    All = 4,
}

/// Opaque form handle.
pub struct GkForm(AnyForm);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> GkStatus {
    match e {
        Error::Parse(_) => GkStatus::Parse,
        Error::DegreeMismatch { .. } | Error::MixedDegree { .. } | Error::InvalidBidegree { .. } => GkStatus::Degree,
        Error::ModeMismatch { .. } => GkStatus::ModeMismatch,
        Error::StepOutOfRange(_) => GkStatus::StepOutOfRange,
        Error::NotInDomain { .. } | Error::InconsistentJet(_) | Error::DegenerateFrame(_) => GkStatus::NotInDomain,
    }
}

struct Failure(GkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GkStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GkStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(GkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(GkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(GkStatus::InvalidArgument, "string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_form(out: *mut *mut GkForm, f: AnyForm) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(GkForm(f))))
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn gk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `form` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gk_form_free(form: *mut GkForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Parses `{"mode": "exact"|"float", "terms": [{"blade": "e135", "coeff": ...}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_parse(json: *const c_char, out: *mut *mut GkForm) -> GkStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        write_form(out, AnyForm::parse(text)?)
    })
}

/// One of the standard structure forms.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_structure(which: GkStructure, mode: GkMode, out: *mut *mut GkForm) -> GkStatus {
    fn pick<T: graykit::Scalar>(which: GkStructure) -> Form<T> {
        match which {
            GkStructure::Omega => omega(),
            GkStructure::PsiPlus => psi_plus(),
            GkStructure::PsiMinus => psi_minus(),
            GkStructure::Volume => volume(),
        }
    }
    guard(|| {
        let f = match mode {
            GkMode::Exact => AnyForm::Exact(pick(which)),
            GkMode::Float => AnyForm::Float(pick(which)),
        };
        write_form(out, f)
    })
}

/// # Safety
/// `form` must be a live handle; `out` must be writable. Free the result
/// with `gk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn gk_form_to_json(form: *const GkForm, out: *mut *mut c_char) -> GkStatus {
    guard(|| {
        let f = borrow(form, "form")?;
        write_string(out, f.0.to_json())
    })
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_mode(form: *const GkForm, out: *mut GkMode) -> GkStatus {
    guard(|| {
        let f = borrow(form, "form")?;
        let m = match f.0.mode() {
            Mode::Exact => GkMode::Exact,
            Mode::Float => GkMode::Float,
        };
        write_out(out, m)
    })
}

/// Degree of a homogeneous form; the zero form reports 0. Mixed forms fail
/// with `Degree`.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_degree(form: *const GkForm, out: *mut c_int) -> GkStatus {
    guard(|| {
        let f = borrow(form, "form")?;
        let d = match &f.0 {
            AnyForm::Exact(f) => f.degree()?,
            AnyForm::Float(f) => f.degree()?,
        };
        write_out(out, d.unwrap_or(0) as c_int)
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_wedge(a: *const GkForm, b: *const GkForm, out: *mut *mut GkForm) -> GkStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        write_form(out, a.0.wedge(&b.0)?)
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_add(a: *const GkForm, b: *const GkForm, out: *mut *mut GkForm) -> GkStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        write_form(out, a.0.add(&b.0)?)
    })
}

/// Hodge star; the input must be homogeneous.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_hodge(form: *const GkForm, out: *mut *mut GkForm) -> GkStatus {
    guard(|| {
        let f = borrow(form, "form")?;
        write_form(out, f.0.map(hodge_star, hodge_star)?)
    })
}

/// The contraction Λ with ω.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_lambda(form: *const GkForm, out: *mut *mut GkForm) -> GkStatus {
    guard(|| {
        let f = borrow(form, "form")?;
        write_form(out, f.0.map(|f| Ok(lambda_contract(f)), |f| Ok(lambda_contract(f)))?)
    })
}

/// Interior product `x ⌟ form` with `x` given by six doubles. For exact forms
/// each double is converted to the rational it represents exactly.
///
/// # Safety
/// `form` must be a live handle, `x` must point to six readable doubles and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_contract(form: *const GkForm, x: *const f64, out: *mut *mut GkForm) -> GkStatus {
    guard(|| {
        let f = borrow(form, "form")?;
        if x.is_null() {
            return Err(null("x"));
        }
        let xs = std::slice::from_raw_parts(x, 6);
        if xs.iter().any(|v| !v.is_finite()) {
            return Err(Failure(GkStatus::InvalidArgument, "vector components must be finite".into()));
        }
        let r = match &f.0 {
            AnyForm::Exact(f) => {
                let v = Vector::from_fn(|i| Rational::from_float(xs[i]).expect("finite"));
                AnyForm::Exact(f.interior(&v))
            }
            AnyForm::Float(f) => AnyForm::Float(f.interior(&Vector::from_fn(|i| xs[i]))),
        };
        write_form(out, r)
    })
}

/// `⟨a, b⟩`, converted to double for exact forms.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_form_inner(a: *const GkForm, b: *const GkForm, out: *mut f64) -> GkStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        write_out(out, a.0.inner(&b.0)?)
    })
}

/// Decomposes a JSON 2-form, 3-form or `{"mode", "endo": [36 entries]}`
/// into its irreducible parts, returned as JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_decompose_json(
    kind: GkDecomposition,
    json: *const c_char,
    out: *mut *mut c_char,
) -> GkStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure(GkStatus::Parse, e.to_string()))?;
        let kind = match kind {
            GkDecomposition::TwoForm => DecomposeKind::TwoForm,
            GkDecomposition::ThreeForm => DecomposeKind::ThreeForm,
            GkDecomposition::AntiEndo => DecomposeKind::Endo,
        };
        write_string(out, decompose_value(kind, &v)?.to_string())
    })
}

/// Runs the algebra identity suite; writes the report JSON and whether every
/// check passed.
///
/// # Safety
/// `out` and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_verify_algebra(
    mode: GkMode,
    trials: usize,
    seed: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> GkStatus {
    guard(|| {
        if trials == 0 {
            return Err(Failure(GkStatus::InvalidArgument, "trials must be at least 1".into()));
        }
        let mode = match mode {
            GkMode::Exact => Mode::Exact,
            GkMode::Float => Mode::Float,
        };
        let report = algebra_suite(mode, trials, seed)?;
        write_out(passed, report.passed())?;
        write_string(out, report.to_json())
    })
}

/// Runs a six-sphere suite at step `h`; writes the report JSON and whether
/// every check passed.
///
/// # Safety
/// `out` and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gk_verify_s6(
    suite: GkS6Suite,
    samples: usize,
    h: f64,
    seed: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> GkStatus {
    guard(|| {
        if samples == 0 {
            return Err(Failure(GkStatus::InvalidArgument, "samples must be at least 1".into()));
        }
        let suite = match suite {
            GkS6Suite::Gray => S6Suite::Gray,
            GkS6Suite::Spectral => S6Suite::Spectral,
            GkS6Suite::Linearized => S6Suite::Linearized,
            GkS6Suite::Cl => S6Suite::Cl,
            GkS6Suite::All => S6Suite::All,
        };
        let report = s6_report(&S6Config::new(suite, samples, FiniteDiff::new(h)?, seed))?;
        write_out(passed, report.passed())?;
        write_string(out, report.to_json())
    })
}
