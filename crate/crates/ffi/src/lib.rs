//! C ABI over the semicross engine.
//!
//! Every function returns an [`ScStatus`]; on failure a message is kept in
//! thread-local storage and can be read with [`sc_last_error`]. Handles are
//! opaque and must be released with their `_free` function. Strings handed
//! out by the library are released with [`sc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semicross::dynamics::{cyclic_subspace, generators_from_orbits, orbit_components, FiniteDynSystem, FuncOnX};
use semicross::modules::{action_is_injective, ModulePresentation, ModuleSpec};
use semicross::scenario::{parse_scenario, run_scenario, Format, RunOptions};
use semicross::{Domain, DomainElem, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    /// The scenario ran and some check failed; the report is still returned.
    CheckFailed = 1,
    ParseError = 2,
    InvalidArgument = 3,
    NullPointer = 4,
    Overflow = 5,
    Panic = 6,
}

/// A finitely generated module over `Z` or `Z[i]`.
pub struct ScModule {
    inner: ModulePresentation,
}

/// A finite set with a self-map.
pub struct ScDynSystem {
    inner: FiniteDynSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(err: &Error) -> ScStatus {
    match err {
        Error::Parse(_) | Error::UnsupportedKind(_) => ScStatus::ParseError,
        Error::Overflow => ScStatus::Overflow,
        _ => ScStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> ScStatus {
    set_error(err.to_string());
    status_of(&err)
}

/// Runs `f`, turning panics into [`ScStatus::Panic`].
fn guard(f: impl FnOnce() -> ScStatus) -> ScStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            ScStatus::Panic
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return ScStatus::NullPointer;
        })+
    };
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ScStatus> {
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        ScStatus::InvalidArgument
    })
}

fn scalar(domain: Domain, re: i64, im: i64) -> Result<DomainElem, Error> {
    DomainElem::new(domain, re.into(), im.into())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn sc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failure on this thread; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a module description such as
/// `{"domain": "Z", "free_rank": 1, "torsion": [6]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_module_from_json(json: *const c_char, out: *mut *mut ScModule) -> ScStatus {
    non_null!(json, out);
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let spec: ModuleSpec = match serde_json::from_str(text) {
            Ok(s) => s,
            Err(e) => return fail(Error::Parse(e.to_string())),
        };
        match ModulePresentation::try_from(&spec) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(ScModule { inner: m }));
                ScStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `m` must be null or a handle from [`sc_module_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_module_free(m: *mut ScModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of coordinates (free rank plus torsion factors).
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_module_dim(m: *const ScModule, out: *mut usize) -> ScStatus {
    non_null!(m, out);
    *out = (*m).inner.dim();
    ScStatus::Ok
}

/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_module_has_torsion(m: *const ScModule, out: *mut bool) -> ScStatus {
    non_null!(m, out);
    *out = (*m).inner.has_torsion();
    ScStatus::Ok
}

/// Writes the coordinates of `(r_re + r_im i) * x` to `out`.
///
/// # Safety
/// `coords` and `out` must each hold `len` values, `len` equal to the
/// module dimension.
#[no_mangle]
pub unsafe extern "C" fn sc_module_scalar_action(
    m: *const ScModule,
    r_re: i64,
    r_im: i64,
    coords: *const i64,
    len: usize,
    out: *mut i64,
) -> ScStatus {
    non_null!(m, coords, out);
    guard(|| {
        let m = &(*m).inner;
        if len != m.dim() {
            return fail(Error::DimensionMismatch { expected: m.dim(), got: len });
        }
        let x = std::slice::from_raw_parts(coords, len).to_vec();
        let result = scalar(m.domain(), r_re, r_im).and_then(|r| m.scalar_action(&r, &m.elem(x)?));
        match result {
            Ok(y) => {
                ptr::copy_nonoverlapping(y.coords().as_ptr(), out, len);
                ScStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Whether multiplication by `r_re + r_im i` is injective on the module.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_module_action_injective(m: *const ScModule, r_re: i64, r_im: i64, out: *mut bool) -> ScStatus {
    non_null!(m, out);
    guard(|| {
        let m = &(*m).inner;
        match scalar(m.domain(), r_re, r_im).and_then(|r| action_is_injective(&r, m)) {
            Ok(b) => {
                *out = b;
                ScStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// `sigma[x]` is the image of `x`; all images must be below `n`.
///
/// # Safety
/// `sigma` must hold `n` values and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_dynsys_new(sigma: *const usize, n: usize, out: *mut *mut ScDynSystem) -> ScStatus {
    non_null!(out);
    if n > 0 && sigma.is_null() {
        set_error("null pointer: sigma");
        return ScStatus::NullPointer;
    }
    guard(|| {
        let table = if n == 0 { Vec::new() } else { std::slice::from_raw_parts(sigma, n).to_vec() };
        match FiniteDynSystem::new(table) {
            Ok(sys) => {
                *out = Box::into_raw(Box::new(ScDynSystem { inner: sys }));
                ScStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `sys` must be null or a handle from [`sc_dynsys_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_dynsys_free(sys: *mut ScDynSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of weakly connected components of the functional graph.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_dynsys_component_count(sys: *const ScDynSystem, out: *mut usize) -> ScStatus {
    non_null!(sys, out);
    guard(|| {
        *out = orbit_components(&(*sys).inner).len();
        ScStatus::Ok
    })
}

/// Dimension of the span of `1` and the pullbacks of the integer-valued
/// function `values` (length `n`, the size of the system).
///
/// # Safety
/// `values` must hold `n` values and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_dynsys_cyclic_dimension(sys: *const ScDynSystem, values: *const i64, n: usize, out: *mut usize) -> ScStatus {
    non_null!(sys, out);
    if n > 0 && values.is_null() {
        set_error("null pointer: values");
        return ScStatus::NullPointer;
    }
    guard(|| {
        let v = if n == 0 { Vec::new() } else { std::slice::from_raw_parts(values, n).to_vec() };
        match cyclic_subspace(&(*sys).inner, &FuncOnX::from_ints(&v)) {
            Ok(span) => {
                *out = span.dim();
                ScStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of characteristic functions used to generate all functions, and
/// whether the rank certificate held.
///
/// # Safety
/// `sys` must be a live handle; `count` and `certified` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sc_dynsys_orbit_generators(sys: *const ScDynSystem, count: *mut usize, certified: *mut bool) -> ScStatus {
    non_null!(sys, count, certified);
    guard(|| match generators_from_orbits(&(*sys).inner) {
        Ok(r) => {
            *count = r.generators.len();
            *certified = r.certified;
            ScStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Runs a JSON scenario and returns the JSON report in `out_report` (free
/// with [`sc_string_free`]). `seed` overrides the file's seed when
/// `override_seed` is set. Returns `CheckFailed` with a report when some
/// check fails.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_run_scenario_json(
    json: *const c_char,
    seed: u64,
    override_seed: bool,
    out_report: *mut *mut c_char,
) -> ScStatus {
    non_null!(json, out_report);
    *out_report = ptr::null_mut();
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let opts = RunOptions { seed: override_seed.then_some(seed), tol: None, parallel: false };
        let report = match parse_scenario(text, Format::Json).and_then(|s| run_scenario(&s, opts)) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        match CString::new(report.to_json()) {
            Ok(c) => *out_report = c.into_raw(),
            Err(_) => {
                set_error("report contains NUL");
                return ScStatus::Panic;
            }
        }
        if report.pass {
            ScStatus::Ok
        } else {
            set_error("a scenario check failed");
            ScStatus::CheckFailed
        }
    })
}
