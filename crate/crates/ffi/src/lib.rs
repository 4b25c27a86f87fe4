//! C ABI for the kolmoreg verification laboratory.
//!
//! The surface follows the usual opaque-handle pattern: structures parse
//! from their JSON wire form into a `KolmoregStructure*`, queries return
//! status codes, and string results are owned by the library until released
//! with `kolmoreg_string_free`. Error details are kept per thread and read
//! back with `kolmoreg_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use kolmoreg::cli::{run, RunConfig, RunOptions};
use kolmoreg::error::Error;
use kolmoreg::rational::{format_rational, parse_rational};
use kolmoreg::structure::{
    dilation_law, kalman_rank, sobolev_exponent, validate_structure, StructureMatrix,
};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KolmoregStatus {
    Ok = 0,
    /// A required pointer was null or an argument was malformed.
    InvalidArgument = 1,
    /// Input failed validation (JSON schema, structural or domain error).
    ValidationError = 2,
    /// The lattice point budget would be exceeded.
    BudgetExceeded = 3,
    /// I/O failure or internal panic.
    RuntimeError = 4,
}

/// Opaque drift-matrix handle.
pub struct KolmoregStructure {
    inner: StructureMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> KolmoregStatus {
    match err.exit_code() {
        2 => KolmoregStatus::ValidationError,
        3 => KolmoregStatus::BudgetExceeded,
        _ => KolmoregStatus::RuntimeError,
    }
}

fn fail(err: Error) -> KolmoregStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn guard(body: impl FnOnce() -> KolmoregStatus) -> KolmoregStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            KolmoregStatus::RuntimeError
        }
    }
}

/// # Safety
/// `ptr` must be null or a NUL-terminated UTF-8 string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn invalid(what: &str) -> KolmoregStatus {
    set_error(format!("invalid argument: {what}"));
    KolmoregStatus::InvalidArgument
}

/// ABI revision of this header; bumped on breaking changes.
#[no_mangle]
pub extern "C" fn kolmoreg_abi_version() -> u32 {
    1
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kolmoreg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(std::ptr::null())
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `kolmoreg_*` call and not freed before.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a structure from its JSON wire form
/// `{"dims": [m0, m1, ...], "blocks": [[["p/q", ...], ...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_structure_from_json(
    json: *const c_char,
    out: *mut *mut KolmoregStructure,
) -> KolmoregStatus {
    guard(|| {
        if out.is_null() {
            return invalid("out is null");
        }
        let Some(text) = read_str(json) else {
            return invalid("json is null or not UTF-8");
        };
        match serde_json::from_str::<StructureMatrix>(text) {
            Ok(inner) => {
                clear_error();
                *out = Box::into_raw(Box::new(KolmoregStructure { inner }));
                KolmoregStatus::Ok
            }
            Err(e) => fail(Error::Config(format!("structure: {e}"))),
        }
    })
}

/// Release a structure handle.
///
/// # Safety
/// `s` must be null or a handle from `kolmoreg_structure_from_json`.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_structure_free(s: *mut KolmoregStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Serialize a structure back to canonical JSON; round-trips bit-exactly.
///
/// # Safety
/// `s` and `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_structure_to_json(
    s: *const KolmoregStructure,
    out_json: *mut *mut c_char,
) -> KolmoregStatus {
    guard(|| {
        if s.is_null() || out_json.is_null() {
            return invalid("null handle or output pointer");
        }
        let json = serde_json::to_string(&(*s).inner).expect("structure serialization");
        clear_error();
        *out_json = CString::new(json).expect("no interior NUL").into_raw();
        KolmoregStatus::Ok
    })
}

/// Total space dimension `N`.
///
/// # Safety
/// `s` and `out_n` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_structure_dimension(
    s: *const KolmoregStructure,
    out_n: *mut usize,
) -> KolmoregStatus {
    guard(|| {
        if s.is_null() || out_n.is_null() {
            return invalid("null handle or output pointer");
        }
        *out_n = (*s).inner.n();
        clear_error();
        KolmoregStatus::Ok
    })
}

/// Run the structural checks. `out_valid` receives the verdict; when the
/// structure is invalid, `kolmoreg_last_error` names the first failed check.
///
/// # Safety
/// `s` and `out_valid` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_structure_validate(
    s: *const KolmoregStructure,
    out_valid: *mut bool,
) -> KolmoregStatus {
    guard(|| {
        if s.is_null() || out_valid.is_null() {
            return invalid("null handle or output pointer");
        }
        let report = validate_structure(&(*s).inner);
        *out_valid = report.passed();
        match report.first_failure() {
            Some(check) => set_error(check.detail.clone()),
            None => clear_error(),
        }
        KolmoregStatus::Ok
    })
}

/// Rank of the controllability matrix; equals `N` exactly when the operator
/// is hypoelliptic.
///
/// # Safety
/// `s` and `out_rank` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_structure_kalman_rank(
    s: *const KolmoregStructure,
    out_rank: *mut usize,
) -> KolmoregStatus {
    guard(|| {
        if s.is_null() || out_rank.is_null() {
            return invalid("null handle or output pointer");
        }
        *out_rank = kalman_rank(&(*s).inner);
        clear_error();
        KolmoregStatus::Ok
    })
}

/// Anisotropic dilation weights per variable group plus the homogeneous
/// dimension. `weights` receives up to `capacity` entries; `out_len` gets
/// the group count.
///
/// # Safety
/// `s`, `weights`, `out_len` and `out_q` must be valid; `weights` must point
/// to at least `capacity` writable entries.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_dilation_weights(
    s: *const KolmoregStructure,
    weights: *mut u32,
    capacity: usize,
    out_len: *mut usize,
    out_q: *mut u64,
) -> KolmoregStatus {
    guard(|| {
        if s.is_null() || weights.is_null() || out_len.is_null() || out_q.is_null() {
            return invalid("null pointer");
        }
        let law = dilation_law(&(*s).inner);
        if law.group_weights.len() > capacity {
            return invalid("weights capacity too small");
        }
        for (i, &w) in law.group_weights.iter().enumerate() {
            *weights.add(i) = w;
        }
        *out_len = law.group_weights.len();
        *out_q = law.homogeneous_dimension;
        clear_error();
        KolmoregStatus::Ok
    })
}

/// The Sobolev gain exponent `s = beta / (1 - gamma + beta)` in exact
/// rational arithmetic; inputs and output are `"p/q"` strings.
///
/// # Safety
/// `beta` and `gamma` must be NUL-terminated strings; `out_s` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_sobolev_exponent(
    beta: *const c_char,
    gamma: *const c_char,
    out_s: *mut *mut c_char,
) -> KolmoregStatus {
    guard(|| {
        if out_s.is_null() {
            return invalid("out_s is null");
        }
        let (Some(b), Some(g)) = (read_str(beta), read_str(gamma)) else {
            return invalid("beta/gamma is null or not UTF-8");
        };
        let parsed = parse_rational(b).and_then(|b| Ok((b, parse_rational(g)?)));
        match parsed.and_then(|(b, g)| sobolev_exponent(b, g)) {
            Ok(pair) => {
                clear_error();
                *out_s = CString::new(format_rational(&pair.s))
                    .expect("no interior NUL")
                    .into_raw();
                KolmoregStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Execute a full run configuration (same JSON schema as the CLI) and write
/// `<out_prefix>.csv` / `<out_prefix>.json`.
///
/// Returns the CLI exit convention: 0 success, 2 validation failure,
/// 3 budget overrun, 1 I/O or internal failure. `budget = 0` keeps the
/// configured default.
///
/// # Safety
/// `config_json` and `out_prefix` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn kolmoreg_run_json(
    config_json: *const c_char,
    out_prefix: *const c_char,
    budget: u64,
) -> i32 {
    let status = catch_unwind(AssertUnwindSafe(|| {
        let Some(text) = read_str(config_json) else {
            set_error("invalid argument: config_json".into());
            return 2;
        };
        let Some(prefix) = read_str(out_prefix) else {
            set_error("invalid argument: out_prefix".into());
            return 2;
        };
        let config = match RunConfig::from_json(text) {
            Ok(c) => c,
            Err(e) => {
                let code = e.exit_code();
                set_error(e.to_string());
                return code;
            }
        };
        let opts = RunOptions {
            out_override: Some(PathBuf::from(prefix)),
            budget_override: (budget > 0).then_some(budget),
        };
        match run(&config, &opts) {
            Ok(_) => {
                clear_error();
                0
            }
            Err(e) => {
                let code = e.exit_code();
                set_error(e.to_string());
                code
            }
        }
    }));
    status.unwrap_or_else(|_| {
        set_error("internal panic".into());
        1
    })
}
