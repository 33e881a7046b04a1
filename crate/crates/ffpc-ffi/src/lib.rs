//! C ABI for the exact polynomial counting engine. Fields are opaque
//! handles; counts come back as malloc'd decimal strings (they overflow
//! native integers routinely); reports come back as JSON strings. Every
//! function returns a status code and the last error message is kept in
//! thread-local storage.
//!
//! The header `include/ffpc.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use ffpc::characters::{Character, ClassGroup, DEFAULT_GROUP_BUDGET};
use ffpc::coset::CosetClass;
use ffpc::counting::{run_suite, witness_nonperiodicity, Engine, SuiteOptions};
use ffpc::field::FieldDesc;
use ffpc::poly::{brute_pi, brute_psi, DEFAULT_BRUTE_BUDGET};
use ffpc::report::{self, JobSpec};
use ffpc::Error;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FfpcStatus {
    /// Success; for verification calls, all verdicts passed.
    Ok = 0,
    /// The call completed but at least one verdict failed.
    VerificationFailed = 1,
    /// Invalid argument, parse error, or refused request.
    InvalidArgument = 2,
    /// The requested computation exceeds the enumeration budget.
    BudgetExceeded = 3,
    /// Internal error (a panic was caught at the boundary).
    InternalError = 4,
}

/// Opaque handle to a finite field descriptor.
pub struct FfpcField {
    inner: Arc<FieldDesc>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn status_of(err: &Error) -> FfpcStatus {
    match err {
        Error::BudgetExceeded { .. } => FfpcStatus::BudgetExceeded,
        _ => FfpcStatus::InvalidArgument,
    }
}

/// Last error message for this thread; valid until the next failing
/// call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn ffpc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn out_string(s: String, out: *mut *mut c_char) -> FfpcStatus {
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            FfpcStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            FfpcStatus::InternalError
        }
    }
}

/// Free a string returned by any ffpc_* call.
///
/// # Safety
/// `s` must be a pointer previously returned by this library (or null).
#[no_mangle]
pub unsafe extern "C" fn ffpc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn cstr_arg<'a>(ptr: *const c_char) -> Result<&'a str, FfpcStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(FfpcStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        FfpcStatus::InvalidArgument
    })
}

fn guarded<F: FnOnce() -> FfpcStatus>(f: F) -> FfpcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            FfpcStatus::InternalError
        }
    }
}

/// Construct F_{p^r}. `modulus_encoding` selects the modulus by its
/// integer encoding (sum of c_i p^i including the leading term); pass 0
/// for the deterministic default (lexicographically smallest monic
/// irreducible). On success `*out` owns the handle.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ffpc_field_new(
    p: u64,
    r: u32,
    modulus_encoding: u64,
    out: *mut *mut FfpcField,
) -> FfpcStatus {
    guarded(|| {
        let modulus = if modulus_encoding == 0 {
            None
        } else {
            let mut digits = Vec::new();
            let mut v = modulus_encoding;
            while v > 0 {
                digits.push(v % p.max(2));
                v /= p.max(2);
            }
            Some(digits)
        };
        match FieldDesc::new(p, r, modulus) {
            Ok(inner) => {
                let handle = Box::new(FfpcField { inner });
                unsafe { *out = Box::into_raw(handle) };
                FfpcStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Release a field handle.
///
/// # Safety
/// `field` must come from ffpc_field_new (or be null).
#[no_mangle]
pub unsafe extern "C" fn ffpc_field_free(field: *mut FfpcField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Canonical field spec string "p^r:m".
///
/// # Safety
/// `field` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ffpc_field_spec(
    field: *const FfpcField,
    out: *mut *mut c_char,
) -> FfpcStatus {
    guarded(|| {
        let field = unsafe { &*field };
        out_string(field.inner.spec_string(), out)
    })
}

unsafe fn count_impl(
    field: *const FfpcField,
    kind: &str,
    n: u32,
    t_csv: *const c_char,
    method: *const c_char,
    budget: u64,
    out_decimal: *mut *mut c_char,
) -> FfpcStatus {
    let field = &(*field).inner;
    let t_str = match cstr_arg(t_csv) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let method = match cstr_arg(method) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let budget = if budget == 0 { DEFAULT_BRUTE_BUDGET } else { budget };
    let t = match CosetClass::parse(field, t_str) {
        Ok(t) => t,
        Err(e) => {
            set_error(&e.to_string());
            return status_of(&e);
        }
    };
    let run = || -> ffpc::Result<num_bigint::BigInt> {
        let formula = |t: &CosetClass| -> ffpc::Result<num_bigint::BigInt> {
            let mut engine = Engine::new(field, t.level(), DEFAULT_GROUP_BUDGET)?;
            match kind {
                "psi" => engine.psi_exact(n, t),
                _ => engine.pi_mobius(n, t),
            }
        };
        let brute = |t: &CosetClass| -> ffpc::Result<num_bigint::BigInt> {
            let v = match kind {
                "psi" => brute_psi(field, n, t, budget)?,
                _ => brute_pi(field, n, t, budget)?,
            };
            Ok(num_bigint::BigInt::from(v))
        };
        match method {
            "formula" => formula(&t),
            "brute" => brute(&t),
            "both" => {
                let f = formula(&t)?;
                let b = brute(&t)?;
                assert_eq!(f, b, "formula and brute force disagree");
                Ok(f)
            }
            other => Err(Error::Parse(format!("unknown method '{other}'"))),
        }
    };
    match run() {
        Ok(v) => out_string(report::big_to_string(&v), out_decimal),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Exact psi(n, t): the prime-power-weighted count over the class of t.
/// `t_csv` is a comma-separated tuple ("" for the empty tuple), `method`
/// is "formula", "brute" or "both", `budget` bounds brute enumeration
/// (0 = default). The decimal result string must be freed with
/// ffpc_string_free.
///
/// # Safety
/// `field` must be a live handle; pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn ffpc_psi(
    field: *const FfpcField,
    n: u32,
    t_csv: *const c_char,
    method: *const c_char,
    budget: u64,
    out_decimal: *mut *mut c_char,
) -> FfpcStatus {
    guarded(|| unsafe { count_impl(field, "psi", n, t_csv, method, budget, out_decimal) })
}

/// Exact pi(n, t): the count of irreducibles in the class of t.
/// Arguments as for ffpc_psi.
///
/// # Safety
/// `field` must be a live handle; pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn ffpc_pi(
    field: *const FfpcField,
    n: u32,
    t_csv: *const c_char,
    method: *const c_char,
    budget: u64,
    out_decimal: *mut *mut c_char,
) -> FfpcStatus {
    guarded(|| unsafe { count_impl(field, "pi", n, t_csv, method, budget, out_decimal) })
}

/// Run a verification suite (period, symmetry, sym2, roots24, roots60,
/// fomenko, cubicform, legendre, zeta) with its default parameters and
/// return the verdict report as JSON. Returns Ok when every verdict
/// passed, VerificationFailed when the report contains a failure.
///
/// # Safety
/// `field` must be a live handle; pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn ffpc_verify_json(
    field: *const FfpcField,
    suite: *const c_char,
    n_max: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> FfpcStatus {
    guarded(|| {
        let field = unsafe { &(*field).inner };
        let suite = match unsafe { cstr_arg(suite) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let opts = SuiteOptions {
            n_max: if n_max == 0 { None } else { Some(n_max) },
            seed,
            ..SuiteOptions::default()
        };
        match run_suite(field, suite, &opts) {
            Ok(tables) => {
                let mut jobspec = JobSpec::new("verify", "json", seed);
                jobspec.suite = Some(suite.to_string());
                jobspec.field = Some(field.spec_string());
                let pass = tables.iter().all(|t| t.all_pass());
                let json = report::verdicts_to_json(&jobspec, &tables);
                let st = out_string(json, out_json);
                if st != FfpcStatus::Ok {
                    return st;
                }
                if pass {
                    FfpcStatus::Ok
                } else {
                    set_error("verification suite reported failures");
                    FfpcStatus::VerificationFailed
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Construct the non-periodicity witness character for (p, level) and
/// return its report as JSON. `sweep_max` bounds the even-order sweep
/// (0 = default 240).
///
/// # Safety
/// Pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn ffpc_witness_json(
    p: u64,
    level: u32,
    sweep_max: u64,
    out_json: *mut *mut c_char,
) -> FfpcStatus {
    guarded(|| {
        let sweep = if sweep_max == 0 { 240 } else { sweep_max };
        match witness_nonperiodicity(p, level, sweep) {
            Ok(w) => {
                let mut jobspec = JobSpec::new("witness", "json", 0);
                jobspec.p = Some(p);
                jobspec.ell = Some(level);
                jobspec.sweep_max = Some(sweep);
                out_string(report::witness_to_json(&jobspec, &w), out_json)
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Exact L-function report (JSON) for the character with the given
/// enumeration index at the given level.
///
/// # Safety
/// `field` must be a live handle; pointer arguments must be valid.
#[no_mangle]
pub unsafe extern "C" fn ffpc_lfunction_json(
    field: *const FfpcField,
    level: u32,
    index: u64,
    sweep_max: u64,
    out_json: *mut *mut c_char,
) -> FfpcStatus {
    guarded(|| {
        let field = unsafe { &(*field).inner };
        let sweep = if sweep_max == 0 { 240 } else { sweep_max };
        let run = || -> ffpc::Result<String> {
            let group = ClassGroup::new(field, level, DEFAULT_GROUP_BUDGET)?;
            let chi = Character::from_index(&group, index)?;
            let rep = report::build_character_report(&chi, sweep)?;
            let mut jobspec = JobSpec::new("lfunc", "json", 0);
            jobspec.field = Some(field.spec_string());
            jobspec.ell = Some(level);
            jobspec.index = Some(index);
            jobspec.sweep_max = Some(sweep);
            Ok(report::character_to_json(&jobspec, &rep))
        };
        match run() {
            Ok(json) => out_string(json, out_json),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}
