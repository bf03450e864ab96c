//! C ABI for `relalg`.
//!
//! Algebras and equations are opaque handles created by `ra_*_new`/`_parse`/
//! `_from_json` and released with the matching `_free`. Every fallible call
//! returns an [`RaStatus`]; on failure [`ra_last_error_message`] describes the
//! problem. Strings returned through out-parameters are owned by the caller
//! and must be released with [`ra_string_free`]. Elements cross the boundary
//! as `uint64_t` atom bitmasks.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use relalg::bounds;
use relalg::eqlang::{self, Equation};
use relalg::geometry::{bruck_ryser, ProjectivePlane};
use relalg::subalgebra::generate;
use relalg::{build_lyndon, representability_status, AtomStructure, Element};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Syntax = 4,
    Json = 5,
    TooLarge = 6,
    Panic = 99,
}

/// An atom structure.
pub struct RaAlgebra(AtomStructure);

/// A parsed equation.
pub struct RaEquation(Equation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Error(RaStatus, String);

impl Error {
    fn new(status: RaStatus, message: impl ToString) -> Self {
        Error(status, message.to_string())
    }
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

/// Runs `body`, recording any error or panic for [`ra_last_error_message`].
fn guard(body: impl FnOnce() -> Result<(), Error>) -> RaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            RaStatus::Ok
        }
        Ok(Err(Error(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            RaStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error::new(RaStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Error::new(RaStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Error> {
    p.as_ref()
        .ok_or_else(|| Error::new(RaStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(Error::new(RaStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Error> {
    let s = CString::new(text).map_err(|e| Error::new(RaStatus::InvalidArgument, e))?;
    write(out, s.into_raw())
}

fn element(alg: &AtomStructure, bits: u64) -> Result<Element, Error> {
    alg.element(bits)
        .map_err(|e| Error::new(RaStatus::InvalidArgument, e))
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ra_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ra_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the Lyndon algebra with `n` diversity atoms.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_lyndon_new(n: usize, out: *mut *mut RaAlgebra) -> RaStatus {
    guard(|| {
        let alg = build_lyndon(n).map_err(|e| Error::new(RaStatus::InvalidArgument, e))?;
        write(out, Box::into_raw(Box::new(RaAlgebra(alg))))
    })
}

/// Parses an algebra from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_from_json(
    json: *const c_char,
    out: *mut *mut RaAlgebra,
) -> RaStatus {
    guard(|| {
        let alg = AtomStructure::from_json_str(str_arg(json)?)
            .map_err(|e| Error::new(RaStatus::Json, e))?;
        write(out, Box::into_raw(Box::new(RaAlgebra(alg))))
    })
}

/// # Safety
/// `alg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_to_json(
    alg: *const RaAlgebra,
    out: *mut *mut c_char,
) -> RaStatus {
    guard(|| write_string(out, handle(alg)?.0.to_json_string()))
}

/// Releases an algebra. Null is ignored.
///
/// # Safety
/// `alg` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_free(alg: *mut RaAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Number of atoms, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_atom_count(alg: *const RaAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.atom_count())
}

/// Bitmask of the identity atom, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_identity(alg: *const RaAlgebra) -> u64 {
    alg.as_ref().map_or(0, |a| a.0.identity().bits())
}

/// # Safety
/// `alg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_compose(
    alg: *const RaAlgebra,
    x: u64,
    y: u64,
    out: *mut u64,
) -> RaStatus {
    guard(|| {
        let alg = &handle(alg)?.0;
        let z = alg.compose(element(alg, x)?, element(alg, y)?);
        write(out, z.bits())
    })
}

/// # Safety
/// `alg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_converse(
    alg: *const RaAlgebra,
    x: u64,
    out: *mut u64,
) -> RaStatus {
    guard(|| {
        let alg = &handle(alg)?.0;
        write(out, alg.converse(element(alg, x)?).bits())
    })
}

/// # Safety
/// `alg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_complement(
    alg: *const RaAlgebra,
    x: u64,
    out: *mut u64,
) -> RaStatus {
    guard(|| {
        let alg = &handle(alg)?.0;
        write(out, alg.complement(element(alg, x)?).bits())
    })
}

/// Checks the relation algebra axioms. `report_json` may be null; otherwise
/// it receives the full report.
///
/// # Safety
/// `alg` must be a live handle; `all_pass` must be valid for writes;
/// `report_json` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_algebra_check_axioms(
    alg: *const RaAlgebra,
    all_pass: *mut bool,
    report_json: *mut *mut c_char,
) -> RaStatus {
    guard(|| {
        let alg = &handle(alg)?.0;
        let report = alg.check_axioms();
        write(all_pass, report.all_pass())?;
        if !report_json.is_null() {
            write_string(report_json, pretty(&report.to_json(alg)))?;
        }
        Ok(())
    })
}

/// JSON form of the subalgebra generated by `len` elements at `gens`.
///
/// # Safety
/// `alg` must be a live handle; `gens` must point to `len` values (or be
/// null when `len` is 0); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_subalgebra_generate_json(
    alg: *const RaAlgebra,
    gens: *const u64,
    len: usize,
    out: *mut *mut c_char,
) -> RaStatus {
    guard(|| {
        let alg = &handle(alg)?.0;
        let raw: &[u64] = if len == 0 {
            &[]
        } else if gens.is_null() {
            return Err(Error::new(RaStatus::NullPointer, "null generator array"));
        } else {
            std::slice::from_raw_parts(gens, len)
        };
        let gens = raw
            .iter()
            .map(|&g| element(alg, g))
            .collect::<Result<Vec<_>, _>>()?;
        let sub = generate(alg, &gens);
        let mut value = serde_json::to_value(sub.to_json()).expect("serializable");
        value["size"] = sub.len().into();
        value["proper"] = sub.is_proper().into();
        write_string(out, pretty(&value))
    })
}

/// Parses an equation such as `"x ; y = y ; x"`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_equation_parse(
    text: *const c_char,
    out: *mut *mut RaEquation,
) -> RaStatus {
    guard(|| {
        let eq =
            eqlang::parse_equation(str_arg(text)?).map_err(|e| Error::new(RaStatus::Syntax, e))?;
        write(out, Box::into_raw(Box::new(RaEquation(eq))))
    })
}

/// Releases an equation. Null is ignored.
///
/// # Safety
/// `eq` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ra_equation_free(eq: *mut RaEquation) {
    if !eq.is_null() {
        drop(Box::from_raw(eq));
    }
}

/// Length (operation symbols plus variable occurrences), or 0 for null.
///
/// # Safety
/// `eq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ra_equation_length(eq: *const RaEquation) -> usize {
    eq.as_ref().map_or(0, |e| e.0.length())
}

/// Number of distinct variables, or 0 for null.
///
/// # Safety
/// `eq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ra_equation_num_variables(eq: *const RaEquation) -> usize {
    eq.as_ref().map_or(0, |e| e.0.num_variables())
}

/// Checks `eq` over every assignment in `alg`. `workers` of 0 means all
/// cores. `result_json` may be null; otherwise it receives the result with
/// the least falsifying assignment.
///
/// # Safety
/// Handles must be live; `holds` must be valid for writes; `result_json` must
/// be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_equation_holds(
    eq: *const RaEquation,
    alg: *const RaAlgebra,
    workers: usize,
    holds: *mut bool,
    result_json: *mut *mut c_char,
) -> RaStatus {
    guard(|| {
        let eq = &handle(eq)?.0;
        let alg = &handle(alg)?.0;
        let workers = if workers == 0 {
            eqlang::default_workers()
        } else {
            workers
        };
        let result = eqlang::holds_with_workers(eq, alg, None, workers)
            .map_err(|e| Error::new(RaStatus::TooLarge, e))?;
        write(holds, result.holds())?;
        if !result_json.is_null() {
            write_string(result_json, pretty(&result.to_json(alg)))?;
        }
        Ok(())
    })
}

/// Whether the Bruck–Ryser theorem excludes a projective plane of this order.
#[no_mangle]
pub extern "C" fn ra_bruck_ryser_rules_out(order: u64) -> bool {
    bruck_ryser(order).rules_out()
}

/// JSON verdict on the representability of the Lyndon algebra with `n`
/// diversity atoms.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_representability_status_json(
    n: usize,
    out: *mut *mut c_char,
) -> RaStatus {
    guard(|| {
        let status =
            representability_status(n).map_err(|e| Error::new(RaStatus::InvalidArgument, e))?;
        write_string(out, pretty(&status.to_json(n)))
    })
}

/// JSON dump of the projective plane of order `q`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_plane_json(q: u32, out: *mut *mut c_char) -> RaStatus {
    guard(|| {
        let plane =
            ProjectivePlane::build(q).map_err(|e| Error::new(RaStatus::InvalidArgument, e))?;
        write_string(
            out,
            serde_json::to_string_pretty(&plane.to_json()).expect("serializable"),
        )
    })
}

/// Largest `k` with `2^(k+1) <= 2·3^(2n+1)`.
#[no_mangle]
pub extern "C" fn ra_bounds_k_max(n: u32) -> u64 {
    bounds::k_max(n)
}

/// Shortest length of an equation separating the `n`-th witness algebra.
#[no_mangle]
pub extern "C" fn ra_bounds_min_len(n: u32) -> u64 {
    bounds::min_len(n)
}

/// `2·log2(3)·(2n + 1) - 2`.
#[no_mangle]
pub extern "C" fn ra_bounds_f(n: f64) -> f64 {
    bounds::f(n)
}

/// The length lower bound for algebras with `2^log2m` elements.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ra_bounds_beta_lower(log2m: f64, out: *mut f64) -> RaStatus {
    guard(|| {
        let b = bounds::beta_lower_from_log2m(log2m)
            .map_err(|e| Error::new(RaStatus::InvalidArgument, e))?;
        write(out, b)
    })
}
