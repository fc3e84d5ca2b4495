//! C interface to `epsilon-kernel`.
//!
//! Every function returns an [`EkStatus`]; results come back through out
//! pointers. Handles are opaque and must be released with their `_free`
//! function, strings with [`ek_string_free`]. After a failure,
//! [`ek_last_error`] describes it until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use epsilon_kernel::arith::ArithInterp;
use epsilon_kernel::formats::{parse_problem, Problem};
use epsilon_kernel::hsubst::{default_max_iter, resolve_report, solve, HsubstError};
use epsilon_kernel::syntax::{parse_formula, Formula};
use epsilon_kernel::transform::{epsilon_translate, Mode};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Transform = 4,
    /// The substitution solver hit its iteration bound.
    NonTermination = 5,
    /// Any other solver failure, such as a rank above 2.
    Solve = 6,
    InvalidArgument = 7,
    Panic = 8,
}

/// Translation mode for [`ek_formula_translate`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EkMode {
    Classical = 0,
    Intuitionistic = 1,
}

/// A parsed formula.
pub struct EkFormula(Formula);

/// A parsed set of critical formulas.
pub struct EkProblem(Problem);

#[derive(Debug, thiserror::Error)]
enum FfiError {
    #[error("null pointer argument `{0}`")]
    Null(&'static str),
    #[error("argument `{0}` is not UTF-8")]
    Utf8(&'static str),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Transform(String),
    #[error("{0}")]
    Solve(HsubstError),
    #[error("{0}")]
    Argument(String),
}

impl FfiError {
    fn status(&self) -> EkStatus {
        match self {
            FfiError::Null(_) => EkStatus::NullPointer,
            FfiError::Utf8(_) => EkStatus::InvalidUtf8,
            FfiError::Parse(_) => EkStatus::Parse,
            FfiError::Transform(_) => EkStatus::Transform,
            FfiError::Solve(HsubstError::NonTermination(_)) => EkStatus::NonTermination,
            FfiError::Solve(_) => EkStatus::Solve,
            FfiError::Argument(_) => EkStatus::InvalidArgument,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), FfiError>) -> EkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EkStatus::Ok,
        Ok(Err(e)) => {
            set_error(e.to_string());
            e.status()
        }
        Err(_) => {
            set_error("internal panic".into());
            EkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &'static str) -> Result<&'a str, FfiError> {
    if p.is_null() {
        return Err(FfiError::Null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| FfiError::Utf8(name))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, FfiError> {
    p.as_ref().ok_or(FfiError::Null(name))
}

unsafe fn write_out<T>(out: *mut T, v: T, name: &'static str) -> Result<(), FfiError> {
    if out.is_null() {
        return Err(FfiError::Null(name));
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message for the last failure on this thread, or null. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn ek_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ek_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `src` into a new formula handle.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ek_formula_parse(src: *const c_char, out: *mut *mut EkFormula) -> EkStatus {
    guard(|| {
        let src = str_arg(src, "src")?;
        let f = parse_formula(src).map_err(|e| FfiError::Parse(e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(EkFormula(f))), "out")
    })
}

/// Release a formula handle. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ek_formula_free(f: *mut EkFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Print a formula, ASCII when `unicode` is 0.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ek_formula_print(f: *const EkFormula, unicode: c_int, out: *mut *mut c_char) -> EkStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        let s = if unicode != 0 { f.0.to_unicode() } else { f.0.to_string() };
        write_out(out, c_string(s), "out")
    })
}

/// Replace quantifiers by ε-terms. The result is a new handle.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ek_formula_translate(f: *const EkFormula, mode: EkMode, out: *mut *mut EkFormula) -> EkStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        let mode = match mode {
            EkMode::Classical => Mode::Classical,
            EkMode::Intuitionistic => Mode::Intuitionistic,
        };
        let g = epsilon_translate(&f.0, mode).map_err(|e| FfiError::Transform(e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(EkFormula(g))), "out")
    })
}

/// Stores 1 in `out` when `a` and `b` are equal up to bound-variable names.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ek_formula_equal(a: *const EkFormula, b: *const EkFormula, out: *mut c_int) -> EkStatus {
    guard(|| {
        let a = ref_arg(a, "a")?;
        let b = ref_arg(b, "b")?;
        write_out(out, c_int::from(a.0 == b.0), "out")
    })
}

/// Parse a critical-formula problem (the `.prob` format).
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ek_problem_parse(src: *const c_char, out: *mut *mut EkProblem) -> EkStatus {
    guard(|| {
        let src = str_arg(src, "src")?;
        let p = parse_problem(src).map_err(|e| FfiError::Parse(e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(EkProblem(p))), "out")
    })
}

/// Release a problem handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ek_problem_free(p: *mut EkProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Run the substitution solver with search cap `cap`. A `max_iter` of 0
/// selects the default bound. On success `resolved` is set and `json_out`
/// receives the final assignment with its repair history.
///
/// # Safety
/// `p` must be a live handle; `resolved` and `json_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ek_problem_solve(
    p: *const EkProblem,
    cap: u64,
    max_iter: usize,
    resolved: *mut c_int,
    json_out: *mut *mut c_char,
) -> EkStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        if cap == 0 {
            return Err(FfiError::Argument("cap must be positive".into()));
        }
        let set = &p.0.formulas;
        let interp = ArithInterp::new(cap);
        let max_iter = if max_iter == 0 { default_max_iter(set, cap) } else { max_iter };
        let s = solve(set, &interp, max_iter).map_err(FfiError::Solve)?;
        let rr = resolve_report(&s, set, &interp).map_err(FfiError::Solve)?;
        let json = serde_json::json!({ "assignment": s, "resolve": rr });
        write_out(resolved, c_int::from(rr.resolved), "resolved")?;
        write_out(json_out, c_string(json.to_string()), "json_out")
    })
}

/// Run the command-line tool on `argv[0..argc]` (without a program name).
/// Standard output and error are captured into `out` and `err`;
/// `exit_code` receives the status the binary would exit with.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; the out pointers must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ek_cli_run(
    argv: *const *const c_char,
    argc: usize,
    exit_code: *mut c_int,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> EkStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(FfiError::Null("argv"));
        }
        let mut args = vec!["epsilon".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argv")?.to_string());
        }
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = epsilon_kernel::cli::run(args, &mut o, &mut e);
        write_out(exit_code, code, "exit_code")?;
        write_out(out, c_string(String::from_utf8_lossy(&o).into_owned()), "out")?;
        write_out(err, c_string(String::from_utf8_lossy(&e).into_owned()), "err")
    })
}
