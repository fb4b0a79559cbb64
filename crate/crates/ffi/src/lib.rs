//! C ABI over the evonet engine.
//!
//! Configurations and run results are opaque heap handles created and
//! destroyed through this interface. Every fallible call returns an
//! [`EvonetStatus`]; on failure a message is available from
//! [`evonet_last_error`] on the same thread until the next failing call.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use evonet::adaptation::Design;
use evonet::analysis::fit_power_law;
use evonet::engine::{output, run, Algorithm, RunConfig, RunResult};
use evonet::objectives::Problem;
use evonet::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvonetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Run = 4,
    BufferTooSmall = 5,
    Io = 6,
    InsufficientData = 7,
    Panic = 8,
}

/// Opaque run configuration.
pub struct EvonetConfig {
    inner: RunConfig,
}

/// Opaque result of a finished run.
pub struct EvonetResult {
    inner: RunResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> EvonetStatus {
    match e {
        Error::Config(_) | Error::UnknownProblem(_) | Error::InvalidProblemParameter(_) | Error::InvalidParameter(_) => {
            EvonetStatus::Config
        }
        Error::Io(_) | Error::Csv(_) => EvonetStatus::Io,
        Error::InsufficientData(_) | Error::Degenerate(_) => EvonetStatus::InsufficientData,
        _ => EvonetStatus::Run,
    }
}

fn fail(status: EvonetStatus, msg: impl Into<String>) -> EvonetStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> EvonetStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, converting a panic into [`EvonetStatus::Panic`].
fn guard(f: impl FnOnce() -> EvonetStatus) -> EvonetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(EvonetStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, EvonetStatus> {
    if p.is_null() {
        return Err(fail(EvonetStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(EvonetStatus::InvalidUtf8, "string argument is not UTF-8"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! handle {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => h,
            None => return fail(EvonetStatus::NullPointer, "null handle"),
        }
    };
}

macro_rules! handle_mut {
    ($p:expr) => {
        match $p.as_mut() {
            Some(h) => h,
            None => return fail(EvonetStatus::NullPointer, "null handle"),
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn evonet_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn evonet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn evonet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes a new default configuration to `*out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_new(out: *mut *mut EvonetConfig) -> EvonetStatus {
    guard(|| {
        if out.is_null() {
            return fail(EvonetStatus::NullPointer, "null output pointer");
        }
        *out = Box::into_raw(Box::new(EvonetConfig { inner: RunConfig::default() }));
        EvonetStatus::Ok
    })
}

/// Parses a TOML configuration into a new handle at `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_from_toml(text: *const c_char, out: *mut *mut EvonetConfig) -> EvonetStatus {
    guard(|| {
        let text = try_status!(str_arg(text));
        if out.is_null() {
            return fail(EvonetStatus::NullPointer, "null output pointer");
        }
        match RunConfig::from_toml(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EvonetConfig { inner }));
                EvonetStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Serializes the configuration to a TOML string owned by the caller
/// (free with [`evonet_string_free`]).
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_to_toml(cfg: *const EvonetConfig, out: *mut *mut c_char) -> EvonetStatus {
    guard(|| {
        let cfg = handle!(cfg);
        if out.is_null() {
            return fail(EvonetStatus::NullPointer, "null output pointer");
        }
        match CString::new(cfg.inner.to_toml()) {
            Ok(s) => {
                *out = s.into_raw();
                EvonetStatus::Ok
            }
            Err(_) => fail(EvonetStatus::Run, "configuration contains NUL"),
        }
    })
}

/// # Safety
/// `cfg` must be a live handle and `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_set_problem(cfg: *mut EvonetConfig, name: *const c_char) -> EvonetStatus {
    guard(|| {
        let cfg = handle_mut!(cfg);
        let name = try_status!(str_arg(name));
        if let Err(e) = Problem::from_name(name) {
            return fail(EvonetStatus::Config, e.to_string());
        }
        cfg.inner.problem = name.to_string();
        EvonetStatus::Ok
    })
}

/// Selects the algorithm family with default parameters:
/// `panmictic`, `cga`, `sotea1` or `sotea2`.
///
/// # Safety
/// `cfg` must be a live handle and `family` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_set_algorithm(cfg: *mut EvonetConfig, family: *const c_char) -> EvonetStatus {
    guard(|| {
        let cfg = handle_mut!(cfg);
        match Algorithm::from_family(try_status!(str_arg(family))) {
            Ok(a) => {
                cfg.inner.algorithm = a;
                EvonetStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `cfg` must be a live handle and `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_set_design(cfg: *mut EvonetConfig, name: *const c_char) -> EvonetStatus {
    guard(|| {
        let cfg = handle_mut!(cfg);
        match Design::from_name(try_status!(str_arg(name))) {
            Ok(d) => {
                cfg.inner.adaptation.design = Some(d);
                EvonetStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_set_seed(cfg: *mut EvonetConfig, seed: u64) -> EvonetStatus {
    guard(|| {
        handle_mut!(cfg).inner.seed = seed;
        EvonetStatus::Ok
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_set_population(cfg: *mut EvonetConfig, population: usize) -> EvonetStatus {
    guard(|| {
        handle_mut!(cfg).inner.population = population;
        EvonetStatus::Ok
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_set_generations(cfg: *mut EvonetConfig, generations: u64) -> EvonetStatus {
    guard(|| {
        handle_mut!(cfg).inner.generations = generations;
        EvonetStatus::Ok
    })
}

/// Enables or disables ETV telemetry.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_set_etv(cfg: *mut EvonetConfig, enabled: bool) -> EvonetStatus {
    guard(|| {
        handle_mut!(cfg).inner.etv.enabled = enabled;
        EvonetStatus::Ok
    })
}

/// Destroys a configuration. Null is ignored.
///
/// # Safety
/// `cfg` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn evonet_config_free(cfg: *mut EvonetConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Executes one run and writes its result handle to `*out`.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evonet_run(cfg: *const EvonetConfig, out: *mut *mut EvonetResult) -> EvonetStatus {
    guard(|| {
        let cfg = handle!(cfg);
        if out.is_null() {
            return fail(EvonetStatus::NullPointer, "null output pointer");
        }
        match run(&cfg.inner) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EvonetResult { inner }));
                EvonetStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Best objective value found (feasible if any feasible point was seen),
/// its total constraint violation, and the number of evaluations.
///
/// # Safety
/// `res` must be a live handle; output pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn evonet_result_best(
    res: *const EvonetResult,
    f: *mut f64,
    phi: *mut f64,
    evaluations: *mut u64,
) -> EvonetStatus {
    guard(|| {
        let r = &handle!(res).inner;
        if let Some(f) = f.as_mut() {
            *f = r.best.f;
        }
        if let Some(phi) = phi.as_mut() {
            *phi = r.best.phi;
        }
        if let Some(e) = evaluations.as_mut() {
            *e = r.evaluations;
        }
        EvonetStatus::Ok
    })
}

unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, cap: usize, len: *mut usize) -> EvonetStatus {
    if let Some(len) = len.as_mut() {
        *len = src.len();
    }
    if cap < src.len() {
        return fail(EvonetStatus::BufferTooSmall, format!("buffer holds {cap} values, need {}", src.len()));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return fail(EvonetStatus::NullPointer, "null buffer");
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    EvonetStatus::Ok
}

/// Copies the best genome into `buf`. `*len` always receives the genome
/// length, so a call with `cap = 0` queries the size.
///
/// # Safety
/// `res` must be a live handle and `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn evonet_result_best_genes(
    res: *const EvonetResult,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> EvonetStatus {
    guard(|| copy_out(&handle!(res).inner.best.genes, buf, cap, len))
}

/// Best feasible objective per generation; NaN before feasibility.
///
/// # Safety
/// `res` must be a live handle and `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn evonet_result_history(
    res: *const EvonetResult,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> EvonetStatus {
    guard(|| {
        let v: Vec<f64> = handle!(res).inner.history.iter().map(|h| h.best_f.unwrap_or(f64::NAN)).collect();
        copy_out(&v, buf, cap, len)
    })
}

/// Sizes of all finalized (non-censored) ETVs in birth order.
///
/// # Safety
/// `res` must be a live handle and `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn evonet_result_etv_sizes(
    res: *const EvonetResult,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> EvonetStatus {
    guard(|| {
        let v: Vec<u32> = handle!(res).inner.etv.iter().filter(|e| !e.censored).map(|e| e.size).collect();
        copy_out(&v, buf, cap, len)
    })
}

/// Writes all telemetry files of the run into directory `dir`.
///
/// # Safety
/// `res` must be a live handle and `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn evonet_result_write(res: *const EvonetResult, dir: *const c_char) -> EvonetStatus {
    guard(|| {
        let r = handle!(res);
        let dir = try_status!(str_arg(dir));
        match output::write_run(Path::new(dir), &r.inner) {
            Ok(()) => EvonetStatus::Ok,
            Err(e) => from_error(e),
        }
    })
}

/// Destroys a result. Null is ignored.
///
/// # Safety
/// `res` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn evonet_result_free(res: *mut EvonetResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Evaluates problem `name` at the `n` values of `x`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `x` valid for `n` reads.
#[no_mangle]
pub unsafe extern "C" fn evonet_evaluate(
    name: *const c_char,
    x: *const f64,
    n: usize,
    f: *mut f64,
    phi: *mut f64,
) -> EvonetStatus {
    guard(|| {
        let problem = match Problem::from_name(try_status!(str_arg(name))) {
            Ok(p) => p,
            Err(e) => return from_error(e),
        };
        if x.is_null() && n > 0 {
            return fail(EvonetStatus::NullPointer, "null genome");
        }
        let genes = if n == 0 { &[][..] } else { std::slice::from_raw_parts(x, n) };
        match problem.evaluate(genes) {
            Ok(ev) => {
                if let Some(f) = f.as_mut() {
                    *f = ev.f;
                }
                if let Some(phi) = phi.as_mut() {
                    *phi = ev.phi;
                }
                EvonetStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Log-binned least-squares power-law fit over `[x_min, x_max]`.
///
/// # Safety
/// `samples` must be valid for `n` reads; output pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn evonet_fit_power_law(
    samples: *const u64,
    n: usize,
    x_min: u64,
    x_max: u64,
    exponent: *mut f64,
    r_squared: *mut f64,
) -> EvonetStatus {
    guard(|| {
        if samples.is_null() && n > 0 {
            return fail(EvonetStatus::NullPointer, "null samples");
        }
        let data = if n == 0 { &[][..] } else { std::slice::from_raw_parts(samples, n) };
        match fit_power_law(data, x_min, x_max) {
            Ok(fit) => {
                if let Some(e) = exponent.as_mut() {
                    *e = fit.exponent;
                }
                if let Some(r) = r_squared.as_mut() {
                    *r = fit.r_squared;
                }
                EvonetStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
