//! C ABI over the splitseq pipeline.
//!
//! A job is created from a JSON configuration and is then opaque to the
//! caller. Every fallible call returns a [`SplitseqStatus`]; on failure the
//! message is available from [`splitseq_last_error`] on the same thread.
//! Strings handed out by the library must be released with
//! [`splitseq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use splitseq::cli::{self, Job, SequenceRequest};
use splitseq::declaw::{column_residues, term_mod_p};
use splitseq::sequences::Method;
use splitseq::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitseqStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// The configuration or a request parameter is invalid.
    ConfigError = 3,
    /// The pipeline rejected the input (e.g. not a normal-basis generator).
    ComputeError = 4,
    /// `splitseq_verify` ran and at least one check failed.
    VerifyFailed = 5,
    /// The prime divides a denominator; no residues were written.
    Skipped = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Which formula `splitseq_sequences` uses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitseqMethod {
    Matrix = 0,
    Direct = 1,
    Trace = 2,
}

/// Opaque handle to a configured field, Galois group and sequence family.
pub struct SplitseqJob {
    job: Job,
}

/// Pass as `class_index` (`SIZE_MAX` in C) to request every class.
pub const SPLITSEQ_ALL_CLASSES: usize = usize::MAX;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> SplitseqStatus {
    match e {
        Error::Config { .. } | Error::InvalidPolynomial(_) | Error::Exact(splitseq::ExactError::MalformedRational(_)) => {
            SplitseqStatus::ConfigError
        }
        _ => SplitseqStatus::ComputeError,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SplitseqStatus, String)>) -> SplitseqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SplitseqStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SplitseqStatus::Panic
        }
    }
}

fn fail(e: Error) -> (SplitseqStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (SplitseqStatus, String)> {
    if s.is_null() {
        return Err((SplitseqStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (SplitseqStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn job_ref<'a>(job: *const SplitseqJob) -> Result<&'a Job, (SplitseqStatus, String)> {
    job.as_ref().map(|j| &j.job).ok_or_else(|| (SplitseqStatus::NullArgument, "null job handle".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SplitseqStatus, String)> {
    if out.is_null() {
        return Err((SplitseqStatus::NullArgument, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| (SplitseqStatus::Panic, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn to_json(out: &cli::CommandOutput) -> String {
    serde_json::to_string(&out.value).expect("serializable")
}

/// Builds a job from a JSON configuration. On success `*out` receives a
/// handle to be released with [`splitseq_job_free`].
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splitseq_job_new(config_json: *const c_char, out: *mut *mut SplitseqJob) -> SplitseqStatus {
    guard(|| {
        if out.is_null() {
            return Err((SplitseqStatus::NullArgument, "null output pointer".into()));
        }
        *out = ptr::null_mut();
        let text = read_str(config_json)?;
        let job = Job::from_json(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(SplitseqJob { job }));
        Ok(())
    })
}

/// Releases a job. Null is ignored.
///
/// # Safety
/// `job` must come from [`splitseq_job_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn splitseq_job_free(job: *mut SplitseqJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

/// Field degree `d` (= group order) and number of conjugacy classes `r`.
///
/// # Safety
/// `job` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn splitseq_job_shape(job: *const SplitseqJob, degree: *mut usize, classes: *mut usize) -> SplitseqStatus {
    guard(|| {
        let job = job_ref(job)?;
        if degree.is_null() || classes.is_null() {
            return Err((SplitseqStatus::NullArgument, "null output pointer".into()));
        }
        *degree = job.family.degree();
        *classes = job.family.class_count();
        Ok(())
    })
}

/// Field, group and initial terms as compact JSON.
///
/// # Safety
/// `job` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splitseq_analyze(job: *const SplitseqJob, out: *mut *mut c_char) -> SplitseqStatus {
    guard(|| {
        let job = job_ref(job)?;
        let r = cli::analyze(job).map_err(fail)?;
        write_string(out, to_json(&r))
    })
}

/// Terms `from..=to` of class `class_index` (0-based) or of every class.
///
/// # Safety
/// `job` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splitseq_sequences(
    job: *const SplitseqJob,
    class_index: usize,
    from: usize,
    to: usize,
    method: SplitseqMethod,
    out: *mut *mut c_char,
) -> SplitseqStatus {
    guard(|| {
        let job = job_ref(job)?;
        let method = match method {
            SplitseqMethod::Matrix => Method::Matrix,
            SplitseqMethod::Direct => Method::Direct,
            SplitseqMethod::Trace => Method::Trace,
        };
        let class = (class_index != SPLITSEQ_ALL_CLASSES).then_some(class_index);
        let r = cli::sequences(job, SequenceRequest { class, from, to: Some(to), method }).map_err(fail)?;
        write_string(out, to_json(&r))
    })
}

/// Residues `a_{K_j,p} mod p` for all classes into `residues[0..len]`.
/// `len` must be at least the class count. Returns `Skipped` when `p`
/// divides a denominator.
///
/// # Safety
/// `job` must be a live handle; `residues` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn splitseq_term_mod_p(job: *const SplitseqJob, p: u64, residues: *mut u64, len: usize) -> SplitseqStatus {
    guard(|| {
        let job = job_ref(job)?;
        if residues.is_null() {
            return Err((SplitseqStatus::NullArgument, "null residue buffer".into()));
        }
        let r = job.family.class_count();
        if len < r {
            return Err((SplitseqStatus::BufferTooSmall, format!("need room for {r} residues")));
        }
        if p < 2 || !splitseq::exactmath::modp::is_prime(p) {
            return Err((SplitseqStatus::ConfigError, format!("{p} is not prime")));
        }
        match term_mod_p(&job.family, p) {
            Ok(v) => {
                std::slice::from_raw_parts_mut(residues, len)[..r].copy_from_slice(&v);
                Ok(())
            }
            Err(reason) => {
                let known = column_residues(&job.family, p).map(|c| c.columns).unwrap_or_default();
                Err((SplitseqStatus::Skipped, format!("p = {p} {}; known residues {known:?}", reason.as_str())))
            }
        }
    })
}

/// Prime classification up to `max_prime` with the exceptional report.
///
/// # Safety
/// `job` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splitseq_classify(job: *const SplitseqJob, max_prime: u64, jobs: usize, out: *mut *mut c_char) -> SplitseqStatus {
    guard(|| {
        let job = job_ref(job)?;
        let r = cli::classify(job, max_prime, jobs).map_err(fail)?;
        write_string(out, to_json(&r))
    })
}

/// Character table of the Galois group.
///
/// # Safety
/// `job` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splitseq_chartab(job: *const SplitseqJob, out: *mut *mut c_char) -> SplitseqStatus {
    guard(|| {
        let job = job_ref(job)?;
        let r = cli::chartab(job).map_err(fail)?;
        write_string(out, to_json(&r))
    })
}

/// Runs every check for a configuration. The report is written even when
/// a check fails, in which case the status is `VerifyFailed`.
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splitseq_verify(config_json: *const c_char, out: *mut *mut c_char) -> SplitseqStatus {
    let mut failed = false;
    let status = guard(|| {
        let text = read_str(config_json)?;
        let config = cli::parse_config(text).map_err(fail)?;
        let r = cli::verify_config(config).map_err(fail)?;
        failed = r.status != cli::EXIT_OK;
        write_string(out, to_json(&r))
    });
    if status == SplitseqStatus::Ok && failed {
        set_error("verification failed");
        return SplitseqStatus::VerifyFailed;
    }
    status
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn splitseq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn splitseq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn splitseq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
