use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use serde_json::Value;
use splitseq_ffi::*;

const GOLDEN: &str = r#"{"schemaVersion": 1, "field": {"polynomial": [-1, -1, 1]}}"#;

fn take(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { splitseq_string_free(s) };
    v
}

fn last_error() -> String {
    let p = splitseq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn new_job(config: &str) -> (SplitseqStatus, *mut SplitseqJob) {
    let c = CString::new(config).unwrap();
    let mut job = ptr::null_mut();
    let status = unsafe { splitseq_job_new(c.as_ptr(), &mut job) };
    (status, job)
}

#[test]
fn golden_round_trip() {
    let (status, job) = new_job(GOLDEN);
    assert_eq!(status, SplitseqStatus::Ok);
    let (mut d, mut r) = (0, 0);
    assert_eq!(unsafe { splitseq_job_shape(job, &mut d, &mut r) }, SplitseqStatus::Ok);
    assert_eq!((d, r), (2, 2));

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { splitseq_sequences(job, 0, 0, 6, SplitseqMethod::Trace, &mut out) }, SplitseqStatus::Ok);
    let v = take(out);
    let terms: Vec<&str> = v["sequences"][0]["terms"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
    assert_eq!(terms, ["1/1", "1/1", "2/1", "3/1", "5/1", "8/1", "13/1"]);

    let mut res = [0u64; 2];
    assert_eq!(unsafe { splitseq_term_mod_p(job, 11, res.as_mut_ptr(), 2) }, SplitseqStatus::Ok);
    assert_eq!(res, [1, 0]);
    assert_eq!(unsafe { splitseq_term_mod_p(job, 7, res.as_mut_ptr(), 2) }, SplitseqStatus::Ok);
    assert_eq!(res, [0, 1]);
    assert_eq!(unsafe { splitseq_term_mod_p(job, 7, res.as_mut_ptr(), 1) }, SplitseqStatus::BufferTooSmall);
    assert_eq!(unsafe { splitseq_term_mod_p(job, 9, res.as_mut_ptr(), 2) }, SplitseqStatus::ConfigError);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { splitseq_classify(job, 50, 2, &mut out) }, SplitseqStatus::Ok);
    let v = take(out);
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 15);

    for f in [splitseq_analyze, splitseq_chartab] {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { f(job, &mut out) }, SplitseqStatus::Ok);
        assert!(take(out).is_object());
    }
    unsafe { splitseq_job_free(job) };
}

#[test]
fn errors_are_reported() {
    let (status, job) = new_job(r#"{"field": {"polynomial": [1, 1]}, "format": "xml"}"#);
    assert_eq!(status, SplitseqStatus::ConfigError);
    assert!(job.is_null());
    assert!(last_error().contains("$.format"));

    let (status, _) = new_job("{not json");
    assert_eq!(status, SplitseqStatus::ConfigError);

    let mut job = ptr::null_mut();
    assert_eq!(unsafe { splitseq_job_new(ptr::null(), &mut job) }, SplitseqStatus::NullArgument);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { splitseq_analyze(ptr::null(), &mut out) }, SplitseqStatus::NullArgument);

    // x is not a normal-basis generator of the cyclic cubic field.
    let (status, _) = new_job(r#"{"field": {"polynomial": [-1, -3, 0, 1]}}"#);
    assert_eq!(status, SplitseqStatus::ComputeError);
    assert!(last_error().contains("normal basis"));

    unsafe { splitseq_job_free(ptr::null_mut()) };
    unsafe { splitseq_string_free(ptr::null_mut()) };
}

#[test]
fn verify_status() {
    let mut out = ptr::null_mut();
    let c = CString::new(GOLDEN).unwrap();
    assert_eq!(unsafe { splitseq_verify(c.as_ptr(), &mut out) }, SplitseqStatus::Ok);
    assert_eq!(take(out)["passed"], true);

    let bad = CString::new(r#"{"field": {"polynomial": [-1, -1, 1]}, "automorphisms": [[0, 1], [2, -1]]}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { splitseq_verify(bad.as_ptr(), &mut out) }, SplitseqStatus::VerifyFailed);
    assert_eq!(take(out)["passed"], false);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(splitseq_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header: PathBuf = [env!("CARGO_MANIFEST_DIR"), "include", "splitseq.h"].iter().collect();
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "splitseq_job_new",
        "splitseq_job_free",
        "splitseq_job_shape",
        "splitseq_analyze",
        "splitseq_sequences",
        "splitseq_term_mod_p",
        "splitseq_classify",
        "splitseq_chartab",
        "splitseq_verify",
        "splitseq_last_error",
        "splitseq_string_free",
        "typedef struct SplitseqJob SplitseqJob",
        "SPLITSEQ_STATUS_VERIFY_FAILED = 5",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libsplitseq_ffi.a");
    if !lib.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler not available");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "splitseq.h"
int main(void) {
    SplitseqJob *job = NULL;
    if (splitseq_job_new("{\"field\": {\"polynomial\": [-1, -1, 1]}}", &job) != SPLITSEQ_STATUS_OK) return 1;
    uint64_t r[2];
    if (splitseq_term_mod_p(job, 11, r, 2) != SPLITSEQ_STATUS_OK || r[0] != 1 || r[1] != 0) return 2;
    char *json = NULL;
    if (splitseq_sequences(job, SIZE_MAX, 0, 3, SPLITSEQ_METHOD_MATRIX, &json) != SPLITSEQ_STATUS_OK) return 3;
    puts(json);
    splitseq_string_free(json);
    splitseq_job_free(job);
    if (splitseq_job_new("{}", &job) != SPLITSEQ_STATUS_CONFIG_ERROR || splitseq_last_error() == NULL) return 4;
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = std::process::Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile/link failed");
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "smoke exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"K2\""));
}
