use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use multiseg_ffi::*;

fn handle(text: &str) -> *mut MsMultisegment {
    let text = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ms_multisegment_from_json(text.as_ptr(), &mut out) }, MsStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { ms_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ms_last_error_message()) }.to_str().unwrap().to_owned()
}

#[test]
fn multiplicity_through_handles() {
    let a = handle(r#"{"segments":[[1,1],[2,2],[2,2],[3,3]]}"#);
    let b = handle("{[1,2],[2,3]}");
    assert_eq!(unsafe { ms_multisegment_len(a) }, 4);
    assert_eq!(unsafe { ms_multisegment_degree(b) }, 4);
    let mut m = 0u64;
    assert_eq!(unsafe { ms_mult(b, a, &mut m) }, MsStatus::Ok);
    assert_eq!(m, 2);
    assert_eq!(last_error(), "");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ms_multisegment_to_json(b, &mut json) }, MsStatus::Ok);
    assert_eq!(take_string(json), r#"{"segments":[[1,2],[2,3]]}"#);
    let mut sym = ptr::null_mut();
    assert_eq!(unsafe { ms_symmetrize_json(a, &mut sym) }, MsStatus::Ok);
    assert!(take_string(sym).contains(r#""c3":{"segments":[[2,5],[3,6]]}"#));
    unsafe {
        ms_multisegment_free(a);
        ms_multisegment_free(b);
        ms_multisegment_free(ptr::null_mut());
    }
}

#[test]
fn kl_and_error_reporting() {
    let (x, w) = (CString::new("1324").unwrap(), CString::new("3412").unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ms_kl_polynomial(x.as_ptr(), w.as_ptr(), &mut out) }, MsStatus::Ok);
    assert_eq!(take_string(out), "[1,1]");

    let bad = CString::new("1224").unwrap();
    let status = unsafe { ms_kl_polynomial(bad.as_ptr(), w.as_ptr(), &mut out) };
    assert_eq!(status, MsStatus::Parse);
    assert!(!last_error().is_empty());

    let short = CString::new("12").unwrap();
    let status = unsafe { ms_kl_polynomial(short.as_ptr(), w.as_ptr(), &mut out) };
    assert_eq!(status, MsStatus::Domain);

    let garbage = CString::new("{[1,").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ms_multisegment_from_json(garbage.as_ptr(), &mut h) }, MsStatus::Parse);
    assert!(h.is_null());
    assert_eq!(
        unsafe { ms_multisegment_from_json(ptr::null(), &mut h) },
        MsStatus::NullPointer
    );
    let mut m = 0;
    assert_eq!(unsafe { ms_mult(ptr::null(), ptr::null(), &mut m) }, MsStatus::NullPointer);
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles and runs a C program against the generated header and the
/// shared library.
#[test]
fn c_program_links_against_header() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler available; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = target_dir();
    assert!(lib_dir.join("libmultiseg_ffi.so").exists(), "shared library not built");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "multiseg.h"

int main(void) {
    MsMultisegment *a = NULL, *b = NULL;
    if (ms_multisegment_from_json("{[1],[2],[2],[3]}", &a) != MsStatus_Ok) return 10;
    if (ms_multisegment_from_json("{[1,2],[2,3]}", &b) != MsStatus_Ok) return 11;
    uint64_t m = 0;
    if (ms_mult(b, a, &m) != MsStatus_Ok) return 12;
    char *poly = NULL;
    if (ms_kl_polynomial("1324", "3412", &poly) != MsStatus_Ok) return 13;
    printf("%llu %s\n", (unsigned long long)m, poly);
    ms_string_free(poly);
    if (ms_kl_polynomial("12", "321", &poly) != MsStatus_Domain) return 14;
    if (strlen(ms_last_error_message()) == 0) return 15;
    ms_multisegment_free(a);
    ms_multisegment_free(b);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&lib_dir)
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-lmultiseg_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2 [1,1]\n");
}
