use std::ffi::{c_char, c_int, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gunc_ffi::*;

const E3: &str = r#"{"group": {"kind": "cyclic", "order": 2},
    "ring": {"kind": "matrix", "over": {"kind": "zmod", "n": 2}, "sigma": ["e", "g"]}}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gunc_last_error_message()) }.to_str().unwrap().to_string()
}

fn build(spec: &str) -> (GuncStatus, *mut GuncRing) {
    let mut ring = ptr::null_mut();
    let status = unsafe { gunc_ring_from_spec(c(spec).as_ptr(), &mut ring) };
    (status, ring)
}

fn check(ring: *const GuncRing, property: &str) -> (GuncStatus, c_int, usize) {
    let (mut holds, mut cx) = (-1, 0);
    let status = unsafe { gunc_ring_check(ring, c(property).as_ptr(), false, &mut holds, &mut cx) };
    (status, holds, cx)
}

#[test]
fn e3_verdicts_through_the_abi() {
    let (status, ring) = build(E3);
    assert_eq!(status, GuncStatus::Ok);
    assert_eq!(unsafe { gunc_ring_order(ring) }, 16);
    assert_eq!(check(ring, "graded-u-nil-clean"), (GuncStatus::Ok, 1, usize::MAX));
    let (status, holds, cx) = check(ring, "graded-nil-good");
    assert_eq!((status, holds), (GuncStatus::Ok, 0));
    assert!(cx < 16);
    unsafe { gunc_ring_free(ring) };
}

#[test]
fn inspect_returns_json() {
    let (_, ring) = build(E3);
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { gunc_ring_inspect_json(ring, &mut out) }, GuncStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["order"], 16);
    assert_eq!(doc["units"], 6);
    assert_eq!(doc["nilpotents"], 4);
    unsafe {
        gunc_string_free(out);
        gunc_ring_free(ring);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let (status, ring) = build("{");
    assert_eq!(status, GuncStatus::ParseError);
    assert!(ring.is_null());
    assert!(last_error().contains("line"));

    let (status, _) = build(r#"{"ring": {"kind": "zmod", "n": 5000}}"#);
    assert_eq!(status, GuncStatus::CapExceeded);

    let (status, _) = build(r#"{"group": {"kind": "cyclic", "order": 2}, "ring": {"kind": "matrix", "over": {"kind": "zmod", "n": 2}, "sigma": ["e", "h"]}}"#);
    assert_eq!(status, GuncStatus::InvalidSpec);
    assert!(last_error().contains("sigma[1]"), "{}", last_error());

    let (_, ring) = build(E3);
    assert_eq!(check(ring, "clean").0, GuncStatus::UnknownProperty);
    assert_eq!(unsafe { gunc_ring_check(ring, ptr::null(), false, &mut 0, ptr::null_mut()) }, GuncStatus::NullPointer);
    assert_eq!(unsafe { gunc_ring_order(ptr::null()) }, 0);
    unsafe {
        gunc_ring_free(ring);
        gunc_ring_free(ptr::null_mut());
        gunc_string_free(ptr::null_mut());
    }
    assert_eq!(check(ptr::null(), "graded-u-nil-clean").0, GuncStatus::NullPointer);
}

#[test]
fn verify_small_corpus() {
    let corpus = c(r#"{"recipes": [{"recipe": "zmod", "n": [2, 3, 4]},
        {"recipe": "matrix", "bases": [2], "groups": [2], "size": 2}]}"#);
    let (mut clean, mut out) = (-1, ptr::null_mut());
    let status = unsafe { gunc_verify(c("T_MAIN,T_P1a").as_ptr(), corpus.as_ptr(), 1, &mut clean, &mut out) };
    assert_eq!(status, GuncStatus::Ok);
    assert_eq!(clean, 1);
    let report: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    assert_eq!(report["theorems"].as_array().unwrap().len(), 2);
    assert_eq!(report["theorems"][0]["applicable_instances"], 4);
    unsafe { gunc_string_free(out) };

    let status = unsafe { gunc_verify(c("T_NONE").as_ptr(), corpus.as_ptr(), 1, &mut clean, &mut out) };
    assert_eq!(status, GuncStatus::UnknownTheorem);
}

/// The directory holding this test binary's sibling build artifacts.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = artifact_dir().join("libgunc_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = std::env::temp_dir().join(format!("gunc-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <stdint.h>
#include "gunc.h"
int main(void) {
    GuncRing *r = NULL;
    const char *spec = "{\"ring\": {\"kind\": \"zmod\", \"n\": 4}}";
    if (gunc_ring_from_spec(spec, &r) != GUNC_STATUS_OK) return 10;
    int holds = -1;
    size_t cx = 0;
    if (gunc_ring_check(r, "graded-nil-good", false, &holds, &cx) != GUNC_STATUS_OK) return 11;
    printf("%zu %d %d\n", gunc_ring_order(r), holds, cx == SIZE_MAX);
    gunc_ring_free(r);
    if (gunc_ring_from_spec("[", &r) != GUNC_STATUS_PARSE_ERROR) return 12;
    return gunc_last_error_message()[0] == '\0' ? 13 : 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg(format!("-I{}", include.display()))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 1 1\n");
    std::fs::remove_dir_all(dir).unwrap();
}
