use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use acgw_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    acgw_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = acgw_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

const SPANEX: &str = "instance set
complex X 1..3
  obj 2 {a}
end
complex Y 1..3
  obj 3 {a}
  obj 2 {a, b}
  obj 1 {b}
  tr 3 {a}
  tr 2 {b}
end
hor f : X -> Y
end
";

#[test]
fn document_lifecycle() {
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(acgw_document_parse(c(SPANEX).as_ptr(), &mut doc), AcgwStatus::Ok);
        assert_eq!(acgw_document_item_count(doc), 3);
        assert_eq!(acgw_document_validate(doc), AcgwStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(acgw_document_to_text(doc, &mut out), AcgwStatus::Ok);
        let text = take(out);
        acgw_document_free(doc);

        let mut again = ptr::null_mut();
        assert_eq!(acgw_document_parse(c(&text).as_ptr(), &mut again), AcgwStatus::Ok);
        acgw_document_free(again);
        acgw_document_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut doc = ptr::null_mut();
        let st = acgw_document_parse(c("instance set\ncomplex X 0..1\n  obj 1 {a\n").as_ptr(), &mut doc);
        assert_eq!(st, AcgwStatus::Parse);
        assert!(doc.is_null());
        assert!(last_error().contains("3:11"));

        let bad = "instance set\ncomplex X 0..2\n  obj 2 {a}\n  obj 1 {a}\n  obj 0 {a}\n  tr 2 {a}\n  tr 1 {a}\nend\n";
        assert_eq!(acgw_document_parse(c(bad).as_ptr(), &mut doc), AcgwStatus::Ok);
        assert_eq!(acgw_document_validate(doc), AcgwStatus::Semantic);
        assert!(last_error().contains("degree"));
        acgw_document_free(doc);

        assert_eq!(acgw_document_parse(ptr::null(), &mut doc), AcgwStatus::NullArgument);
        assert_eq!(acgw_document_validate(ptr::null()), AcgwStatus::NullArgument);
        let invalid = [0xffu8 as c_char, 0];
        assert_eq!(acgw_document_parse(invalid.as_ptr(), &mut doc), AcgwStatus::InvalidUtf8);

        let (mut out, mut code) = (ptr::null_mut(), 0);
        let st = acgw_run(c(SPANEX).as_ptr(), c("frobnicate").as_ptr(), false, &mut out, &mut code);
        assert_eq!(st, AcgwStatus::UnknownName);
        assert_eq!(acgw_generate(c("nope").as_ptr(), 1, 0, false, &mut out), AcgwStatus::UnknownName);
    }
}

#[test]
fn run_and_generate() {
    unsafe {
        let (mut out, mut code) = (ptr::null_mut(), -1);
        assert_eq!(acgw_run(c(SPANEX).as_ptr(), c("homology").as_ptr(), false, &mut out, &mut code), AcgwStatus::Ok);
        assert_eq!(code, 0);
        let s = take(out);
        assert!(s.contains("H_2(X) = {a}") && s.contains("H_2(Y) = {}"), "{s}");

        for kind in ["complex", "exact", "map", "ses", "snake", "strong-snake", "linear"] {
            let mut doc = ptr::null_mut();
            assert_eq!(acgw_generate(c(kind).as_ptr(), 5, 4, true, &mut doc), AcgwStatus::Ok);
            let text = take(doc);
            assert_eq!(acgw_run(c(&text).as_ptr(), c("validate").as_ptr(), false, &mut out, &mut code), AcgwStatus::Ok);
            take(out);
            assert_eq!(code, 0, "{kind}");
        }

        let parse_fail = c("instance nothing\n");
        assert_eq!(acgw_run(parse_fail.as_ptr(), c("validate").as_ptr(), true, &mut out, &mut code), AcgwStatus::Ok);
        assert_eq!(code, 2);
        assert!(take(out).contains("\"parse\""));
        assert!(CStr::from_ptr(acgw_version()).to_str().unwrap().starts_with("0."));
    }
}

/// Compile a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libacgw_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acgw_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0."));
}
