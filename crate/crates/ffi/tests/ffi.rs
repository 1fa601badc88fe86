use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use toric_gw_ffi::*;

const P1: &str = "K = 1\nN = 2\nm = 1 1\nomega = 1\ncutoff = 2\nt_order = 1\n";
const P2: &str = "K = 1\nN = 3\nm = 1 1 1\nomega = 1\ncutoff = 2\n";

fn parse(text: &str) -> (TgwStatus, *mut TgwGeometry) {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let s = unsafe { tgw_geometry_parse(c.as_ptr(), &mut g) };
    (s, g)
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { tgw_string_free(s) };
    out
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 512];
    let n = unsafe { tgw_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_string()
}

#[test]
fn geometry_handle_lifecycle() {
    let (s, g) = parse(P2);
    assert_eq!(s, TgwStatus::Ok);
    let (mut points, mut edges) = (0, 0);
    assert_eq!(unsafe { tgw_geometry_counts(g, &mut points, &mut edges) }, TgwStatus::Ok);
    assert_eq!((points, edges), (3, 6));
    let mut dump = ptr::null_mut();
    assert_eq!(unsafe { tgw_geometry_dump(g, &mut dump) }, TgwStatus::Ok);
    assert!(take(dump).starts_with("point {1}"));
    unsafe { tgw_geometry_free(g) };
    unsafe { tgw_geometry_free(ptr::null_mut()) };
}

#[test]
fn recursion_and_quantum() {
    let (_, g) = parse(P1);
    let (mut c, mut p, mut k) = (0, 0, 0);
    assert_eq!(unsafe { tgw_verify_recursion(g, 2, &mut c, &mut p, &mut k) }, TgwStatus::Ok);
    assert!(c > 0);
    assert_eq!(c, p);
    let mut table = ptr::null_mut();
    assert_eq!(unsafe { tgw_quantum_table(g, &mut table) }, TgwStatus::Ok);
    assert!(take(table).contains("p1 * p1 = (q)*1"));
    assert_eq!(unsafe { tgw_verify_recursion(g, 0, &mut c, &mut p, &mut k) }, TgwStatus::Spec);
    unsafe { tgw_geometry_free(g) };
}

#[test]
fn gamma_functions() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tgw_gamma_series(3, &mut s) }, TgwStatus::Ok);
    assert_eq!(take(s), "1 + 1/12*u + 1/288*u^2 - 139/51840*u^3");
    assert_eq!(tgw_gamma_check(4), TgwStatus::Ok);
}

#[test]
fn error_codes_and_messages() {
    let (s, g) = parse("K = 1\nN = 2\nm = 1 y\n");
    assert_eq!(s, TgwStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().contains("line 3"));

    let (s, _) = parse("K = 1\nN = 2\nm = 1 1\nomega = 1\nlambda_line = 1 1\n");
    assert_eq!(s, TgwStatus::Spec);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tgw_geometry_parse(ptr::null(), &mut out) }, TgwStatus::NullPointer);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { tgw_geometry_dump(ptr::null(), &mut text) }, TgwStatus::NullPointer);
    assert_eq!(unsafe { tgw_gamma_series(2, ptr::null_mut()) }, TgwStatus::NullPointer);

    let bytes = [0xffu8, 0];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { tgw_geometry_parse(bytes.as_ptr().cast(), &mut g) }, TgwStatus::InvalidUtf8);

    let mut small = [0 as c_char; 4];
    let n = unsafe { tgw_last_error(small.as_mut_ptr(), small.len()) };
    assert!(n > 3);
    assert_eq!(small[3], 0);
}

#[test]
fn quantum_outside_the_supported_range() {
    let (_, g) = parse("K = 2\nN = 4\nm = 1 1 0 0; 0 -2 1 1\nomega = 1 1\ncutoff = 1\nlambda_line = 1 4 2 5\n");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tgw_quantum_table(g, &mut out) }, TgwStatus::Unsupported);
    unsafe { tgw_geometry_free(g) };
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtoric_gw_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("tgw_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("points=2 edges=2"), "{text}");
    assert!(text.contains("p1 * p1 = (q)*1"));
    assert!(text.contains("error: parse error"));
}
