use std::ffi::{c_char, CStr, CString};
use std::ptr;

use brauer_ffi::*;

fn last_error() -> String {
    let p = brauer_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { brauer_string_free(p) };
    s
}

fn group(spec: &str) -> *mut BrauerGroup {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { brauer_group_new(spec.as_ptr(), 0, &mut g) },
        BrauerStatus::Ok
    );
    g
}

#[test]
fn group_handle_lifecycle() {
    let g = group("kind=alternating,n=5");
    let mut order = 0usize;
    assert_eq!(
        unsafe { brauer_group_order(g, &mut order) },
        BrauerStatus::Ok
    );
    assert_eq!(order, 60);
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { brauer_group_describe(g, &mut s) },
        BrauerStatus::Ok
    );
    assert!(take_string(s).contains("alternating"));
    unsafe { brauer_group_free(g) };
    unsafe { brauer_group_free(ptr::null_mut()) };
}

#[test]
fn verify_returns_a_passing_report() {
    let g = group("kind=symmetric,n=4");
    let task = CString::new("lemma-ab").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { brauer_verify(g, task.as_ptr(), 2, 0, &mut r) },
        BrauerStatus::Ok
    );
    let mut pass = false;
    assert_eq!(
        unsafe { brauer_report_passed(r, &mut pass) },
        BrauerStatus::Ok
    );
    assert!(pass);
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { brauer_report_json(r, &mut json) },
        BrauerStatus::Ok
    );
    let json = take_string(json);
    assert!(json.contains("\"task\": \"lemma-ab\""), "{json}");
    assert!(brauer_last_error().is_null());
    unsafe {
        brauer_report_free(r);
        brauer_group_free(g);
    }
}

#[test]
fn registry_instances() {
    let inst = CString::new("GL2(4)").unwrap();
    let task = CString::new("theorem-a").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { brauer_verify_instance(inst.as_ptr(), task.as_ptr(), 5, 0, &mut r) },
        BrauerStatus::Ok
    );
    let mut pass = false;
    unsafe { brauer_report_passed(r, &mut pass) };
    assert!(pass);
    unsafe { brauer_report_free(r) };

    let nope = CString::new("nope").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { brauer_verify_instance(nope.as_ptr(), task.as_ptr(), 5, 0, &mut r) },
        BrauerStatus::InvalidInput
    );
    assert!(r.is_null());
    assert!(last_error().contains("nope"));
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    let bad = CString::new("kind=klein").unwrap();
    assert_eq!(
        unsafe { brauer_group_new(bad.as_ptr(), 0, &mut g) },
        BrauerStatus::InvalidInput
    );
    assert!(g.is_null());
    assert!(!last_error().is_empty());

    let big = CString::new("kind=symmetric,n=7").unwrap();
    assert_eq!(
        unsafe { brauer_group_new(big.as_ptr(), 1000, &mut g) },
        BrauerStatus::TooLarge
    );

    assert_eq!(
        unsafe { brauer_group_new(ptr::null(), 0, &mut g) },
        BrauerStatus::NullArgument
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { brauer_group_new(invalid.as_ptr().cast(), 0, &mut g) },
        BrauerStatus::InvalidUtf8
    );

    let gl = group("kind=GL,n=2,q=4");
    let task = CString::new("theorem-a").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { brauer_verify(gl, task.as_ptr(), 3, 0, &mut r) },
        BrauerStatus::Precondition
    );
    assert!(last_error().contains("|Z(G)^F|"));
    assert_eq!(
        unsafe { brauer_verify(gl, task.as_ptr(), 4, 0, &mut r) },
        BrauerStatus::InvalidInput
    );
    let unknown = CString::new("theorem-z").unwrap();
    assert_eq!(
        unsafe { brauer_verify(gl, unknown.as_ptr(), 5, 0, &mut r) },
        BrauerStatus::InvalidInput
    );
    assert_eq!(
        unsafe { brauer_report_passed(ptr::null(), &mut false) },
        BrauerStatus::NullArgument
    );
    unsafe { brauer_group_free(gl) };
}

#[test]
fn version_matches_core() {
    let v = unsafe { CStr::from_ptr(brauer_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, brauer_core::verify::VERSION);
}

#[test]
fn header_declares_every_entry_point() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/brauer.h")).unwrap();
    for f in [
        "brauer_last_error",
        "brauer_version",
        "brauer_group_new",
        "brauer_group_free",
        "brauer_group_order",
        "brauer_group_describe",
        "brauer_verify",
        "brauer_verify_instance",
        "brauer_report_passed",
        "brauer_report_json",
        "brauer_report_free",
        "brauer_string_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct BrauerGroup BrauerGroup;"));
}

#[test]
fn header_compiles_as_c() {
    let dir = tempfile_dir();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"brauer.h\"\nint main(void) { BrauerGroup *g = 0; size_t n; return brauer_group_order(g, &n) == BRAUER_STATUS_NULL_ARGUMENT ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(out) = std::process::Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "-I",
            concat!(env!("CARGO_MANIFEST_DIR"), "/include"),
        ])
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("brauer-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
