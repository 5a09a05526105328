use std::ffi::{CStr, CString};
use std::ptr;

use xadd_ffi::*;

fn parse(s: &str) -> *mut XaddFloat {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { xadd_parse(c.as_ptr(), &mut out) }, XaddStatus::Ok);
    out
}

fn format(x: *const XaddFloat) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { xadd_format(x, &mut s) }, XaddStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { xadd_string_free(s) };
    text
}

#[test]
fn add_round_trip() {
    let x = parse("0.101010000010010001");
    let y = parse("0.10001e-9");
    let mut out = ptr::null_mut();
    let mut ternary = 0i8;
    let mut stats = XaddStats::default();
    let st = unsafe {
        xadd_add(
            x,
            y,
            4,
            XaddMode::Nearest as i32,
            &mut out,
            &mut ternary,
            &mut stats,
        )
    };
    assert_eq!(st, XaddStatus::Ok);
    assert_eq!(format(out), "0.1011e0");
    assert_eq!(ternary, 1);
    assert!((1..=10).contains(&stats.case_row));
    assert_eq!(unsafe { xadd_precision(out) }, 4);
    assert_eq!(unsafe { xadd_exponent(out) }, 0);
    assert_eq!(unsafe { xadd_precision(x) }, 18);

    let mut down = ptr::null_mut();
    let st = unsafe {
        xadd_add(
            x,
            y,
            4,
            XaddMode::Down as i32,
            &mut down,
            &mut ternary,
            ptr::null_mut(),
        )
    };
    assert_eq!(st, XaddStatus::Ok);
    assert_eq!((format(down).as_str(), ternary), ("0.1010e0", -1));

    unsafe {
        xadd_free(x);
        xadd_free(y);
        xadd_free(out);
        xadd_free(down);
        xadd_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("0.x").unwrap();
    assert_eq!(
        unsafe { xadd_parse(bad.as_ptr(), &mut out) },
        XaddStatus::Parse
    );
    assert_eq!(
        unsafe { xadd_parse(ptr::null(), &mut out) },
        XaddStatus::NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { xadd_parse(invalid.as_ptr().cast(), &mut out) },
        XaddStatus::InvalidUtf8
    );

    let x = parse("0.11");
    let neg = parse("-0.11");
    let mut t = 0i8;
    let add = |a, b, p, m, out: &mut *mut XaddFloat, t: &mut i8| unsafe {
        xadd_add(a, b, p, m, out, t, ptr::null_mut())
    };
    assert_eq!(
        add(x, x, 1, 0, &mut out, &mut t),
        XaddStatus::InvalidPrecision
    );
    assert_eq!(add(x, x, 2, 9, &mut out, &mut t), XaddStatus::InvalidMode);
    assert_eq!(add(x, neg, 2, 0, &mut out, &mut t), XaddStatus::NotPositive);
    assert_eq!(
        add(x, ptr::null(), 2, 0, &mut out, &mut t),
        XaddStatus::NullPointer
    );
    assert_eq!(unsafe { xadd_precision(ptr::null()) }, 0);
    unsafe {
        xadd_free(x);
        xadd_free(neg);
    }
}

#[test]
fn overflow_reports_ternary() {
    let big = parse(&format!("0.11e{}", xadd_core::float::DEFAULT_EMAX));
    let mut out = ptr::null_mut();
    let mut t = 0i8;
    for (mode, want) in [
        (XaddMode::Up, 1),
        (XaddMode::Nearest, 1),
        (XaddMode::Down, -1),
        (XaddMode::Zero, -1),
    ] {
        let st = unsafe { xadd_add(big, big, 2, mode as i32, &mut out, &mut t, ptr::null_mut()) };
        assert_eq!(st, XaddStatus::Overflow);
        assert!(out.is_null());
        assert_eq!(t, want);
    }
    unsafe { xadd_free(big) };
}

#[test]
fn status_messages() {
    for st in [
        XaddStatus::Ok,
        XaddStatus::Parse,
        XaddStatus::Overflow,
        XaddStatus::Internal,
    ] {
        let msg = unsafe { CStr::from_ptr(xadd_status_message(st)) };
        assert!(!msg.to_bytes().is_empty());
    }
}

#[test]
fn header_declares_api() {
    let header = include_str!("../include/xadd.h");
    for name in [
        "typedef struct XaddFloat XaddFloat;",
        "XADD_STATUS_OVERFLOW = 7",
        "XADD_MODE_NEAREST = 3",
        "XaddStatus xadd_parse(",
        "void xadd_free(",
        "XaddStatus xadd_format(",
        "void xadd_string_free(",
        "uint64_t xadd_precision(",
        "int64_t xadd_exponent(",
        "XaddStatus xadd_add(",
        "const char *xadd_status_message(",
        "uint64_t trailing_bits_examined;",
    ] {
        assert!(header.contains(name), "header lacks {name:?}");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/xadd.h");
    let dir = std::env::temp_dir().join(format!("xadd-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ XaddFloat *x = 0; int8_t t; \
             return xadd_add(x, x, 2, XADD_MODE_UP, &x, &t, 0) == XADD_STATUS_NULL_POINTER ? 0 : 1; }}\n"
        ),
    )
    .unwrap();
    match std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .output()
    {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(_) => eprintln!("cc not found; skipping"),
    }
}
