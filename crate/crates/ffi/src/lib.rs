//! C interface.
//!
//! Values live behind opaque `XaddFloat` handles created by [`xadd_parse`] or
//! [`xadd_add`] and released with [`xadd_free`]. Every fallible call returns
//! an [`XaddStatus`]; out-parameters are written only on success, except that
//! [`xadd_add`] also writes the ternary value when it reports overflow.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use xadd_core::textio::parse_float;
use xadd_core::{add_positive, AddError, Float, Precision, RoundingMode};

/// Opaque handle to a float.
pub struct XaddFloat(Float);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XaddStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidPrecision = 4,
    InvalidMode = 5,
    NotPositive = 6,
    Overflow = 7,
    Internal = 8,
}

/// Rounding modes, passed to [`xadd_add`] as `int32_t`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XaddMode {
    Down = 0,
    Up = 1,
    Zero = 2,
    Nearest = 3,
}

/// Work counters for one addition.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct XaddStats {
    pub trailing_bits_examined: u64,
    pub x_limbs_read: u64,
    pub y_limbs_read: u64,
    /// Main-term case, 1 to 10.
    pub case_row: u32,
}

fn mode_from(mode: i32) -> Option<RoundingMode> {
    Some(match mode {
        0 => RoundingMode::Down,
        1 => RoundingMode::Up,
        2 => RoundingMode::TowardZero,
        3 => RoundingMode::NearestEven,
        _ => return None,
    })
}

fn guard(f: impl FnOnce() -> XaddStatus) -> XaddStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(XaddStatus::Internal)
}

/// Parses `0.<bits>[e<exp>]` (optionally with a leading `-`) into a new handle.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xadd_parse(text: *const c_char, out: *mut *mut XaddFloat) -> XaddStatus {
    if text.is_null() || out.is_null() {
        return XaddStatus::NullPointer;
    }
    guard(|| {
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return XaddStatus::InvalidUtf8;
        };
        match parse_float(s) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(XaddFloat(f)));
                XaddStatus::Ok
            }
            Err(_) => XaddStatus::Parse,
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `x` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xadd_free(x: *mut XaddFloat) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Writes the text form of `x` into a new string owned by the caller, to be
/// released with [`xadd_string_free`].
///
/// # Safety
/// `x` must be null or a live handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xadd_format(x: *const XaddFloat, out: *mut *mut c_char) -> XaddStatus {
    if x.is_null() || out.is_null() {
        return XaddStatus::NullPointer;
    }
    guard(|| match CString::new((*x).0.to_string()) {
        Ok(s) => {
            *out = s.into_raw();
            XaddStatus::Ok
        }
        Err(_) => XaddStatus::Internal,
    })
}

/// # Safety
/// `s` must be null or a string returned by [`xadd_format`].
#[no_mangle]
pub unsafe extern "C" fn xadd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Precision in bits; 0 for null.
///
/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn xadd_precision(x: *const XaddFloat) -> u64 {
    if x.is_null() {
        0
    } else {
        (*x).0.precision().bits()
    }
}

/// Exponent `e` in `0.1b2...bp * 2^e`; 0 for null.
///
/// # Safety
/// `x` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn xadd_exponent(x: *const XaddFloat) -> i64 {
    if x.is_null() {
        0
    } else {
        (*x).0.exponent()
    }
}

/// Rounds `x + y` to `prec` bits. On success `*out` receives a new handle and
/// `*ternary` the sign of `result - (x + y)`. On overflow the status is
/// `XADD_STATUS_OVERFLOW`, `*out` is set to null and `*ternary` still holds
/// the ternary value. `stats` may be null.
///
/// # Safety
/// `x`, `y` must be null or live handles; `out`, `ternary` must be null or
/// valid for writes; `stats` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn xadd_add(
    x: *const XaddFloat,
    y: *const XaddFloat,
    prec: u64,
    mode: i32,
    out: *mut *mut XaddFloat,
    ternary: *mut i8,
    stats: *mut XaddStats,
) -> XaddStatus {
    if x.is_null() || y.is_null() || out.is_null() || ternary.is_null() {
        return XaddStatus::NullPointer;
    }
    let Some(mode) = mode_from(mode) else {
        return XaddStatus::InvalidMode;
    };
    let Ok(p) = Precision::new(prec) else {
        return XaddStatus::InvalidPrecision;
    };
    guard(|| match add_positive(&(*x).0, &(*y).0, p, mode) {
        Ok(o) => {
            if !stats.is_null() {
                *stats = XaddStats {
                    trailing_bits_examined: o.stats.trailing_bits_examined,
                    x_limbs_read: o.stats.x_limbs_read as u64,
                    y_limbs_read: o.stats.y_limbs_read as u64,
                    case_row: o.row.index() as u32,
                };
            }
            *ternary = o.ternary.as_i8();
            *out = Box::into_raw(Box::new(XaddFloat(o.result)));
            XaddStatus::Ok
        }
        Err(AddError::Overflow(o)) => {
            *ternary = o.ternary.as_i8();
            *out = ptr::null_mut();
            XaddStatus::Overflow
        }
        Err(AddError::NotPositive) => XaddStatus::NotPositive,
        Err(AddError::Internal(_)) => XaddStatus::Internal,
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn xadd_status_message(status: XaddStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        XaddStatus::Ok => b"ok\0",
        XaddStatus::NullPointer => b"null pointer argument\0",
        XaddStatus::InvalidUtf8 => b"string is not valid UTF-8\0",
        XaddStatus::Parse => b"malformed number\0",
        XaddStatus::InvalidPrecision => b"precision out of range\0",
        XaddStatus::InvalidMode => b"unknown rounding mode\0",
        XaddStatus::NotPositive => b"operands must be positive\0",
        XaddStatus::Overflow => b"result exponent exceeds emax\0",
        XaddStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}
