//! C ABI over the `zn-tower` engine.
//!
//! Towers and elements cross the boundary as opaque handles. Every fallible
//! call returns a [`ZnStatus`]; on failure the message is kept per thread and
//! can be fetched with [`zn_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zn_tower::{load_tower, parse, Element, GroupTower, TowerError};

/// Opaque tower handle.
pub struct ZnTower {
    inner: GroupTower,
}

/// Opaque element handle. Only valid together with the tower that made it.
pub struct ZnElement {
    inner: Element,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownSymbol = 4,
    Rejected = 5,
    TowerFile = 6,
    Undefined = 7,
    Panic = 99,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(err: &TowerError) -> ZnStatus {
    match err {
        TowerError::Parse { .. } => ZnStatus::Parse,
        TowerError::UnknownSymbol(_) => ZnStatus::UnknownSymbol,
        TowerError::Rejected { .. } => ZnStatus::Rejected,
        TowerError::File(_) | TowerError::BadName(_) => ZnStatus::TowerFile,
        TowerError::Identity | TowerError::Lambda(_) => ZnStatus::Undefined,
    }
}

fn fail(err: TowerError) -> ZnStatus {
    set_error(err.to_string());
    status_of(&err)
}

fn guard(f: impl FnOnce() -> ZnStatus) -> ZnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            ZnStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ZnStatus> {
    if p.is_null() {
        set_error("null string");
        return Err(ZnStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        ZnStatus::InvalidUtf8
    })
}

fn emit_string(s: String, out: *mut *mut c_char) -> ZnStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            ZnStatus::Ok
        }
        Err(_) => {
            set_error("string contains NUL");
            ZnStatus::InvalidUtf8
        }
    }
}

fn emit_element(e: Element, out: *mut *mut ZnElement) {
    unsafe { *out = Box::into_raw(Box::new(ZnElement { inner: e })) };
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return ZnStatus::NullPointer;
        }
    };
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// owned by the library and valid until the next failing call.
#[no_mangle]
pub extern "C" fn zn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build a tower from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zn_tower_load_json(json: *const c_char, out: *mut *mut ZnTower) -> ZnStatus {
    nonnull!(out);
    guard(|| {
        let src = match read_str(json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match load_tower(src) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(ZnTower { inner: t }));
                ZnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Tower for the free group on comma separated generator names.
///
/// # Safety
/// `names` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zn_tower_free_group(names: *const c_char, out: *mut *mut ZnTower) -> ZnStatus {
    nonnull!(out);
    guard(|| {
        let src = match read_str(names) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let names: Vec<&str> = src.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        match GroupTower::free(&names) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(ZnTower { inner: t }));
                ZnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `t` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn zn_tower_free(t: *mut ZnTower) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Rank n of the length group Z^n.
///
/// # Safety
/// `t` must be a live tower handle.
#[no_mangle]
pub unsafe extern "C" fn zn_tower_rank(t: *const ZnTower) -> usize {
    if t.is_null() {
        return 0;
    }
    (*t).inner.rank()
}

/// Parse an expression such as `a^2*z*b^-1` into normal form.
///
/// # Safety
/// `t` must be a live tower handle, `src` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zn_element_parse(t: *const ZnTower, src: *const c_char, out: *mut *mut ZnElement) -> ZnStatus {
    nonnull!(t, out);
    guard(|| {
        let s = match read_str(src) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse(&(*t).inner, s) {
            Ok(e) => {
                emit_element(e, out);
                ZnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `e` must be NULL or an element handle, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn zn_element_free(e: *mut ZnElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Render the normal form. Release the string with [`zn_string_free`].
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zn_element_render(t: *const ZnTower, e: *const ZnElement, out: *mut *mut c_char) -> ZnStatus {
    nonnull!(t, e, out);
    guard(|| emit_string((*t).inner.render(&(*e).inner), out))
}

/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zn_element_mul(
    t: *const ZnTower,
    a: *const ZnElement,
    b: *const ZnElement,
    out: *mut *mut ZnElement,
) -> ZnStatus {
    nonnull!(t, a, b, out);
    guard(|| {
        emit_element((*t).inner.mul(&(*a).inner, &(*b).inner), out);
        ZnStatus::Ok
    })
}

/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zn_element_inv(t: *const ZnTower, a: *const ZnElement, out: *mut *mut ZnElement) -> ZnStatus {
    nonnull!(t, a, out);
    guard(|| {
        emit_element((*t).inner.inv(&(*a).inner), out);
        ZnStatus::Ok
    })
}

/// Writes 1 to `out` when the elements are equal in the group, else 0.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zn_element_equals(
    t: *const ZnTower,
    a: *const ZnElement,
    b: *const ZnElement,
    out: *mut i32,
) -> ZnStatus {
    nonnull!(t, a, b, out);
    guard(|| {
        *out = (*t).inner.equals(&(*a).inner, &(*b).inner) as i32;
        ZnStatus::Ok
    })
}

/// Copy the length coordinates (bottom first) into `buf`, which must hold
/// `zn_tower_rank` entries; `cap` is its capacity.
///
/// # Safety
/// Handles must be live; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn zn_element_length(
    t: *const ZnTower,
    e: *const ZnElement,
    buf: *mut i64,
    cap: usize,
) -> ZnStatus {
    nonnull!(t, e, buf);
    guard(|| {
        let len = (*t).inner.length(&(*e).inner);
        let c = len.coords();
        if cap < c.len() {
            set_error(format!("buffer holds {cap} coordinates, need {}", c.len()));
            return ZnStatus::Undefined;
        }
        ptr::copy_nonoverlapping(c.as_ptr(), buf, c.len());
        ZnStatus::Ok
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn zn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
