//! C ABI over `unibench`.
//!
//! Every fallible function returns an `int` status (`UB_OK` on success) and
//! writes its result through an out-pointer. On failure a message describing
//! the error is available from [`ub_last_error`] on the same thread. Strings
//! returned through out-pointers are owned by the caller and must be released
//! with [`ub_string_free`]; cipher handles with [`ub_cipher_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use unibench::cipher::{CipherError, CipherInstance, CipherName};
use unibench::cli::{compose_records, render_report};
use unibench::ingest::{parse_canonical, IngestOptions};
use unibench::report::{emit_results_document, parse_results_document};
use unibench::{default_li_catalog, normalize_ratio, Directionality};

pub const UB_OK: c_int = 0;
pub const UB_ERR_NULL: c_int = 1;
pub const UB_ERR_UTF8: c_int = 2;
pub const UB_ERR_UNKNOWN_CIPHER: c_int = 3;
pub const UB_ERR_KEY_LENGTH: c_int = 4;
pub const UB_ERR_BLOCK_LENGTH: c_int = 5;
pub const UB_ERR_NON_POSITIVE: c_int = 6;
pub const UB_ERR_INGEST: c_int = 7;
pub const UB_ERR_COMPOSE: c_int = 8;
pub const UB_ERR_PANIC: c_int = 99;

/// Opaque block cipher handle.
pub struct UbCipher {
    inner: CipherInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Error(c_int, String);

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records any error message and converts panics to `UB_ERR_PANIC`.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            UB_OK
        }
        Ok(Err(Error(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            UB_ERR_PANIC
        }
    }
}

fn cipher_error(e: CipherError) -> Error {
    let code = match e {
        CipherError::UnknownCipher(_) => UB_ERR_UNKNOWN_CIPHER,
        CipherError::BadKeyLength { .. } => UB_ERR_KEY_LENGTH,
        CipherError::BadBlockLength { .. } => UB_ERR_BLOCK_LENGTH,
    };
    Error(code, e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error(UB_ERR_NULL, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error(UB_ERR_UTF8, format!("{what} is not valid UTF-8")))
}

unsafe fn bytes_arg<'a>(p: *const u8, len: usize, what: &str) -> Result<&'a [u8], Error> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Error(UB_ERR_NULL, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Error> {
    // SAFETY: caller guarantees a non-null out-pointer is valid for writes
    unsafe { p.as_mut() }.ok_or_else(|| Error(UB_ERR_NULL, format!("{what} is null")))
}

fn into_c_string(s: String) -> Result<*mut c_char, Error> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Error(UB_ERR_UTF8, "output contains NUL".into()))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `ub_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ub_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ub_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a cipher handle.
///
/// # Safety
/// `name` must be a NUL-terminated string, `key` must point to `key_len`
/// readable bytes and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ub_cipher_new(
    name: *const c_char,
    key: *const u8,
    key_len: usize,
    out: *mut *mut UbCipher,
) -> c_int {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let name: CipherName = str_arg(name, "name")?.parse().map_err(cipher_error)?;
        let key = bytes_arg(key, key_len, "key")?;
        let inner = CipherInstance::new(name, key).map_err(cipher_error)?;
        *out = Box::into_raw(Box::new(UbCipher { inner }));
        Ok(())
    })
}

/// Block size in bytes, or 0 for a null handle.
///
/// # Safety
/// `cipher` must be null or a live handle from [`ub_cipher_new`].
#[no_mangle]
pub unsafe extern "C" fn ub_cipher_block_bytes(cipher: *const UbCipher) -> usize {
    cipher.as_ref().map_or(0, |c| c.inner.spec().block_bytes())
}

unsafe fn ecb(cipher: *const UbCipher, data: *mut u8, len: usize, encrypt: bool) -> c_int {
    guard(|| {
        let c = cipher
            .as_ref()
            .ok_or_else(|| Error(UB_ERR_NULL, "cipher is null".into()))?;
        let block = c.inner.spec().block_bytes();
        if !len.is_multiple_of(block) {
            return Err(Error(
                UB_ERR_BLOCK_LENGTH,
                format!("{len} bytes is not a multiple of the {block}-byte block"),
            ));
        }
        if len == 0 {
            return Ok(());
        }
        if data.is_null() {
            return Err(Error(UB_ERR_NULL, "data is null".into()));
        }
        let buf = std::slice::from_raw_parts_mut(data, len);
        for chunk in buf.chunks_exact_mut(block) {
            if encrypt {
                c.inner.encrypt_in_place(chunk)
            } else {
                c.inner.decrypt_in_place(chunk)
            }
            .map_err(cipher_error)?;
        }
        Ok(())
    })
}

/// Encrypts `len` bytes in place, block by block. `len` must be a multiple of
/// the block size.
///
/// # Safety
/// `cipher` must be a live handle and `data` must point to `len` writable
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn ub_cipher_encrypt(
    cipher: *const UbCipher,
    data: *mut u8,
    len: usize,
) -> c_int {
    ecb(cipher, data, len, true)
}

/// Decrypts `len` bytes in place; the inverse of [`ub_cipher_encrypt`].
///
/// # Safety
/// Same as [`ub_cipher_encrypt`].
#[no_mangle]
pub unsafe extern "C" fn ub_cipher_decrypt(
    cipher: *const UbCipher,
    data: *mut u8,
    len: usize,
) -> c_int {
    ecb(cipher, data, len, false)
}

/// Releases a cipher handle. Null is ignored.
///
/// # Safety
/// `cipher` must be null or a handle from [`ub_cipher_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ub_cipher_free(cipher: *mut UbCipher) {
    if !cipher.is_null() {
        drop(Box::from_raw(cipher));
    }
}

/// Ratio of `value` against `reference`, oriented so that above 1.0 is
/// better: `value / reference` when `higher_is_better` is non-zero, otherwise
/// `reference / value`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ub_normalize_ratio(
    value: f64,
    reference: f64,
    higher_is_better: c_int,
    out: *mut f64,
) -> c_int {
    guard(|| {
        let out = out_arg(out, "out")?;
        let dir = if higher_is_better != 0 {
            Directionality::HigherIsBetter
        } else {
            Directionality::LowerIsBetter
        };
        *out = normalize_ratio(value, reference, dir)
            .map_err(|e| Error(UB_ERR_NON_POSITIVE, e.to_string()))?;
        Ok(())
    })
}

/// Composes a canonical measurement document against `reference` using the
/// built-in ten-indicator catalog and returns the results document as JSON.
///
/// # Safety
/// `canonical_json` and `reference` must be NUL-terminated strings and
/// `out_json` must be valid for writes. Free the result with
/// [`ub_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ub_compose_json(
    canonical_json: *const c_char,
    reference: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let out = out_arg(out_json, "out_json")?;
        *out = ptr::null_mut();
        let text = str_arg(canonical_json, "canonical_json")?;
        let reference = str_arg(reference, "reference")?;
        let catalog = default_li_catalog();
        let records = parse_canonical(text, &catalog, &IngestOptions::default(), &mut Vec::new())
            .map_err(|e| Error(UB_ERR_INGEST, e.to_string()))?;
        let doc =
            compose_records(&records, reference, &catalog).map_err(|e| Error(UB_ERR_COMPOSE, e))?;
        *out = into_c_string(emit_results_document(&doc))?;
        Ok(())
    })
}

/// Ranking CSV for a results document produced by [`ub_compose_json`].
///
/// # Safety
/// `results_json` must be a NUL-terminated string and `out_csv` valid for
/// writes. Free the result with [`ub_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ub_ranking_csv(
    results_json: *const c_char,
    out_csv: *mut *mut c_char,
) -> c_int {
    guard(|| {
        let out = out_arg(out_csv, "out_csv")?;
        *out = ptr::null_mut();
        let doc = parse_results_document(str_arg(results_json, "results_json")?)
            .map_err(|e| Error(UB_ERR_COMPOSE, e.to_string()))?;
        let [csv, _, _] = render_report(&doc).map_err(|e| Error(UB_ERR_COMPOSE, e))?;
        *out = into_c_string(csv)?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ub_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
