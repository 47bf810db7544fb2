use std::ffi::{c_char, CStr, CString};
use std::ptr;

use unibench_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ub_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn hex(s: &str) -> Vec<u8> {
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).unwrap())
        .collect()
}

fn cipher(name: &str, key: &[u8]) -> (i32, *mut UbCipher) {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    let code = unsafe { ub_cipher_new(name.as_ptr(), key.as_ptr(), key.len(), &mut out) };
    (code, out)
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    ub_string_free(p);
    s
}

#[test]
fn cipher_handle_lifecycle() {
    // HIGHT designers' vector, two blocks at once
    let (code, c) = cipher("hight", &hex("00112233445566778899aabbccddeeff"));
    assert_eq!(code, UB_OK);
    assert_eq!(unsafe { ub_cipher_block_bytes(c) }, 8);
    let mut data = vec![0u8; 16];
    assert_eq!(
        unsafe { ub_cipher_encrypt(c, data.as_mut_ptr(), data.len()) },
        UB_OK
    );
    assert_eq!(data[..8], hex("00f418aed94f03f2")[..]);
    assert_eq!(data[..8], data[8..]);
    assert_eq!(
        unsafe { ub_cipher_decrypt(c, data.as_mut_ptr(), data.len()) },
        UB_OK
    );
    assert_eq!(data, vec![0u8; 16]);

    assert_eq!(
        unsafe { ub_cipher_encrypt(c, data.as_mut_ptr(), 12) },
        UB_ERR_BLOCK_LENGTH
    );
    assert!(last_error().contains("12 bytes"));
    unsafe { ub_cipher_free(c) };
    unsafe { ub_cipher_free(ptr::null_mut()) };
}

#[test]
fn construction_errors() {
    let (code, c) = cipher("des", &[0; 8]);
    assert_eq!((code, c.is_null()), (UB_ERR_UNKNOWN_CIPHER, true));
    assert!(last_error().contains("des"));

    let (code, c) = cipher("xtea", &[0; 15]);
    assert_eq!((code, c.is_null()), (UB_ERR_KEY_LENGTH, true));

    let mut out = ptr::null_mut();
    let code = unsafe { ub_cipher_new(ptr::null(), ptr::null(), 0, &mut out) };
    assert_eq!(code, UB_ERR_NULL);
    let name = CString::new("xtea").unwrap();
    let code = unsafe { ub_cipher_new(name.as_ptr(), [0u8; 16].as_ptr(), 16, ptr::null_mut()) };
    assert_eq!(code, UB_ERR_NULL);
    assert_eq!(unsafe { ub_cipher_block_bytes(ptr::null()) }, 0);
}

#[test]
fn ratio_orientation() {
    let mut r = 0.0;
    assert_eq!(unsafe { ub_normalize_ratio(8.0, 2.0, 1, &mut r) }, UB_OK);
    assert_eq!(r, 4.0);
    assert_eq!(unsafe { ub_normalize_ratio(8.0, 2.0, 0, &mut r) }, UB_OK);
    assert_eq!(r, 0.25);
    assert_eq!(
        unsafe { ub_normalize_ratio(0.0, 2.0, 0, &mut r) },
        UB_ERR_NON_POSITIVE
    );
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { ub_normalize_ratio(1.0, 1.0, 0, &mut r) }, UB_OK);
    assert!(last_error().is_empty());
}

#[test]
fn compose_and_rank() {
    let doc = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/fixtures/corpus.json"
    ))
    .unwrap();
    let doc = CString::new(doc).unwrap();
    let reference = CString::new("aes128").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { ub_compose_json(doc.as_ptr(), reference.as_ptr(), &mut json) },
        UB_OK
    );
    let json_s = unsafe { CStr::from_ptr(json) }.to_owned();
    unsafe { ub_string_free(json) };

    let mut csv = ptr::null_mut();
    assert_eq!(unsafe { ub_ranking_csv(json_s.as_ptr(), &mut csv) }, UB_OK);
    let csv = unsafe { take_string(csv) };
    assert!(csv.lines().nth(1).unwrap().starts_with("1,threeway,"));

    let missing = CString::new("des").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { ub_compose_json(doc.as_ptr(), missing.as_ptr(), &mut out) },
        UB_ERR_COMPOSE
    );
    assert!(out.is_null());

    let bad = CString::new("{").unwrap();
    assert_eq!(
        unsafe { ub_compose_json(bad.as_ptr(), reference.as_ptr(), &mut out) },
        UB_ERR_INGEST
    );
    assert!(last_error().contains("line"));
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(ub_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
