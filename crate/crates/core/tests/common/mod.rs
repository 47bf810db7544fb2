#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use unibench::cipher::CipherName;
use unibench::{Directionality, IndicatorSpec, ProfileSpec, RatioTable};

pub fn hex(s: &str) -> Vec<u8> {
    assert!(s.len().is_multiple_of(2), "odd hex string {s}");
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).unwrap())
        .collect()
}

/// Published known-answer vectors as `(cipher, key, plaintext, ciphertext)`.
pub const VECTORS: &[(CipherName, &str, &str, &str)] = &[
    // XTEA, 64 rounds, big-endian words
    (
        CipherName::Xtea,
        "000102030405060708090a0b0c0d0e0f",
        "4142434445464748",
        "497df3d072612cb5",
    ),
    (
        CipherName::Xtea,
        "000102030405060708090a0b0c0d0e0f",
        "4141414141414141",
        "e78f2d13744341d8",
    ),
    (
        CipherName::Xtea,
        "00000000000000000000000000000000",
        "4142434445464748",
        "a0390589f8b8efa5",
    ),
    (
        CipherName::Xtea,
        "00000000000000000000000000000000",
        "4141414141414141",
        "ed23375a821a8c2d",
    ),
    (
        CipherName::Xtea,
        "00000000000000000000000000000000",
        "0000000000000000",
        "dee9d4d8f7131ed9",
    ),
    // Skipjack, from the NIST algorithm specification
    (
        CipherName::Skipjack,
        "00998877665544332211",
        "33221100ddccbbaa",
        "2587cae27a12d300",
    ),
    // 3-Way, words written high to low
    (
        CipherName::ThreeWay,
        "000000000000000000000000",
        "000000010000000100000001",
        "ad21ecf783ae9dc44059c76e",
    ),
    (
        CipherName::ThreeWay,
        "000000040000000500000006",
        "000000010000000200000003",
        "cab920cdd6144138d2f05b5e",
    ),
    (
        CipherName::ThreeWay,
        "cab920cdd6144138d2f05b5e",
        "ad21ecf783ae9dc44059c76e",
        "15b155ed6b13f17c478ea871",
    ),
    // KATAN family designers' vectors
    (
        CipherName::Katan32,
        "ffffffffffffffffffff",
        "00000000",
        "7e1ff945",
    ),
    (
        CipherName::Katan32,
        "00000000000000000000",
        "ffffffff",
        "432e61da",
    ),
    (
        CipherName::Katan64,
        "ffffffffffffffffffff",
        "0000000000000000",
        "21f2e99c0fab828a",
    ),
    // HIGHT, designers' vectors and the Korean standard
    (
        CipherName::Hight,
        "00112233445566778899aabbccddeeff",
        "0000000000000000",
        "00f418aed94f03f2",
    ),
    (
        CipherName::Hight,
        "ffeeddccbbaa99887766554433221100",
        "0011223344556677",
        "23ce9f72e543e6d8",
    ),
    (
        CipherName::Hight,
        "000102030405060708090a0b0c0d0e0f",
        "0123456789abcdef",
        "7a6fb2a28d23f466",
    ),
    (
        CipherName::Hight,
        "28dbc3bc49ffd87dcfa509b11d422be7",
        "b41e6be2eba84a14",
        "cc047a75209c1fc6",
    ),
    // AES-128, FIPS-197 appendices
    (
        CipherName::Aes128,
        "000102030405060708090a0b0c0d0e0f",
        "00112233445566778899aabbccddeeff",
        "69c4e0d86a7b0430d8cdb78070b4c55a",
    ),
    (
        CipherName::Aes128,
        "2b7e151628aed2a6abf7158809cf4f3c",
        "3243f6a8885a308d313198a2e0370734",
        "3925841d02dc09fbdc118597196a0b32",
    ),
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// CMI the long way: multiply every ratio, then take the l-th root.
pub fn oracle_cmi(ratios: &[f64]) -> f64 {
    let product: f64 = ratios.iter().product();
    product.powf(1.0 / ratios.len() as f64)
}

/// A one-subject ratio table with `ratios.len()` indicators split
/// round-robin over `profiles` profiles.
pub fn single_subject_table(ratios: &[f64], profiles: usize) -> (RatioTable, Vec<ProfileSpec>) {
    let mut table = RatioTable::new("ref");
    let mut specs: Vec<ProfileSpec> = (0..profiles)
        .map(|p| ProfileSpec {
            id: format!("p{p}"),
            name: format!("profile {p}"),
            indicator_ids: vec![],
        })
        .collect();
    for (i, r) in ratios.iter().enumerate() {
        let id = format!("i{i:02}");
        table.insert("s", &id, *r).unwrap();
        specs[i % profiles].indicator_ids.push(id);
    }
    specs.retain(|p| !p.indicator_ids.is_empty());
    (table, specs)
}

/// Log-uniform sample in `[lo, hi]`.
pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}

/// `n` indicators alternating direction, all in one profile.
pub fn indicator_specs(n: usize) -> (Vec<IndicatorSpec>, Vec<ProfileSpec>) {
    let specs: Vec<IndicatorSpec> = (0..n)
        .map(|i| IndicatorSpec {
            id: format!("i{i:02}"),
            name: format!("indicator {i}"),
            unit: "u".into(),
            directionality: if i % 2 == 0 {
                Directionality::LowerIsBetter
            } else {
                Directionality::HigherIsBetter
            },
            profile_id: "p".into(),
        })
        .collect();
    let profile = ProfileSpec {
        id: "p".into(),
        name: "profile".into(),
        indicator_ids: specs.iter().map(|s| s.id.clone()).collect(),
    };
    (specs, vec![profile])
}
