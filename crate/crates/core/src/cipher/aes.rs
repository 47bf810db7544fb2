//! AES-128, byte-oriented (no T-tables), following the FIPS-197 round
//! structure. The S-box is derived from the GF(2^8) inverse and affine map at
//! key setup.

use std::sync::OnceLock;

use super::BlockKernel;

const ROUNDS: usize = 10;

struct Tables {
    sbox: [u8; 256],
    inv_sbox: [u8; 256],
}

fn gmul(mut a: u8, mut b: u8) -> u8 {
    let mut p = 0u8;
    while b != 0 {
        if b & 1 != 0 {
            p ^= a;
        }
        a = xtime(a);
        b >>= 1;
    }
    p
}

fn xtime(a: u8) -> u8 {
    (a << 1) ^ if a & 0x80 != 0 { 0x1b } else { 0 }
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut sbox = [0u8; 256];
        let mut inv_sbox = [0u8; 256];
        for a in 0..=255u8 {
            // a^254 is the multiplicative inverse (0 maps to 0)
            let mut inv = 1u8;
            for _ in 0..254 {
                inv = gmul(inv, a);
            }
            let s = inv
                ^ inv.rotate_left(1)
                ^ inv.rotate_left(2)
                ^ inv.rotate_left(3)
                ^ inv.rotate_left(4)
                ^ 0x63;
            sbox[a as usize] = s;
            inv_sbox[s as usize] = a;
        }
        Tables { sbox, inv_sbox }
    })
}

pub(super) struct Aes128 {
    round_keys: [[u8; 16]; ROUNDS + 1],
    t: &'static Tables,
}

impl Aes128 {
    pub(super) fn new(key: &[u8]) -> Self {
        let t = tables();
        let mut w = [[0u8; 4]; 4 * (ROUNDS + 1)];
        for (i, chunk) in key.chunks_exact(4).enumerate() {
            w[i].copy_from_slice(chunk);
        }
        let mut rcon = 1u8;
        for i in 4..w.len() {
            let mut temp = w[i - 1];
            if i % 4 == 0 {
                temp.rotate_left(1);
                for b in temp.iter_mut() {
                    *b = t.sbox[*b as usize];
                }
                temp[0] ^= rcon;
                rcon = xtime(rcon);
            }
            for j in 0..4 {
                w[i][j] = w[i - 4][j] ^ temp[j];
            }
        }
        let mut round_keys = [[0u8; 16]; ROUNDS + 1];
        for (r, rk) in round_keys.iter_mut().enumerate() {
            for c in 0..4 {
                rk[4 * c..4 * c + 4].copy_from_slice(&w[4 * r + c]);
            }
        }
        Aes128 { round_keys, t }
    }
}

fn add_round_key(s: &mut [u8], k: &[u8; 16]) {
    for (b, k) in s.iter_mut().zip(k) {
        *b ^= k;
    }
}

fn sub_bytes(s: &mut [u8], table: &[u8; 256]) {
    for b in s.iter_mut() {
        *b = table[*b as usize];
    }
}

// State is column-major: byte (row r, column c) lives at s[4c + r].
fn shift_rows(s: &mut [u8]) {
    for r in 1..4 {
        let mut row = [s[r], s[4 + r], s[8 + r], s[12 + r]];
        row.rotate_left(r);
        for c in 0..4 {
            s[4 * c + r] = row[c];
        }
    }
}

fn inv_shift_rows(s: &mut [u8]) {
    for r in 1..4 {
        let mut row = [s[r], s[4 + r], s[8 + r], s[12 + r]];
        row.rotate_right(r);
        for c in 0..4 {
            s[4 * c + r] = row[c];
        }
    }
}

fn mix_columns(s: &mut [u8]) {
    for col in s.chunks_exact_mut(4) {
        let [a0, a1, a2, a3] = [col[0], col[1], col[2], col[3]];
        let all = a0 ^ a1 ^ a2 ^ a3;
        col[0] ^= all ^ xtime(a0 ^ a1);
        col[1] ^= all ^ xtime(a1 ^ a2);
        col[2] ^= all ^ xtime(a2 ^ a3);
        col[3] ^= all ^ xtime(a3 ^ a0);
    }
}

fn inv_mix_columns(s: &mut [u8]) {
    for col in s.chunks_exact_mut(4) {
        let a = [col[0], col[1], col[2], col[3]];
        for r in 0..4 {
            col[r] = gmul(a[r], 14)
                ^ gmul(a[(r + 1) % 4], 11)
                ^ gmul(a[(r + 2) % 4], 13)
                ^ gmul(a[(r + 3) % 4], 9);
        }
    }
}

impl BlockKernel for Aes128 {
    fn encrypt(&self, block: &mut [u8]) {
        add_round_key(block, &self.round_keys[0]);
        for r in 1..=ROUNDS {
            sub_bytes(block, &self.t.sbox);
            shift_rows(block);
            if r != ROUNDS {
                mix_columns(block);
            }
            add_round_key(block, &self.round_keys[r]);
        }
    }

    fn decrypt(&self, block: &mut [u8]) {
        add_round_key(block, &self.round_keys[ROUNDS]);
        for r in (0..ROUNDS).rev() {
            inv_shift_rows(block);
            sub_bytes(block, &self.t.inv_sbox);
            add_round_key(block, &self.round_keys[r]);
            if r != 0 {
                inv_mix_columns(block);
            }
        }
    }
}
