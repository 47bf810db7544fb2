//! HIGHT: 64-bit block, 128-bit key, 32 rounds of an 8-branch generalized
//! Feistel network over bytes.
//!
//! Published vectors list bytes most significant first (`MK15 .. MK0`,
//! `P7 .. P0`), so byte `i` of the input is `P[7 - i]`.

use super::BlockKernel;

pub(super) struct Hight {
    wk: [u8; 8],
    sk: [u8; 128],
}

fn f0(x: u8) -> u8 {
    x.rotate_left(1) ^ x.rotate_left(2) ^ x.rotate_left(7)
}

fn f1(x: u8) -> u8 {
    x.rotate_left(3) ^ x.rotate_left(4) ^ x.rotate_left(6)
}

/// Round constants from the 7-bit LFSR x^7 + x^3 + 1, seeded with 0x5a.
fn deltas() -> [u8; 128] {
    let mut d = [0u8; 128];
    d[0] = 0x5a;
    for i in 1..128 {
        let p = d[i - 1];
        d[i] = (p >> 1) | ((((p >> 3) ^ p) & 1) << 6);
    }
    d
}

impl Hight {
    pub(super) fn new(key: &[u8]) -> Self {
        let mk: [u8; 16] = std::array::from_fn(|i| key[15 - i]);
        let wk = std::array::from_fn(|i| if i < 4 { mk[i + 12] } else { mk[i - 4] });
        let d = deltas();
        let mut sk = [0u8; 128];
        for i in 0..8 {
            for j in 0..8 {
                let idx = (j + 8 - i) % 8;
                sk[16 * i + j] = mk[idx].wrapping_add(d[16 * i + j]);
                sk[16 * i + j + 8] = mk[idx + 8].wrapping_add(d[16 * i + j + 8]);
            }
        }
        Hight { wk, sk }
    }
}

fn load(block: &[u8]) -> [u8; 8] {
    std::array::from_fn(|i| block[7 - i])
}

fn store(block: &mut [u8], x: [u8; 8]) {
    for (i, b) in block.iter_mut().enumerate() {
        *b = x[7 - i];
    }
}

impl BlockKernel for Hight {
    fn encrypt(&self, block: &mut [u8]) {
        let (wk, sk) = (&self.wk, &self.sk);
        let mut x = load(block);
        x[0] = x[0].wrapping_add(wk[0]);
        x[2] ^= wk[1];
        x[4] = x[4].wrapping_add(wk[2]);
        x[6] ^= wk[3];

        for i in 0..32 {
            let k = &sk[4 * i..4 * i + 4];
            let n7 = x[7] ^ f0(x[6]).wrapping_add(k[3]);
            let n1 = x[1].wrapping_add(f1(x[0]) ^ k[0]);
            let n3 = x[3] ^ f0(x[2]).wrapping_add(k[1]);
            let n5 = x[5].wrapping_add(f1(x[4]) ^ k[2]);
            x = if i < 31 {
                [n7, x[0], n1, x[2], n3, x[4], n5, x[6]]
            } else {
                // last round has no byte rotation
                [x[0], n1, x[2], n3, x[4], n5, x[6], n7]
            };
        }

        x[0] = x[0].wrapping_add(wk[4]);
        x[2] ^= wk[5];
        x[4] = x[4].wrapping_add(wk[6]);
        x[6] ^= wk[7];
        store(block, x);
    }

    fn decrypt(&self, block: &mut [u8]) {
        let (wk, sk) = (&self.wk, &self.sk);
        let mut x = load(block);
        x[0] = x[0].wrapping_sub(wk[4]);
        x[2] ^= wk[5];
        x[4] = x[4].wrapping_sub(wk[6]);
        x[6] ^= wk[7];

        for i in (0..32).rev() {
            let k = &sk[4 * i..4 * i + 4];
            // undo the byte rotation to recover the round input layout
            let (o0, n1, o2, n3, o4, n5, o6, n7) = if i < 31 {
                (x[1], x[2], x[3], x[4], x[5], x[6], x[7], x[0])
            } else {
                (x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7])
            };
            x = [
                o0,
                n1.wrapping_sub(f1(o0) ^ k[0]),
                o2,
                n3 ^ f0(o2).wrapping_add(k[1]),
                o4,
                n5.wrapping_sub(f1(o4) ^ k[2]),
                o6,
                n7 ^ f0(o6).wrapping_add(k[3]),
            ];
        }

        x[0] = x[0].wrapping_sub(wk[0]);
        x[2] ^= wk[1];
        x[4] = x[4].wrapping_sub(wk[2]);
        x[6] ^= wk[3];
        store(block, x);
    }
}
