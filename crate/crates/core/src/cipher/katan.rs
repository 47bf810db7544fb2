//! KATAN32/KATAN64: two NLFSRs, 254 rounds, 80-bit key.
//!
//! Blocks and keys are big-endian integers; bit `i` of that integer is bit
//! `i` of the cipher state. The plaintext's low bits fill L2, the high bits
//! L1. KATAN64 clocks its registers three times per round with the same round
//! key and irregular-update bit.

use super::BlockKernel;

const ROUNDS: usize = 254;

#[derive(Debug, Clone, Copy)]
pub(super) enum Variant {
    K32,
    K64,
}

struct Params {
    l1_len: u32,
    l2_len: u32,
    x: [u32; 5],
    y: [u32; 6],
    clocks: usize,
}

impl Variant {
    fn params(self) -> Params {
        match self {
            Variant::K32 => Params {
                l1_len: 13,
                l2_len: 19,
                x: [12, 7, 8, 5, 3],
                y: [18, 7, 12, 10, 8, 3],
                clocks: 1,
            },
            Variant::K64 => Params {
                l1_len: 25,
                l2_len: 39,
                x: [24, 15, 20, 11, 9],
                y: [38, 25, 33, 21, 14, 9],
                clocks: 3,
            },
        }
    }
}

pub(super) struct Katan {
    p: Params,
    block_bytes: usize,
    /// Two subkey bits per round: `(k_{2i}, k_{2i+1})`.
    round_keys: [(u64, u64); ROUNDS],
    ir: [u64; ROUNDS],
}

/// Irregular-update sequence: MSB-1 output of an 8-bit LFSR
/// (x^8 + x^7 + x^5 + x^3 + 1) started from all ones.
fn irregular_updates() -> [u64; ROUNDS] {
    let mut out = [0; ROUNDS];
    let mut s: u8 = 0xff;
    for bit in out.iter_mut() {
        *bit = ((s >> 6) & 1) as u64;
        let fb = ((s >> 7) ^ (s >> 6) ^ (s >> 4) ^ (s >> 2)) & 1;
        s = (s << 1) | fb;
    }
    out
}

impl Katan {
    pub(super) fn new(variant: Variant, key: &[u8]) -> Self {
        let p = variant.params();
        let mut k = [0u8; 2 * ROUNDS];
        for i in 0..80 {
            k[i] = (key[9 - i / 8] >> (i % 8)) & 1;
        }
        for i in 80..2 * ROUNDS {
            k[i] = k[i - 80] ^ k[i - 61] ^ k[i - 50] ^ k[i - 13];
        }
        let mut round_keys = [(0, 0); ROUNDS];
        for (i, rk) in round_keys.iter_mut().enumerate() {
            *rk = (k[2 * i] as u64, k[2 * i + 1] as u64);
        }
        let block_bytes = ((p.l1_len + p.l2_len) / 8) as usize;
        Katan {
            p,
            block_bytes,
            round_keys,
            ir: irregular_updates(),
        }
    }

    fn load(&self, block: &[u8]) -> (u64, u64) {
        let v = block.iter().fold(0u64, |acc, &b| (acc << 8) | b as u64);
        let l2 = v & mask(self.p.l2_len);
        let l1 = (v >> self.p.l2_len) & mask(self.p.l1_len);
        (l1, l2)
    }

    fn store(&self, block: &mut [u8], l1: u64, l2: u64) {
        let v = (l1 << self.p.l2_len) | l2;
        for (i, b) in block.iter_mut().enumerate() {
            *b = (v >> (8 * (self.block_bytes - 1 - i))) as u8;
        }
    }
}

fn mask(len: u32) -> u64 {
    (1u64 << len) - 1
}

#[inline]
fn bit(v: u64, i: u32) -> u64 {
    (v >> i) & 1
}

impl BlockKernel for Katan {
    fn encrypt(&self, block: &mut [u8]) {
        let Params {
            l1_len,
            l2_len,
            x,
            y,
            clocks,
        } = self.p;
        let (mut l1, mut l2) = self.load(block);
        for r in 0..ROUNDS {
            let (ka, kb) = self.round_keys[r];
            let ir = self.ir[r];
            for _ in 0..clocks {
                let fa = bit(l1, x[0])
                    ^ bit(l1, x[1])
                    ^ (bit(l1, x[2]) & bit(l1, x[3]))
                    ^ (bit(l1, x[4]) & ir)
                    ^ ka;
                let fb = bit(l2, y[0])
                    ^ bit(l2, y[1])
                    ^ (bit(l2, y[2]) & bit(l2, y[3]))
                    ^ (bit(l2, y[4]) & bit(l2, y[5]))
                    ^ kb;
                l1 = ((l1 << 1) | fb) & mask(l1_len);
                l2 = ((l2 << 1) | fa) & mask(l2_len);
            }
        }
        self.store(block, l1, l2);
    }

    fn decrypt(&self, block: &mut [u8]) {
        let Params {
            l1_len,
            l2_len,
            x,
            y,
            clocks,
        } = self.p;
        let (mut l1, mut l2) = self.load(block);
        for r in (0..ROUNDS).rev() {
            let (ka, kb) = self.round_keys[r];
            let ir = self.ir[r];
            for _ in 0..clocks {
                // the bits shifted in are fb (into L1) and fa (into L2); the
                // bits shifted out are the only unknowns and appear linearly
                let fb = l1 & 1;
                let fa = l2 & 1;
                let p1 = l1 >> 1;
                let p2 = l2 >> 1;
                let top1 = fa
                    ^ bit(p1, x[1])
                    ^ (bit(p1, x[2]) & bit(p1, x[3]))
                    ^ (bit(p1, x[4]) & ir)
                    ^ ka;
                let top2 = fb
                    ^ bit(p2, y[1])
                    ^ (bit(p2, y[2]) & bit(p2, y[3]))
                    ^ (bit(p2, y[4]) & bit(p2, y[5]))
                    ^ kb;
                l1 = p1 | (top1 << (l1_len - 1));
                l2 = p2 | (top2 << (l2_len - 1));
            }
        }
        self.store(block, l1, l2);
    }
}
