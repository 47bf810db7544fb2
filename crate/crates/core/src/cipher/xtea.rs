//! XTEA, 64 Feistel rounds (32 cycles). Block and key are big-endian 32-bit
//! words.

use super::BlockKernel;

const DELTA: u32 = 0x9E37_79B9;
const CYCLES: u32 = 32;

pub(super) struct Xtea {
    key: [u32; 4],
}

impl Xtea {
    pub(super) fn new(key: &[u8]) -> Self {
        let mut k = [0u32; 4];
        for (w, chunk) in k.iter_mut().zip(key.chunks_exact(4)) {
            *w = u32::from_be_bytes(chunk.try_into().unwrap());
        }
        Xtea { key: k }
    }
}

fn load(block: &[u8]) -> (u32, u32) {
    (
        u32::from_be_bytes(block[0..4].try_into().unwrap()),
        u32::from_be_bytes(block[4..8].try_into().unwrap()),
    )
}

fn store(block: &mut [u8], v0: u32, v1: u32) {
    block[0..4].copy_from_slice(&v0.to_be_bytes());
    block[4..8].copy_from_slice(&v1.to_be_bytes());
}

fn mix(v: u32) -> u32 {
    ((v << 4) ^ (v >> 5)).wrapping_add(v)
}

impl BlockKernel for Xtea {
    fn encrypt(&self, block: &mut [u8]) {
        let (mut v0, mut v1) = load(block);
        let mut sum = 0u32;
        for _ in 0..CYCLES {
            v0 = v0.wrapping_add(mix(v1) ^ sum.wrapping_add(self.key[(sum & 3) as usize]));
            sum = sum.wrapping_add(DELTA);
            v1 = v1.wrapping_add(mix(v0) ^ sum.wrapping_add(self.key[((sum >> 11) & 3) as usize]));
        }
        store(block, v0, v1);
    }

    fn decrypt(&self, block: &mut [u8]) {
        let (mut v0, mut v1) = load(block);
        let mut sum = DELTA.wrapping_mul(CYCLES);
        for _ in 0..CYCLES {
            v1 = v1.wrapping_sub(mix(v0) ^ sum.wrapping_add(self.key[((sum >> 11) & 3) as usize]));
            sum = sum.wrapping_sub(DELTA);
            v0 = v0.wrapping_sub(mix(v1) ^ sum.wrapping_add(self.key[(sum & 3) as usize]));
        }
        store(block, v0, v1);
    }
}
