//! 3-Way: 96-bit block and key as three 32-bit words, 11 rounds.
//!
//! Byte strings are the big-endian words `a2 | a1 | a0`, which is how the
//! reference test vectors are printed. Decryption reuses the encryption round
//! with a transformed key and bit-reversed state.

use super::BlockKernel;

const ROUNDS: usize = 11;
const START_E: u32 = 0x0b0b;
const START_D: u32 = 0xb1b1;

type State = [u32; 3];

pub(super) struct ThreeWay {
    key: State,
    inv_key: State,
    rcon_e: [u32; ROUNDS + 1],
    rcon_d: [u32; ROUNDS + 1],
}

impl ThreeWay {
    pub(super) fn new(key: &[u8]) -> Self {
        let key = load(key);
        let mut inv_key = key;
        theta(&mut inv_key);
        mu(&mut inv_key);
        ThreeWay {
            key,
            inv_key,
            rcon_e: round_constants(START_E),
            rcon_d: round_constants(START_D),
        }
    }
}

fn round_constants(mut start: u32) -> [u32; ROUNDS + 1] {
    let mut out = [0; ROUNDS + 1];
    for c in out.iter_mut() {
        *c = start;
        start <<= 1;
        if start & 0x10000 != 0 {
            start ^= 0x11011;
        }
    }
    out
}

fn load(bytes: &[u8]) -> State {
    let w = |i: usize| u32::from_be_bytes(bytes[4 * i..4 * i + 4].try_into().unwrap());
    [w(2), w(1), w(0)]
}

fn store(bytes: &mut [u8], a: State) {
    for (i, w) in [a[2], a[1], a[0]].iter().enumerate() {
        bytes[4 * i..4 * i + 4].copy_from_slice(&w.to_be_bytes());
    }
}

/// Reverses the order of all 96 bits.
fn mu(a: &mut State) {
    *a = [
        a[2].reverse_bits(),
        a[1].reverse_bits(),
        a[0].reverse_bits(),
    ];
}

fn gamma(a: &mut State) {
    let [a0, a1, a2] = *a;
    *a = [a0 ^ (a1 | !a2), a1 ^ (a2 | !a0), a2 ^ (a0 | !a1)];
}

/// Linear mixing layer.
fn theta(a: &mut State) {
    let [a0, a1, a2] = *a;
    let b0 = a0
        ^ (a0 >> 16)
        ^ (a1 << 16)
        ^ (a1 >> 16)
        ^ (a2 << 16)
        ^ (a1 >> 24)
        ^ (a2 << 8)
        ^ (a2 >> 8)
        ^ (a0 << 24)
        ^ (a2 >> 16)
        ^ (a0 << 16)
        ^ (a2 >> 24)
        ^ (a0 << 8);
    let b1 = a1
        ^ (a1 >> 16)
        ^ (a2 << 16)
        ^ (a2 >> 16)
        ^ (a0 << 16)
        ^ (a2 >> 24)
        ^ (a0 << 8)
        ^ (a0 >> 8)
        ^ (a1 << 24)
        ^ (a0 >> 16)
        ^ (a1 << 16)
        ^ (a0 >> 24)
        ^ (a1 << 8);
    let b2 = a2
        ^ (a2 >> 16)
        ^ (a0 << 16)
        ^ (a0 >> 16)
        ^ (a1 << 16)
        ^ (a0 >> 24)
        ^ (a1 << 8)
        ^ (a1 >> 8)
        ^ (a2 << 24)
        ^ (a1 >> 16)
        ^ (a2 << 16)
        ^ (a1 >> 24)
        ^ (a2 << 8);
    *a = [b0, b1, b2];
}

fn pi_1(a: &mut State) {
    a[0] = a[0].rotate_right(10);
    a[2] = a[2].rotate_left(1);
}

fn pi_2(a: &mut State) {
    a[0] = a[0].rotate_left(1);
    a[2] = a[2].rotate_right(10);
}

fn rho(a: &mut State) {
    theta(a);
    pi_1(a);
    gamma(a);
    pi_2(a);
}

fn add_round_key(a: &mut State, k: &State, rcon: u32) {
    a[0] ^= k[0] ^ (rcon << 16);
    a[1] ^= k[1];
    a[2] ^= k[2] ^ rcon;
}

fn run(a: &mut State, k: &State, rcon: &[u32; ROUNDS + 1]) {
    for &c in &rcon[..ROUNDS] {
        add_round_key(a, k, c);
        rho(a);
    }
    add_round_key(a, k, rcon[ROUNDS]);
    theta(a);
}

impl BlockKernel for ThreeWay {
    fn encrypt(&self, block: &mut [u8]) {
        let mut a = load(block);
        run(&mut a, &self.key, &self.rcon_e);
        store(block, a);
    }

    fn decrypt(&self, block: &mut [u8]) {
        let mut a = load(block);
        mu(&mut a);
        run(&mut a, &self.inv_key, &self.rcon_d);
        mu(&mut a);
        store(block, a);
    }
}
