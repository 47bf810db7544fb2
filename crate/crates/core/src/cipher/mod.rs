//! The block cipher corpus used as the software workload.
//!
//! All ciphers are plain ECB block kernels: one block in, one block out. The
//! byte layout of blocks and keys follows each cipher's published test
//! vectors, so the hex strings found in those documents can be fed in as-is.

mod aes;
mod hight;
mod katan;
mod skipjack;
mod threeway;
mod xtea;

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CipherError {
    #[error("unknown cipher `{0}`")]
    UnknownCipher(String),
    #[error("bad key length: expected {expected} bytes, got {got}")]
    BadKeyLength { expected: usize, got: usize },
    #[error("bad block length: expected {expected} bytes, got {got}")]
    BadBlockLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CipherName {
    Xtea,
    Skipjack,
    ThreeWay,
    Katan32,
    Katan64,
    Hight,
    Aes128,
}

impl CipherName {
    pub const ALL: [CipherName; 7] = [
        CipherName::Xtea,
        CipherName::Skipjack,
        CipherName::ThreeWay,
        CipherName::Katan32,
        CipherName::Katan64,
        CipherName::Hight,
        CipherName::Aes128,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CipherName::Xtea => "xtea",
            CipherName::Skipjack => "skipjack",
            CipherName::ThreeWay => "threeway",
            CipherName::Katan32 => "katan32",
            CipherName::Katan64 => "katan64",
            CipherName::Hight => "hight",
            CipherName::Aes128 => "aes128",
        }
    }

    pub fn spec(self) -> BlockCipherSpec {
        let (block_bits, key_bits, rounds) = match self {
            CipherName::Xtea => (64, 128, 64),
            CipherName::Skipjack => (64, 80, 32),
            CipherName::ThreeWay => (96, 96, 11),
            CipherName::Katan32 => (32, 80, 254),
            CipherName::Katan64 => (64, 80, 254),
            CipherName::Hight => (64, 128, 32),
            CipherName::Aes128 => (128, 128, 10),
        };
        BlockCipherSpec {
            name: self,
            block_bits,
            key_bits,
            rounds,
        }
    }
}

impl fmt::Display for CipherName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CipherName {
    type Err = CipherError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CipherName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CipherError::UnknownCipher(s.to_string()))
    }
}

/// Block and key geometry of one cipher.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockCipherSpec {
    pub name: CipherName,
    pub block_bits: usize,
    pub key_bits: usize,
    pub rounds: usize,
}

impl BlockCipherSpec {
    pub fn block_bytes(&self) -> usize {
        self.block_bits / 8
    }

    pub fn key_bytes(&self) -> usize {
        self.key_bits / 8
    }
}

/// In-place single-block transform. Callers guarantee the block length.
trait BlockKernel: Send + Sync {
    fn encrypt(&self, block: &mut [u8]);
    fn decrypt(&self, block: &mut [u8]);
}

/// A keyed cipher, ready to process blocks.
pub struct CipherInstance {
    spec: BlockCipherSpec,
    kernel: Box<dyn BlockKernel>,
}

impl fmt::Debug for CipherInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CipherInstance")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}

/// Builds a cipher by name and expands its key schedule.
pub fn make_cipher(name: &str, key: &[u8]) -> Result<CipherInstance, CipherError> {
    CipherInstance::new(name.parse()?, key)
}

impl CipherInstance {
    pub fn new(name: CipherName, key: &[u8]) -> Result<Self, CipherError> {
        let spec = name.spec();
        if key.len() != spec.key_bytes() {
            return Err(CipherError::BadKeyLength {
                expected: spec.key_bytes(),
                got: key.len(),
            });
        }
        let kernel: Box<dyn BlockKernel> = match name {
            CipherName::Xtea => Box::new(xtea::Xtea::new(key)),
            CipherName::Skipjack => Box::new(skipjack::Skipjack::new(key)),
            CipherName::ThreeWay => Box::new(threeway::ThreeWay::new(key)),
            CipherName::Katan32 => Box::new(katan::Katan::new(katan::Variant::K32, key)),
            CipherName::Katan64 => Box::new(katan::Katan::new(katan::Variant::K64, key)),
            CipherName::Hight => Box::new(hight::Hight::new(key)),
            CipherName::Aes128 => Box::new(aes::Aes128::new(key)),
        };
        Ok(CipherInstance { spec, kernel })
    }

    pub fn spec(&self) -> &BlockCipherSpec {
        &self.spec
    }

    fn check(&self, len: usize) -> Result<(), CipherError> {
        if len == self.spec.block_bytes() {
            Ok(())
        } else {
            Err(CipherError::BadBlockLength {
                expected: self.spec.block_bytes(),
                got: len,
            })
        }
    }

    pub fn encrypt_in_place(&self, block: &mut [u8]) -> Result<(), CipherError> {
        self.check(block.len())?;
        self.kernel.encrypt(block);
        Ok(())
    }

    pub fn decrypt_in_place(&self, block: &mut [u8]) -> Result<(), CipherError> {
        self.check(block.len())?;
        self.kernel.decrypt(block);
        Ok(())
    }

    pub fn encrypt_block(&self, plaintext: &[u8]) -> Result<Vec<u8>, CipherError> {
        let mut b = plaintext.to_vec();
        self.encrypt_in_place(&mut b)?;
        Ok(b)
    }

    pub fn decrypt_block(&self, ciphertext: &[u8]) -> Result<Vec<u8>, CipherError> {
        let mut b = ciphertext.to_vec();
        self.decrypt_in_place(&mut b)?;
        Ok(b)
    }
}
