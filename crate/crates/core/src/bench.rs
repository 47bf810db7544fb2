//! Timing harness producing software execution-time and throughput
//! measurements for the cipher corpus.
//!
//! Each pass encrypts the whole workload block by block (ECB, no chaining)
//! with an already expanded key; key schedule cost is excluded. Timed passes
//! run one at a time process-wide.

use std::hint::black_box;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cipher::{CipherError, CipherInstance, CipherName};
use crate::indicator::{IndicatorError, Measurement, Source, SubjectRecord};

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Largest multiple of 48 bytes not above 1 MiB. 48 is the least common
/// multiple of every corpus block size (4, 8, 12 and 16 bytes).
pub const DEFAULT_WORKLOAD_BYTES: usize = 1_048_560;

static TIMING_LOCK: Mutex<()> = Mutex::new(());

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BenchError {
    #[error("invalid timing config: {0}")]
    InvalidConfig(String),
    #[error("clock error: {0}")]
    Clock(String),
    #[error("{cipher}: {source}")]
    Cipher {
        cipher: String,
        #[source]
        source: CipherError,
    },
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    #[default]
    Median,
    Min,
}

impl Aggregation {
    pub fn as_str(self) -> &'static str {
        match self {
            Aggregation::Median => "median",
            Aggregation::Min => "min",
        }
    }

    fn apply(self, samples: &mut [f64]) -> f64 {
        samples.sort_by(f64::total_cmp);
        match self {
            Aggregation::Min => samples[0],
            Aggregation::Median => {
                let n = samples.len();
                if n % 2 == 1 {
                    samples[n / 2]
                } else {
                    (samples[n / 2 - 1] + samples[n / 2]) / 2.0
                }
            }
        }
    }
}

impl FromStr for Aggregation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "median" => Ok(Aggregation::Median),
            "min" => Ok(Aggregation::Min),
            other => Err(format!("unknown aggregation `{other}` (median|min)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingConfig {
    pub warmup_iterations: u32,
    pub repetitions: u32,
    pub workload_bytes: usize,
    pub aggregation: Aggregation,
    /// Seed for the pseudo-random workload data.
    pub seed: u64,
}

impl Default for TimingConfig {
    fn default() -> Self {
        TimingConfig {
            warmup_iterations: 5,
            repetitions: 30,
            workload_bytes: DEFAULT_WORKLOAD_BYTES,
            aggregation: Aggregation::Median,
            seed: DEFAULT_SEED,
        }
    }
}

impl TimingConfig {
    pub fn validate(&self, block_bytes: usize) -> Result<(), BenchError> {
        if self.repetitions == 0 {
            return Err(BenchError::InvalidConfig("repetitions must be >= 1".into()));
        }
        if self.workload_bytes == 0 || !self.workload_bytes.is_multiple_of(block_bytes) {
            return Err(BenchError::InvalidConfig(format!(
                "workload_bytes {} is not a positive multiple of the {block_bytes}-byte block",
                self.workload_bytes
            )));
        }
        Ok(())
    }

    /// Provenance string attached to every measurement taken with this
    /// config. Identical for every cipher in a corpus run.
    pub fn detail(&self) -> String {
        format!(
            "host={}; warmup={}; repetitions={}; workload_bytes={}; agg={}; seed={:#x}; key_schedule=excluded",
            host(),
            self.warmup_iterations,
            self.repetitions,
            self.workload_bytes,
            self.aggregation.as_str(),
            self.seed
        )
    }
}

fn host() -> String {
    let name = std::fs::read_to_string("/etc/hostname")
        .ok()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .or_else(|| std::env::var("HOSTNAME").ok())
        .unwrap_or_else(|| "unknown".into());
    format!("{name}/{}-{}", std::env::consts::OS, std::env::consts::ARCH)
}

/// Seeded pseudo-random workload bytes.
pub fn workload(seed: u64, len: usize) -> Vec<u8> {
    let mut data = vec![0u8; len];
    ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut data);
    data
}

/// Fixed corpus key: bytes 0, 1, 2, ...
pub fn corpus_key(name: CipherName) -> Vec<u8> {
    (0..name.spec().key_bytes()).map(|i| i as u8).collect()
}

/// Wall-clock seconds of each timed pass, warmups excluded.
pub(crate) fn timed_passes(
    cipher: &CipherInstance,
    cfg: &TimingConfig,
    data: &[u8],
) -> Result<Vec<f64>, BenchError> {
    let block = cipher.spec().block_bytes();
    cfg.validate(block)?;
    if data.len() != cfg.workload_bytes {
        return Err(BenchError::InvalidConfig(format!(
            "workload data is {} bytes, config says {}",
            data.len(),
            cfg.workload_bytes
        )));
    }
    let cipher_err = |source| BenchError::Cipher {
        cipher: cipher.spec().name.to_string(),
        source,
    };

    let _exclusive = TIMING_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let mut buf = vec![0u8; data.len()];
    let mut samples = Vec::with_capacity(cfg.repetitions as usize);
    for pass in 0..cfg.warmup_iterations + cfg.repetitions {
        buf.copy_from_slice(data);
        let start = Instant::now();
        for chunk in buf.chunks_exact_mut(block) {
            cipher
                .encrypt_in_place(black_box(chunk))
                .map_err(cipher_err)?;
        }
        let elapsed = start.elapsed();
        black_box(&buf);
        if pass >= cfg.warmup_iterations {
            let secs = elapsed.as_secs_f64();
            if secs <= 0.0 {
                return Err(BenchError::Clock(
                    "monotonic clock did not advance over a timed pass".into(),
                ));
            }
            samples.push(secs);
        }
    }
    Ok(samples)
}

fn measure_with_data(
    cipher: &CipherInstance,
    cfg: &TimingConfig,
    data: &[u8],
    detail: &str,
) -> Result<(Measurement, Measurement), BenchError> {
    let mut samples = timed_passes(cipher, cfg, data)?;
    let et = cfg.aggregation.apply(&mut samples);
    let th = 8.0 * cfg.workload_bytes as f64 / et;
    Ok((
        Measurement::new("sw.et", et, Source::Measured, detail)?,
        Measurement::new("sw.th", th, Source::Measured, detail)?,
    ))
}

/// Times one cipher and returns `(sw.et, sw.th)`. `sw.th` is defined as
/// `8 * workload_bytes / sw.et`.
pub fn run_timing(
    cipher: &CipherInstance,
    cfg: &TimingConfig,
) -> Result<(Measurement, Measurement), BenchError> {
    let data = workload(cfg.seed, cfg.workload_bytes);
    measure_with_data(cipher, cfg, &data, &cfg.detail())
}

/// Measures each named cipher with the same config, key pattern and workload
/// bytes, one after another.
pub fn corpus_measure<S: AsRef<str>>(
    ciphers: &[S],
    cfg: &TimingConfig,
) -> Result<Vec<SubjectRecord>, BenchError> {
    let names = ciphers
        .iter()
        .map(|c| {
            c.as_ref()
                .parse::<CipherName>()
                .map_err(|source| BenchError::Cipher {
                    cipher: c.as_ref().to_string(),
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if names.is_empty() {
        return Ok(Vec::new());
    }
    for n in &names {
        cfg.validate(n.spec().block_bytes()).map_err(|e| match e {
            BenchError::InvalidConfig(msg) => BenchError::InvalidConfig(format!("{n}: {msg}")),
            other => other,
        })?;
    }

    let data = workload(cfg.seed, cfg.workload_bytes);
    let detail = cfg.detail();
    let mut records = Vec::with_capacity(names.len());
    for name in names {
        let cipher =
            CipherInstance::new(name, &corpus_key(name)).map_err(|source| BenchError::Cipher {
                cipher: name.to_string(),
                source,
            })?;
        let (et, th) = measure_with_data(&cipher, cfg, &data, &detail)?;
        records.push(SubjectRecord::new(name.as_str()).with(et)?.with(th)?);
    }
    Ok(records)
}
