//! Monte Carlo BLER/BER estimation over an α-stable BPSK channel.
//!
//! Trial `t` draws its message and noise from a ChaCha8 stream selected by
//! `(seed, t)` alone, and counters are reduced in trial order, so a point's
//! result does not depend on the number of workers. Every decoder run at
//! the same seed sees the same messages and uniforms.

use grand_core::codes::BinaryCode;
use grand_core::decoders::{DecoderConfig, SoftBlock};
use grand_core::gf2::BitVector;
use grand_core::stable::{calibrate_gamma, LlrModel, StableParams, StableSampler};
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::bpsk_map;
use crate::decoder::{ChannelKind, DecoderKind};
use crate::error::SimError;
use crate::stats::wilson_interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StopRule {
    pub min_block_errors: u64,
    pub max_trials: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_block_errors: 100,
            max_trials: 1_000_000,
        }
    }
}

impl StopRule {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.min_block_errors == 0 {
            return Err(SimError::InvalidSpec("min_block_errors must be at least 1".into()));
        }
        if self.max_trials < self.min_block_errors {
            return Err(SimError::InvalidSpec(
                "max_trials must be at least min_block_errors".into(),
            ));
        }
        Ok(())
    }
}

/// One decoder over a list of equivalent-SNR points.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub decoder: DecoderKind,
    /// Budget and thresholds; `noise` and `llr_mode` are set per point.
    pub config: DecoderConfig,
    /// Stability index of the stable channel. Gaussian-channel decoders
    /// ignore it.
    pub alpha: f64,
    pub snr_points: Vec<f64>,
    pub stop: StopRule,
    pub seed: u64,
    pub workers: usize,
}

impl SweepSpec {
    pub fn new(decoder: DecoderKind, alpha: f64, snr_points: Vec<f64>) -> Self {
        Self {
            decoder,
            config: DecoderConfig::default(),
            alpha,
            snr_points,
            stop: StopRule::default(),
            seed: 0,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.snr_points.is_empty() {
            return Err(SimError::InvalidSpec("snr_points is empty".into()));
        }
        if self.snr_points.iter().any(|s| !s.is_finite()) {
            return Err(SimError::InvalidSpec("snr_points must be finite".into()));
        }
        if self.workers == 0 {
            return Err(SimError::InvalidSpec("workers must be at least 1".into()));
        }
        self.stop.validate()?;
        self.config.validate()?;
        Ok(())
    }
}

/// Counters and rates at one SNR.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlerPoint {
    pub snr_db: f64,
    pub gamma: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bit_errors: u64,
    pub bler: f64,
    pub ber: f64,
    pub mean_queries: f64,
    pub fallback_rate: f64,
    pub abandonment_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Message bits per block, the BER denominator per trial.
    pub message_bits: u64,
    pub total_queries: u64,
    /// Non-abandoned outputs that failed the membership test.
    pub codeword_violations: u64,
}

impl BlerPoint {
    pub const CSV_HEADER: [&'static str; 12] = [
        "snr_db",
        "gamma",
        "trials",
        "block_errors",
        "bit_errors",
        "bler",
        "ber",
        "mean_queries",
        "fallback_rate",
        "abandonment_rate",
        "ci_low",
        "ci_high",
    ];

    /// Fields in [`BlerPoint::CSV_HEADER`] order, shortest round-trip text.
    pub fn csv_fields(&self) -> [String; 12] {
        [
            self.snr_db.to_string(),
            self.gamma.to_string(),
            self.trials.to_string(),
            self.block_errors.to_string(),
            self.bit_errors.to_string(),
            self.bler.to_string(),
            self.ber.to_string(),
            self.mean_queries.to_string(),
            self.fallback_rate.to_string(),
            self.abandonment_rate.to_string(),
            self.ci_low.to_string(),
            self.ci_high.to_string(),
        ]
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    trials: u64,
    block_errors: u64,
    bit_errors: u64,
    queries: u64,
    fallbacks: u64,
    abandoned: u64,
    violations: u64,
}

#[derive(Debug, Clone, Copy)]
struct TrialResult {
    block_error: bool,
    bit_errors: u32,
    queries: u64,
    fallback: bool,
    abandoned: bool,
    violation: bool,
}

impl Tally {
    fn add(&mut self, r: &TrialResult) {
        self.trials += 1;
        self.block_errors += r.block_error as u64;
        self.bit_errors += r.bit_errors as u64;
        self.queries += r.queries;
        self.fallbacks += r.fallback as u64;
        self.abandoned += r.abandoned as u64;
        self.violations += r.violation as u64;
    }
}

struct TrialContext<'a> {
    code: &'a BinaryCode,
    decoder: DecoderKind,
    config: DecoderConfig,
    sampler: StableSampler,
    model: LlrModel,
    seed: u64,
}

/// RNG for trial `t` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform random message of `len` bits.
pub fn random_message<R: Rng + ?Sized>(len: usize, rng: &mut R) -> BitVector {
    let words = (0..len.div_ceil(64)).map(|_| rng.random::<u64>()).collect();
    BitVector::from_words(len, words)
}

impl TrialContext<'_> {
    fn run(&self, trial: u64) -> TrialResult {
        let mut rng = trial_rng(self.seed, trial);
        let message = random_message(self.code.message_len(), &mut rng);
        let sent = self.code.encode(&message).expect("message length matches the code");
        let soft: Vec<f64> = bpsk_map(&sent)
            .into_iter()
            .map(|x| x + self.sampler.sample(&mut rng))
            .collect();
        let block = SoftBlock::new(soft, &self.model);
        let out = self.decoder.decode(&block, self.code, &self.config);
        let block_error = out.codeword != sent;
        let bit_errors = if block_error {
            self.code.extract_message(&out.codeword).hamming_distance(&message) as u32
        } else {
            0
        };
        TrialResult {
            block_error,
            bit_errors,
            queries: out.queries,
            fallback: out.used_fallback,
            abandoned: out.abandoned,
            violation: !out.abandoned && !self.code.is_codeword(&out.codeword),
        }
    }
}

/// Channel noise for `decoder` at `snr_db` dB equivalent SNR.
pub fn channel_noise(decoder: DecoderKind, alpha: f64, snr_db: f64, rate: f64) -> Result<StableParams, SimError> {
    let a = match decoder.channel() {
        ChannelKind::Stable => alpha,
        ChannelKind::Gaussian => 2.0,
    };
    let gamma = calibrate_gamma(snr_db, a, rate)?;
    Ok(StableParams::symmetric(a, gamma)?)
}

/// Runs trials at one SNR until the stop rule fires.
pub fn run_point(code: &BinaryCode, spec: &SweepSpec, snr_db: f64) -> Result<BlerPoint, SimError> {
    spec.validate()?;
    let noise = channel_noise(spec.decoder, spec.alpha, snr_db, code.rate())?;
    let config = DecoderConfig {
        noise: Some(noise),
        llr_mode: spec.decoder.llr_mode(),
        ..spec.config.clone()
    };
    let ctx = TrialContext {
        code,
        decoder: spec.decoder,
        model: config.llr_model()?,
        config,
        sampler: StableSampler::new(&noise)?,
        seed: spec.seed,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(spec.workers).build()?;
    let batch = (32 * spec.workers as u64).max(64);
    let mut tally = Tally::default();
    'outer: while tally.trials < spec.stop.max_trials {
        let start = tally.trials;
        let end = (start + batch).min(spec.stop.max_trials);
        let results: Vec<TrialResult> = pool.install(|| (start..end).into_par_iter().map(|t| ctx.run(t)).collect());
        for r in &results {
            tally.add(r);
            if tally.block_errors >= spec.stop.min_block_errors {
                break 'outer;
            }
        }
    }
    Ok(finish(snr_db, noise.gamma(), code.message_len() as u64, &tally))
}

fn finish(snr_db: f64, gamma: f64, message_bits: u64, t: &Tally) -> BlerPoint {
    let n = t.trials as f64;
    let (ci_low, ci_high) = wilson_interval(t.block_errors, t.trials);
    debug_assert!(t.bit_errors <= message_bits * t.block_errors);
    BlerPoint {
        snr_db,
        gamma,
        trials: t.trials,
        block_errors: t.block_errors,
        bit_errors: t.bit_errors,
        bler: t.block_errors as f64 / n,
        ber: t.bit_errors as f64 / (n * message_bits as f64),
        mean_queries: t.queries as f64 / n,
        fallback_rate: t.fallbacks as f64 / n,
        abandonment_rate: t.abandoned as f64 / n,
        ci_low,
        ci_high,
        message_bits,
        total_queries: t.queries,
        codeword_violations: t.violations,
    }
}

/// [`run_point`] over every SNR in order. A failing point is recorded and the
/// sweep moves on; `on_point` sees each result as it completes.
pub fn sweep(
    code: &BinaryCode,
    spec: &SweepSpec,
    mut on_point: impl FnMut(&Result<BlerPoint, SimError>),
) -> Result<Vec<Result<BlerPoint, SimError>>, SimError> {
    spec.validate()?;
    let mut out = Vec::with_capacity(spec.snr_points.len());
    for &snr in &spec.snr_points {
        let r = run_point(code, spec, snr);
        on_point(&r);
        out.push(r);
    }
    Ok(out)
}

/// One cell of a δ-sensitivity surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityCell {
    pub delta: f64,
    pub point: BlerPoint,
}

/// Soft-threshold EDGE BER over `deltas` at each SNR of `spec`, row-major
/// by SNR. `spec.decoder` is replaced by `orbgrand-edge`. `deltas` must be
/// positive and increasing; `+inf` is allowed and erases nothing. `on_cell`
/// sees each cell as it completes.
pub fn delta_sensitivity(
    code: &BinaryCode,
    spec: &SweepSpec,
    deltas: &[f64],
    mut on_cell: impl FnMut(&SensitivityCell),
) -> Result<Vec<Vec<SensitivityCell>>, SimError> {
    if deltas.is_empty() || deltas.iter().any(|&d| !(d > 0.0)) || deltas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SimError::InvalidSpec(
            "delta grid must be positive and increasing".into(),
        ));
    }
    let mut base = spec.clone();
    base.decoder = DecoderKind::OrbgrandEdge;
    base.validate()?;
    let mut surface = Vec::with_capacity(base.snr_points.len());
    for &snr in &base.snr_points {
        let mut row = Vec::with_capacity(deltas.len());
        for &delta in deltas {
            let mut s = base.clone();
            s.config.delta = delta;
            let cell = SensitivityCell {
                delta,
                point: run_point(code, &s, snr)?,
            };
            on_cell(&cell);
            row.push(cell);
        }
        surface.push(row);
    }
    Ok(surface)
}
