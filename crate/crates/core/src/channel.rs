//! Monte-Carlo symbol error rates over an AWGN channel, and decode timing.
//!
//! Signal power is one (codewords are unit vectors) and each of the `dim`
//! coordinates gets independent noise of variance `σ²`, so
//! `SNR_dB = 10·log₁₀(1/(dim·σ²))`. An infinite SNR means no noise at all.
//!
//! Every trial owns its own random stream, keyed by the seed, the SNR position
//! and the trial number, so results do not depend on how trials are scheduled.
//! Two runs that differ only in the decoder see the same codewords and the same
//! noise.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::code::{build_tables, fmt17, CodeSpec, CodeTables, DEFAULT_ENUMERATION_CAP, F17};
use crate::decoder::{decode, DecodeConfig, MlDecoder};
use crate::error::{Error, Result};

/// Trials per SNR point must fit in the low 40 bits of the stream id.
pub const MAX_TRIALS: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    Suboptimal,
    SuboptimalRefined,
    Ml,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 3] = [DecoderKind::Suboptimal, DecoderKind::SuboptimalRefined, DecoderKind::Ml];

    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::Suboptimal => "suboptimal",
            DecoderKind::SuboptimalRefined => "suboptimal-refined",
            DecoderKind::Ml => "ml",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "suboptimal" => Ok(DecoderKind::Suboptimal),
            "suboptimal-refined" | "refined" => Ok(DecoderKind::SuboptimalRefined),
            "ml" => Ok(DecoderKind::Ml),
            _ => Err(Error::Domain(format!("unknown decoder {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub spec: CodeSpec,
    pub snr_db_list: Vec<f64>,
    pub trials_per_point: u64,
    pub seed: u64,
    pub decoder: DecoderKind,
    /// Leaves searched on each side by the refined decoder.
    pub breadth: usize,
}

impl SimConfig {
    pub fn new(spec: CodeSpec, snr_db_list: Vec<f64>, trials_per_point: u64, seed: u64, decoder: DecoderKind) -> Self {
        SimConfig { spec, snr_db_list, trials_per_point, seed, decoder, breadth: 1 }
    }

    fn validate(&self) -> Result<()> {
        if self.trials_per_point == 0 || self.trials_per_point >= MAX_TRIALS {
            return Err(Error::Domain(format!("trials per point must be in [1, 2^40), got {}", self.trials_per_point)));
        }
        if self.snr_db_list.len() >= 1 << 24 {
            return Err(Error::Domain("too many SNR points".into()));
        }
        if let Some(s) = self.snr_db_list.iter().find(|s| s.is_nan() || **s == f64::NEG_INFINITY) {
            return Err(Error::Domain(format!("invalid SNR {s}")));
        }
        Ok(())
    }
}

/// Per-coordinate noise standard deviation for an SNR in decibels.
pub fn noise_sigma(snr_db: f64, dim: usize) -> f64 {
    if snr_db == f64::INFINITY {
        return 0.0;
    }
    (1.0 / (dim as f64 * 10f64.powf(snr_db / 10.0))).sqrt()
}

/// The random stream of one trial.
pub fn trial_rng(seed: u64, snr_index: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((snr_index as u64) << 40) | trial);
    rng
}

/// Draws a uniform codeword index below `total`, then writes `dim` noise samples.
pub fn draw_trial(rng: &mut ChaCha8Rng, total: u128, sigma: f64, noise: &mut [f64]) -> u128 {
    let a = rng.random_range(0..total);
    for z in noise.iter_mut() {
        let g: f64 = rng.sample(StandardNormal);
        *z = sigma * g;
    }
    a
}

fn ser_f17<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    F17(*x).serialize(s)
}

fn de_f17<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    F17::deserialize(d).map(|x| x.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    /// `null` in JSON for the noiseless point.
    #[serde(serialize_with = "ser_f17", deserialize_with = "de_f17")]
    pub snr_db: f64,
    #[serde(serialize_with = "ser_f17", deserialize_with = "de_f17")]
    pub sigma: f64,
    pub trials: u64,
    pub errors: u64,
    #[serde(serialize_with = "ser_f17", deserialize_with = "de_f17")]
    pub ser: f64,
    #[serde(serialize_with = "ser_f17", deserialize_with = "de_f17")]
    pub stderr: f64,
    /// Trials with `‖z‖ < d/2` that the ML decoder got wrong. Always zero for a
    /// correct ML decoder; only checked when the ML decoder runs.
    pub ml_violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub spec: CodeSpec,
    pub cardinality: String,
    pub decoder: DecoderKind,
    pub seed: u64,
    pub rows: Vec<SimRow>,
    /// Wall-clock seconds per simulated word, noise generation included.
    #[serde(serialize_with = "ser_f17", deserialize_with = "de_f17")]
    pub seconds_per_word: f64,
}

impl SimReport {
    /// CSV with columns `snr_db,trials,errors,ser,stderr`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["snr_db", "trials", "errors", "ser", "stderr"])?;
        for r in &self.rows {
            let snr = if r.snr_db == f64::INFINITY { "inf".to_string() } else { fmt17(r.snr_db) };
            out.write_record([snr, r.trials.to_string(), r.errors.to_string(), fmt17(r.ser), fmt17(r.stderr)])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A decoder ready to run on many received words.
enum Prepared<'a> {
    Tree(&'a CodeTables, DecodeConfig),
    Ml(MlDecoder),
}

impl<'a> Prepared<'a> {
    fn new(tables: &'a CodeTables, kind: DecoderKind, breadth: usize) -> Result<Self> {
        Ok(match kind {
            DecoderKind::Suboptimal => Prepared::Tree(tables, DecodeConfig { breadth, refine: false }),
            DecoderKind::SuboptimalRefined => Prepared::Tree(tables, DecodeConfig { breadth, refine: true }),
            DecoderKind::Ml => Prepared::Ml(MlDecoder::new(tables, DEFAULT_ENUMERATION_CAP)?),
        })
    }

    fn decode(&self, y: &[f64]) -> Result<u128> {
        match self {
            Prepared::Tree(t, cfg) => Ok(decode(y, t, cfg)?.index),
            Prepared::Ml(ml) => Ok(ml.decode(y)),
        }
    }
}

/// Runs the simulation, building the code first.
pub fn simulate(cfg: &SimConfig) -> Result<SimReport> {
    let tables = build_tables(&cfg.spec)?;
    simulate_with(cfg, &tables)
}

/// Runs the simulation against prebuilt tables for `cfg.spec`.
pub fn simulate_with(cfg: &SimConfig, tables: &CodeTables) -> Result<SimReport> {
    cfg.validate()?;
    if tables.spec != cfg.spec {
        return Err(Error::Domain("tables were built for a different code".into()));
    }
    let decoder = Prepared::new(tables, cfg.decoder, cfg.breadth)?;
    let dim = cfg.spec.dim;
    let total = tables.len();
    let half_d = cfg.spec.dmin / 2.0;
    let check_ml = cfg.decoder == DecoderKind::Ml;

    let start = Instant::now();
    let mut rows = Vec::with_capacity(cfg.snr_db_list.len());
    for (si, &snr_db) in cfg.snr_db_list.iter().enumerate() {
        let sigma = noise_sigma(snr_db, dim);
        let (errors, ml_violations) = (0..cfg.trials_per_point)
            .into_par_iter()
            .map_init(
                || (vec![0.0; dim], vec![0.0; dim]),
                |(noise, y), t| -> Result<(u64, u64)> {
                    let mut rng = trial_rng(cfg.seed, si, t);
                    let a = draw_trial(&mut rng, total, sigma, noise);
                    tables.write_point(a, y)?;
                    for (yi, zi) in y.iter_mut().zip(noise.iter()) {
                        *yi += zi;
                    }
                    let wrong = decoder.decode(y)? != a;
                    let violated = check_ml && wrong && noise.iter().map(|z| z * z).sum::<f64>().sqrt() < half_d;
                    Ok((wrong as u64, violated as u64))
                },
            )
            .try_reduce(|| (0, 0), |x, y| Ok((x.0 + y.0, x.1 + y.1)))?;
        if ml_violations > 0 {
            log::error!("{ml_violations} ML errors with noise below d/2 at {snr_db} dB");
        }
        let trials = cfg.trials_per_point;
        let ser = errors as f64 / trials as f64;
        let stderr = (ser * (1.0 - ser) / trials as f64).sqrt();
        rows.push(SimRow { snr_db, sigma, trials, errors, ser, stderr, ml_violations });
    }
    let words = cfg.trials_per_point as f64 * cfg.snr_db_list.len() as f64;
    let seconds_per_word = if words > 0.0 { start.elapsed().as_secs_f64() / words } else { 0.0 };

    Ok(SimReport {
        spec: cfg.spec,
        cardinality: tables.cardinality().to_string(),
        decoder: cfg.decoder,
        seed: cfg.seed,
        rows,
        seconds_per_word,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingConfig {
    pub spec: CodeSpec,
    /// Noise level of the timed words. Low SNR exercises refinement.
    pub snr_db: f64,
    pub words: usize,
    /// The words are timed in this many batches, decoders interleaved per batch.
    pub batches: usize,
    pub seed: u64,
    pub breadth: usize,
}

impl TimingConfig {
    pub fn new(spec: CodeSpec, words: usize) -> Self {
        TimingConfig { spec, snr_db: 5.0, words, batches: 20, seed: 0, breadth: 1 }
    }
}

/// Per-word decode times in nanoseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecoderTiming {
    pub decoder: DecoderKind,
    pub mean_ns: f64,
    /// Median over batches of the per-word batch time.
    pub median_ns: f64,
    pub min_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingReport {
    pub spec: CodeSpec,
    pub words: usize,
    pub rows: Vec<DecoderTiming>,
}

impl TimingReport {
    pub fn get(&self, kind: DecoderKind) -> Option<&DecoderTiming> {
        self.rows.iter().find(|r| r.decoder == kind)
    }
}

/// Times the three decoders on the same noisy words, single-threaded.
pub fn timing_probe(cfg: &TimingConfig) -> Result<TimingReport> {
    let tables = build_tables(&cfg.spec)?;
    timing_probe_with(cfg, &tables)
}

pub fn timing_probe_with(cfg: &TimingConfig, tables: &CodeTables) -> Result<TimingReport> {
    if cfg.words == 0 || cfg.batches == 0 {
        return Err(Error::Domain("timing needs at least one word and one batch".into()));
    }
    let dim = cfg.spec.dim;
    let sigma = noise_sigma(cfg.snr_db, dim);
    let mut words = vec![0.0; cfg.words * dim];
    let mut noise = vec![0.0; dim];
    for (t, y) in words.chunks_exact_mut(dim).enumerate() {
        let mut rng = trial_rng(cfg.seed, 0, t as u64);
        let a = draw_trial(&mut rng, tables.len(), sigma, &mut noise);
        tables.write_point(a, y)?;
        for (yi, zi) in y.iter_mut().zip(&noise) {
            *yi += zi;
        }
    }

    let decoders = DecoderKind::ALL
        .iter()
        .map(|&k| Prepared::new(tables, k, cfg.breadth))
        .collect::<Result<Vec<_>>>()?;
    let batches = cfg.batches.min(cfg.words);
    let per_batch = cfg.words.div_ceil(batches);
    let mut samples: Vec<Vec<f64>> = vec![Vec::with_capacity(batches); decoders.len()];
    let mut totals = vec![0.0; decoders.len()];
    for (b, batch) in words.chunks(per_batch * dim).enumerate() {
        let n = batch.len() / dim;
        // Rotate the order so no decoder always runs first on a cold cache.
        for j in 0..decoders.len() {
            let i = (j + b) % decoders.len();
            let start = Instant::now();
            for y in batch.chunks_exact(dim) {
                std::hint::black_box(decoders[i].decode(std::hint::black_box(y))?);
            }
            let ns = start.elapsed().as_nanos() as f64;
            totals[i] += ns;
            samples[i].push(ns / n as f64);
        }
    }

    let rows = DecoderKind::ALL
        .iter()
        .zip(samples.iter_mut().zip(totals))
        .map(|(&decoder, (s, total))| {
            s.sort_by(f64::total_cmp);
            DecoderTiming { decoder, mean_ns: total / cfg.words as f64, median_ns: s[s.len() / 2], min_ns: s[0] }
        })
        .collect();
    Ok(TimingReport { spec: cfg.spec, words: cfg.words, rows })
}
