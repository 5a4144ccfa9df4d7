//! The `schf` command line. [`run`] parses arguments, writes data to `out` and a
//! one-line diagnostic to `err`, and returns the process exit code: 0 on success,
//! 1 when a size cap or packing bound stops the computation, 2 on bad arguments.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::channel::{simulate, timing_probe, DecoderKind, SimConfig, TimingConfig};
use crate::code::{build_tables, cardinality, fmt17, write_codebook_csv, CodeSpec, Variant, DEFAULT_ENUMERATION_CAP};
use crate::decoder::{decode, DecodeConfig, MlDecoder};
use crate::density::{asymptotic_cardinality, asymptotic_center_density, binary_rate, DensityReport};
use crate::error::{Error, Result};
use crate::reference::CARDINALITIES;

#[derive(Debug, Parser)]
#[command(name = "schf", version, about = "Spherical codes from Hopf foliations")]
struct Cli {
    /// Output format. Defaults to plain for single values and csv for sequences.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
struct CodeArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, allow_negative_numbers = true)]
    dmin: f64,
    #[arg(long, default_value = "standard")]
    variant: Variant,
}

impl CodeArgs {
    fn spec(&self) -> Result<CodeSpec> {
        CodeSpec::new(self.dim, self.dmin, self.variant)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the number of codewords.
    Card(CodeArgs),
    /// Write the code tables as JSON.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the codeword with a given index.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        index: BigUint,
    },
    /// Write the whole codebook as CSV.
    Enumerate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
    },
    /// Decode a received vector.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1)]
        breadth: usize,
        #[arg(long)]
        refine: bool,
        /// Exhaustive search instead of the foliation decoder.
        #[arg(long, conflicts_with = "refine")]
        ml: bool,
    },
    /// Print cardinality, density, center density and rate.
    Density(CodeArgs),
    /// Print the asymptotic center density in dimension 2^k.
    Asymptotic {
        #[arg(long)]
        k: u32,
        /// Also print the asymptotic cardinality at this distance.
        #[arg(long)]
        dmin: Option<f64>,
    },
    /// Cardinality and rate over a grid of distances.
    RateCurve {
        #[arg(long)]
        dim: usize,
        /// `a:b:steps`, `steps` evenly spaced distances from `a` to `b`.
        #[arg(long)]
        dmin_grid: String,
        #[arg(long, default_value = "standard")]
        variant: Variant,
        /// Append published values of other constructions in this dimension.
        #[arg(long)]
        with_references: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo symbol error rate over an AWGN channel.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated SNR values in dB; `inf` for a noiseless channel.
        #[arg(long, allow_hyphen_values = true)]
        snr: String,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "suboptimal")]
        decoder: DecoderKind,
        #[arg(long, default_value_t = 1)]
        breadth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean, median and fastest batch-mean decode time per word for the three decoders.
    Timing {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 10_000)]
        words: usize,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        snr: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) | Error::Infeasible(_) | Error::Io(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let fmt = cli.format;
    match cli.command {
        Command::Card(code) => {
            let m = cardinality(&code.spec()?)?;
            single(out, fmt, &[("M", m.to_string())])
        }
        Command::Build { code, out: path } => {
            let tables = build_tables(&code.spec()?)?;
            tables.write_json(BufWriter::new(File::create(path)?))
        }
        Command::Encode { code, index } => {
            let tables = build_tables(&code.spec()?)?;
            let a = index
                .to_u128()
                .filter(|&a| a < tables.len())
                .ok_or_else(|| Error::IndexOutOfRange { index: index.clone(), total: tables.cardinality() })?;
            let word = tables.encode(a)?;
            match fmt.unwrap_or(OutputFormat::Plain) {
                OutputFormat::Json => json(out, &serde_json::json!({ "index": a.to_string(), "coords": raw_list(&word.coords)? })),
                _ => Ok(writeln!(out, "{}", join17(&word.coords))?),
            }
        }
        Command::Enumerate { code, out: path, cap } => {
            let tables = build_tables(&code.spec()?)?;
            match path {
                Some(p) => write_codebook_csv(&tables, BufWriter::new(File::create(p)?), cap),
                None => write_codebook_csv(&tables, out, cap),
            }
        }
        Command::Decode { code, point, breadth, refine, ml } => {
            let y = parse_list(&point)?;
            let tables = build_tables(&code.spec()?)?;
            let r = if ml {
                MlDecoder::new(&tables, DEFAULT_ENUMERATION_CAP)?.decode_full(&y)?
            } else {
                decode(&y, &tables, &DecodeConfig { breadth, refine })?
            };
            single(out, fmt, &[("index", r.index.to_string()), ("residual", fmt17(r.residual))])
        }
        Command::Density(code) => {
            let spec = code.spec()?;
            let report = DensityReport::new(&cardinality(&spec)?, spec.dim as u32, spec.dmin)?;
            match fmt.unwrap_or(OutputFormat::Plain) {
                OutputFormat::Plain => Ok(writeln!(out, "{report}")?),
                OutputFormat::Json => json(out, &report),
                OutputFormat::Csv => single(
                    out,
                    fmt,
                    &[
                        ("M", report.cardinality.clone()),
                        ("dim", report.dim.to_string()),
                        ("dmin", fmt17(report.dmin)),
                        ("density", fmt17(report.density)),
                        ("center_density", fmt17(report.center_density)),
                        ("rate_per_dim", fmt17(report.rate_per_dim)),
                    ],
                ),
            }
        }
        Command::Asymptotic { k, dmin } => {
            let c = asymptotic_center_density(k)?;
            let m = dmin.map(|d| asymptotic_cardinality(k, d)).transpose()?;
            match fmt.unwrap_or(OutputFormat::Plain) {
                OutputFormat::Plain => {
                    writeln!(out, "{c} ≈ {}", c.value())?;
                    if let Some(m) = m {
                        writeln!(out, "M ≈ {}", fmt17(m))?;
                    }
                    Ok(())
                }
                _ => {
                    let mut fields = vec![("center_density", c.to_string()), ("value", fmt17(c.value()))];
                    if let Some(m) = m {
                        fields.push(("M", fmt17(m)));
                    }
                    single(out, fmt, &fields)
                }
            }
        }
        Command::RateCurve { dim, dmin_grid, variant, with_references, out: path } => {
            let rows = rate_curve(dim, &dmin_grid, variant, with_references)?;
            match path {
                Some(p) => write_rate_curve(&rows, fmt, with_references, &mut BufWriter::new(File::create(p)?)),
                None => write_rate_curve(&rows, fmt, with_references, out),
            }
        }
        Command::Simulate { code, snr, trials, seed, decoder, breadth, out: path } => {
            let mut cfg = SimConfig::new(code.spec()?, parse_list(&snr)?, trials, seed, decoder);
            cfg.breadth = breadth;
            let report = simulate(&cfg)?;
            let mut file;
            let w: &mut dyn Write = match path {
                Some(p) => {
                    file = BufWriter::new(File::create(p)?);
                    &mut file
                }
                None => out,
            };
            match fmt.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Json => json(w, &report),
                _ => report.write_csv(w),
            }
        }
        Command::Timing { code, words, snr, seed } => {
            let cfg = TimingConfig { snr_db: snr, seed, ..TimingConfig::new(code.spec()?, words) };
            let report = timing_probe(&cfg)?;
            match fmt.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Json => json(out, &report),
                _ => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["decoder", "mean_ns", "median_ns", "min_ns"])?;
                    for r in &report.rows {
                        w.write_record([r.decoder.to_string(), fmt17(r.mean_ns), fmt17(r.median_ns), fmt17(r.min_ns)])?;
                    }
                    Ok(w.flush()?)
                }
            }
        }
    }
}

/// One row of a rate curve. Published rows carry the construction name.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatePoint {
    pub series: String,
    pub dmin: f64,
    /// Cardinality; decimal for computed rows, as published otherwise.
    pub cardinality: String,
    pub rate: f64,
    pub published: bool,
}

/// Parses `a:b:steps` into `steps` evenly spaced values from `a` to `b`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(Error::Domain(format!("grid {s:?} is not of the form a:b:steps")));
    };
    let bad = || Error::Domain(format!("invalid grid {s:?}"));
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    match n {
        0 => Err(bad()),
        1 => Ok(vec![a]),
        _ => Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()),
    }
}

/// Parses a comma-separated list of reals; `inf` is accepted.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Domain(format!("invalid number {t:?}"))))
        .collect()
}

pub fn rate_curve(dim: usize, grid: &str, variant: Variant, with_references: bool) -> Result<Vec<RatePoint>> {
    let series = format!("schf-{}", if variant == Variant::Modified { "modified" } else { "standard" });
    let mut rows = Vec::new();
    for d in parse_grid(grid)? {
        let m = cardinality(&CodeSpec::new(dim, d, variant)?)?;
        rows.push(RatePoint {
            series: series.clone(),
            dmin: d,
            cardinality: m.to_string(),
            rate: binary_rate(&m, dim as u32),
            published: false,
        });
    }
    if with_references {
        for r in CARDINALITIES.iter().filter(|r| r.dim as usize == dim) {
            rows.push(RatePoint {
                series: format!("{}:{}", r.group, r.construction),
                dmin: r.dmin,
                cardinality: r.cardinality.to_string(),
                rate: r.cardinality.log2() / dim as f64,
                published: true,
            });
        }
    }
    Ok(rows)
}

fn write_rate_curve(rows: &[RatePoint], fmt: Option<OutputFormat>, labeled: bool, out: &mut dyn Write) -> Result<()> {
    if fmt == Some(OutputFormat::Json) {
        return json(out, &rows);
    }
    let mut w = csv::Writer::from_writer(out);
    if labeled {
        w.write_record(["series", "d", "M", "R", "source"])?;
    } else {
        w.write_record(["d", "M", "R"])?;
    }
    for r in rows {
        let common = [fmt17(r.dmin), r.cardinality.clone(), fmt17(r.rate)];
        if labeled {
            let source = if r.published { "published" } else { "computed" };
            w.write_record(std::iter::once(r.series.clone()).chain(common).chain([source.to_string()]))?;
        } else {
            w.write_record(common)?;
        }
    }
    Ok(w.flush()?)
}

fn join17(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt17(x)).collect::<Vec<_>>().join(",")
}

fn raw_list(xs: &[f64]) -> Result<serde_json::Value> {
    Ok(serde_json::from_str(&format!("[{}]", join17(xs)))?)
}

fn json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    Ok(writeln!(out)?)
}

/// Writes named scalar fields: one line of values for plain, header and row for
/// csv, an object for json.
fn single(out: &mut dyn Write, fmt: Option<OutputFormat>, fields: &[(&str, String)]) -> Result<()> {
    match fmt.unwrap_or(OutputFormat::Plain) {
        OutputFormat::Plain => {
            let values: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
            writeln!(out, "{}", values.join(" "))?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(fields.iter().map(|(k, _)| *k))?;
            w.write_record(fields.iter().map(|(_, v)| v.as_str()))?;
            w.flush()?;
        }
        OutputFormat::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                fields.iter().map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone()))).collect();
            json(out, &map)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("schf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn card() {
        assert_eq!(call(&["card", "--dim", "8", "--dmin", "0.5"]), (0, "2608\n".into(), String::new()));
        assert_eq!(call(&["card", "--dim", "4", "--dmin", "0.5", "--variant", "modified"]).1, "168\n");
    }

    #[test]
    fn index_out_of_range() {
        let (code, out, err) = call(&["encode", "--dim", "4", "--dmin", "1", "--index", "16"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert_eq!(err.trim(), "error: index out of range [0,16)");
        let (code, _, _) = call(&["encode", "--dim", "4", "--dmin", "1", "--index", "1000000000000000000000000000000000000000000"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn asymptotic() {
        let (code, out, _) = call(&["asymptotic", "--k", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("1/96 ≈ 0.010416"), "{out}");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["card", "--dim", "6", "--dmin", "0.5"]).0, 2);
        assert_eq!(call(&["card", "--dim", "4", "--dmin", "2.5"]).0, 2);
        assert_eq!(call(&["card", "--dim", "4"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn resource_errors_exit_1() {
        let (code, _, err) = call(&["enumerate", "--dim", "8", "--dmin", "0.5", "--cap", "100"]);
        assert_eq!(code, 1);
        assert!(err.contains("cap"));
    }

    #[test]
    fn grids_and_lists() {
        assert_eq!(parse_grid("0.5:1:3").unwrap(), vec![0.5, 0.75, 1.0]);
        assert!(parse_grid("0.5:1").is_err());
        assert!(parse_grid("0.5:1:0").is_err());
        assert_eq!(parse_list("inf, 3,-1.5").unwrap(), vec![f64::INFINITY, 3.0, -1.5]);
    }

    #[test]
    fn encode_decode() {
        let (_, word, _) = call(&["encode", "--dim", "4", "--dmin", "0.5", "--index", "77"]);
        let (code, out, _) = call(&["decode", "--dim", "4", "--dmin", "0.5", "--point", word.trim(), "--refine"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("77 "));
    }
}
