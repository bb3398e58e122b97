//! Command-line interface: argument parsing, input loading, dispatch,
//! and versioned JSON reports.
//!
//! Machine-readable output (JSON, schema `"1"`) goes to stdout or the
//! `--json` path; a short human summary goes to stderr. Errors print a
//! single `error: kind: detail` line and exit nonzero.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::closedform::{
    averaged_immanant, averaged_induced_immanant, matrix_element_integral_terms,
};
use crate::error::{Error, Result};
use crate::haar::{mc_average_df, MCEstimate};
use crate::matrixfn::{
    matrix_from_csv_str, matrix_from_json_str, Spectrum, SquareMatrix,
};
use crate::partitions::{all_partitions, Partition};
use crate::schur::{schur_at_ones, schur_at_spectrum};
use crate::symchar::{class_table, induced_character, irreducible_character, kostka, CycleType};
use crate::verify::{
    orthogonality_suite, perm_ineq_suite, phi_suite, verify_james_liebeck_avg,
    verify_monotonicity, Normalization, VerificationReport,
};

/// Environment variable read for the default Monte Carlo worker count.
pub const WORKERS_ENV: &str = "HAAR_IMMANANT_WORKERS";

const SCHEMA: &str = "1";

#[derive(Parser)]
#[command(
    name = "haar-immanants",
    version,
    about = "Immanants, their Haar-unitary conjugation averages, and verification suites"
)]
struct Cli {
    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List partitions of a given weight.
    Partitions {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_parts: Option<usize>,
    },
    /// Conjugacy classes and the character table of a symmetric group.
    Char {
        /// Symmetric group degree.
        #[arg(long)]
        n: usize,
        /// Include the full table (one row per partition).
        #[arg(long)]
        table: bool,
    },
    /// Evaluate a Schur polynomial at a spectrum or at the all-ones point.
    Schur {
        #[arg(long, value_parser = parse_partition)]
        eta: Partition,
        /// Eigenvalues, comma-separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        spectrum: Option<Vec<f64>>,
        /// Evaluate at `n` ones instead (exact integer).
        #[arg(long, value_name = "N", conflicts_with = "spectrum")]
        ones: Option<usize>,
    },
    /// Exact generalized matrix function d_f(A) of a concrete matrix.
    Immanant {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, value_parser = parse_partition)]
        eta: Partition,
        /// Use the induced permutation character instead of the
        /// irreducible one.
        #[arg(long)]
        induced: bool,
    },
    /// Closed-form conjugation average of an immanant.
    Avg {
        #[command(flatten)]
        input: MatrixOrSpectrum,
        #[arg(long, value_parser = parse_partition)]
        eta: Partition,
        #[arg(long)]
        induced: bool,
    },
    /// Closed-form averaged product of matrix elements along a
    /// permutation of the given cycle type.
    Integral {
        #[command(flatten)]
        input: MatrixOrSpectrum,
        #[arg(long, value_parser = parse_partition)]
        sigma: Partition,
    },
    /// Monte Carlo estimate of an averaged immanant.
    Mc {
        #[command(flatten)]
        input: MatrixOrSpectrum,
        #[arg(long, value_parser = parse_partition)]
        eta: Partition,
        #[arg(long)]
        induced: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to HAAR_IMMANANT_WORKERS or 1.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run a named verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Normalize random spectra to determinant or trace one.
        #[arg(long, value_enum, default_value_t = NormalizeArg::None)]
        normalize: NormalizeArg,
    },
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix file: JSON {"n", "rows"} or CSV for real matrices.
    #[arg(long, value_name = "PATH")]
    matrix: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MatrixOrSpectrum {
    /// Matrix file: JSON {"n", "rows"} or CSV for real matrices.
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,
    /// Eigenvalues, comma-separated; closed forms depend on the matrix
    /// only through these.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    spectrum: Option<Vec<f64>>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Monotonicity,
    #[value(name = "perm-ineq")]
    PermIneq,
    Phi,
    #[value(name = "james-liebeck")]
    JamesLiebeck,
    Theorem9,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormalizeArg {
    None,
    Det,
    Trace,
}

impl From<NormalizeArg> for Normalization {
    fn from(v: NormalizeArg) -> Self {
        match v {
            NormalizeArg::None => Normalization::None,
            NormalizeArg::Det => Normalization::DetOne,
            NormalizeArg::Trace => Normalization::TraceOne,
        }
    }
}

fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    let parts: std::result::Result<Vec<usize>, _> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect();
    Partition::new(parts?).map_err(|e| e.to_string())
}

/// Parses argv, dispatches, and reports. Returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let first_line = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("bad arguments")
                .trim_start_matches("error: ")
                .to_string();
            let _ = writeln!(stderr, "error: usage: {first_line}");
            return 2;
        }
    };
    match dispatch(&cli.command, stderr) {
        Ok(outcome) => {
            let rendered = serde_json::to_string_pretty(&outcome.report)
                .expect("reports are serializable");
            let sink_result = match &cli.json {
                Some(path) => std::fs::write(path, rendered + "\n"),
                None => writeln!(stdout, "{rendered}"),
            };
            if let Err(e) = sink_result {
                let _ = writeln!(stderr, "error: io: {e}");
                return 1;
            }
            if outcome.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

struct Outcome {
    report: Value,
    /// Set when a verification suite ran and did not fully pass.
    failed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            failed: false,
        }
    }
}

fn dispatch(command: &Command, stderr: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Partitions { m, max_parts } => {
            let parts = all_partitions(*m, *max_parts)?;
            let _ = writeln!(stderr, "{} partitions of {m}", parts.len());
            Ok(Outcome::ok(json!({
                "schema": SCHEMA,
                "command": "partitions",
                "m": m,
                "max_parts": max_parts,
                "count": parts.len(),
                "partitions": parts,
            })))
        }
        Command::Char { n, table } => {
            let classes = class_table(*n)?;
            let mut report = json!({
                "schema": SCHEMA,
                "command": "char",
                "m": n,
                "classes": classes.classes(),
                "sizes": classes.sizes(),
            });
            if *table {
                let mut rows = Vec::new();
                for eta in all_partitions(*n, None)? {
                    let chi = irreducible_character(&eta)?;
                    rows.push(json!({"eta": eta, "values": chi.values()}));
                }
                report["rows"] = Value::Array(rows);
            }
            let _ = writeln!(
                stderr,
                "degree {n}: {} conjugacy classes{}",
                classes.len(),
                if *table { ", full table" } else { "" }
            );
            Ok(Outcome::ok(report))
        }
        Command::Schur {
            eta,
            spectrum,
            ones,
        } => {
            let (value, formula) = match (spectrum, ones) {
                (Some(values), None) => {
                    let spec = Spectrum::from_reals(values)?;
                    (
                        complex_json(schur_at_spectrum(eta, &spec)?),
                        "frobenius",
                    )
                }
                (None, Some(n)) => (json!(schur_at_ones(eta, *n)?), "hook-content"),
                _ => {
                    return Err(Error::InvalidArgument(
                        "provide exactly one of --spectrum or --ones".into(),
                    ))
                }
            };
            let _ = writeln!(stderr, "s_{eta} = {value} ({formula})");
            Ok(Outcome::ok(json!({
                "schema": SCHEMA,
                "command": "schur",
                "eta": eta,
                "formula": formula,
                "value": value,
            })))
        }
        Command::Immanant {
            matrix,
            eta,
            induced,
        } => {
            let a = load_matrix(&matrix.matrix)?;
            let f = if *induced {
                induced_character(eta)?
            } else {
                irreducible_character(eta)?
            };
            let value = crate::matrixfn::matrix_function(&a, &f)?;
            let _ = writeln!(
                stderr,
                "d_{}{eta}({}) = {value}",
                if *induced { "[ind]" } else { "" },
                matrix.matrix.display()
            );
            Ok(Outcome::ok(json!({
                "schema": SCHEMA,
                "command": "immanant",
                "eta": eta,
                "induced": induced,
                "n": a.dim(),
                "value": complex_json(value),
            })))
        }
        Command::Avg {
            input,
            eta,
            induced,
        } => {
            let spec = load_spectrum(input)?;
            let report = if *induced {
                let value = averaged_induced_immanant(&spec, eta)?;
                let mut terms = Vec::new();
                for lambda in all_partitions(eta.weight(), None)? {
                    let mult = kostka(&lambda, eta)?;
                    if mult == 0 {
                        continue;
                    }
                    let avg = averaged_immanant(&spec, &lambda)?;
                    terms.push(json!({
                        "eta": lambda,
                        "multiplicity": mult,
                        "value": complex_json(avg.value),
                    }));
                }
                let _ = writeln!(stderr, "avg d_[{eta}] = {}", value.re);
                json!({
                    "schema": SCHEMA,
                    "command": "avg",
                    "eta": eta,
                    "induced": true,
                    "value": complex_json(value),
                    "terms": terms,
                    "spectrum": spectrum_json(&spec),
                })
            } else {
                let avg = averaged_immanant(&spec, eta)?;
                let _ = writeln!(stderr, "avg d_{eta} = {}", avg.value.re);
                json!({
                    "schema": SCHEMA,
                    "command": "avg",
                    "eta": eta,
                    "induced": false,
                    "value": complex_json(avg.value),
                    "ingredients": {
                        "chi_identity": avg.chi_identity,
                        "schur_at_spec": complex_json(avg.schur_at_spec),
                        "schur_at_ones": avg.schur_at_ones,
                        "rank_deficient": avg.rank_deficient,
                    },
                    "spectrum": spectrum_json(&spec),
                })
            };
            Ok(Outcome::ok(report))
        }
        Command::Integral { input, sigma } => {
            let spec = load_spectrum(input)?;
            let sigma = CycleType::new(sigma.clone());
            let (value, terms) = matrix_element_integral_terms(&spec, &sigma)?;
            let _ = writeln!(stderr, "integral over sigma of type {sigma} = {}", value.re);
            let terms: Vec<Value> = terms
                .iter()
                .map(|t| json!({"eta": t.eta, "value": complex_json(t.value)}))
                .collect();
            Ok(Outcome::ok(json!({
                "schema": SCHEMA,
                "command": "integral",
                "sigma": sigma,
                "m": sigma.degree(),
                "value": complex_json(value),
                "terms": terms,
                "spectrum": spectrum_json(&spec),
            })))
        }
        Command::Mc {
            input,
            eta,
            induced,
            samples,
            seed,
            workers,
        } => {
            let a = load_matrix_or_diagonal(input)?;
            let f = if *induced {
                induced_character(eta)?
            } else {
                irreducible_character(eta)?
            };
            let workers = workers.unwrap_or_else(default_workers);
            let est = mc_average_df(&a, &f, *samples, *seed, workers)?;
            let _ = writeln!(
                stderr,
                "mc mean = {} +- {} ({} samples, seed {seed}, {workers} workers)",
                est.mean.re, est.std_error, est.samples
            );
            Ok(Outcome::ok(mc_report(eta, *induced, workers, &est)))
        }
        Command::Verify {
            suite,
            n,
            trials,
            seed,
            normalize,
        } => {
            let _ = Normalization::from(*normalize);
            let report = match suite {
                Suite::Monotonicity => verify_monotonicity(*n, *trials, *seed)?,
                Suite::PermIneq => perm_ineq_suite(*n, *trials, *seed)?,
                Suite::Phi => phi_suite(*trials, *seed, None)?,
                Suite::JamesLiebeck => verify_james_liebeck_avg(*n, *trials, *seed)?,
                Suite::Theorem9 => orthogonality_suite(*n)?,
            };
            let pass = report.all_pass();
            let warnings = report.warnings();
            let _ = writeln!(
                stderr,
                "suite {}: {}/{} checks passed, worst margin {:.3e}{}",
                report.suite,
                report.pass_count,
                report.trials,
                report.worst_margin,
                if warnings > 0 {
                    format!(" ({warnings} passes within rounding of equality)")
                } else {
                    String::new()
                }
            );
            Ok(Outcome {
                report: verify_report_json(&report, pass),
                failed: !pass,
            })
        }
    }
}

fn mc_report(eta: &Partition, induced: bool, workers: usize, est: &MCEstimate) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "mc",
        "eta": eta,
        "induced": induced,
        "mean": complex_json(est.mean),
        "std_error": est.std_error,
        "std_error_im": est.std_error_im,
        "samples": est.samples,
        "seed": est.seed,
        "workers": workers,
    })
}

fn verify_report_json(report: &VerificationReport, pass: bool) -> Value {
    let mut value = serde_json::to_value(report).expect("reports are serializable");
    let obj = value.as_object_mut().expect("report is an object");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!("verify"));
    obj.insert("pass".into(), json!(pass));
    value
}

/// Complex values serialize as `[re, im]`; values that are real (up to
/// eigensolver/stream rounding) serialize as plain numbers.
fn complex_json(z: Complex64) -> Value {
    if z.im.abs() <= 1e-12 * (1.0 + z.re.abs()) {
        json!(z.re)
    } else {
        json!([z.re, z.im])
    }
}

fn spectrum_json(spec: &Spectrum) -> Value {
    Value::Array(spec.values().iter().map(|&z| complex_json(z)).collect())
}

fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or(1)
}

fn load_matrix(path: &Path) -> Result<SquareMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    if path.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("csv")) {
        matrix_from_csv_str(&text)
    } else {
        matrix_from_json_str(&text)
    }
}

fn load_matrix_or_diagonal(input: &MatrixOrSpectrum) -> Result<SquareMatrix> {
    match (&input.matrix, &input.spectrum) {
        (Some(path), None) => load_matrix(path),
        (None, Some(values)) => {
            let entries: Vec<Complex64> =
                values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            SquareMatrix::diagonal(&entries)
        }
        _ => Err(Error::InvalidArgument(
            "provide exactly one of --matrix or --spectrum".into(),
        )),
    }
}

/// For closed forms only the spectrum matters; matrices are reduced to
/// their (Hermitian) eigenvalues, spectra are taken verbatim.
fn load_spectrum(input: &MatrixOrSpectrum) -> Result<Spectrum> {
    match (&input.matrix, &input.spectrum) {
        (Some(path), None) => {
            let a = load_matrix(path)?;
            crate::matrixfn::hermitian_spectrum(&a)
        }
        (None, Some(values)) => Spectrum::from_reals(values),
        _ => Err(Error::InvalidArgument(
            "provide exactly one of --matrix or --spectrum".into(),
        )),
    }
}
