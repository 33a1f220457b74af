//! Batch front end: reads distributions and series as JSON, runs the
//! transforms, and emits JSON (canonical, byte-stable) or aligned text.
//!
//! Exit codes: 0 success, 2 input error, 3 internal invariant violation,
//! 4 verification failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use freeconv::freeprob::Distribution;
use freeconv::series::{NcSeries, OneVarSeries};
use freeconv::verify::{self, Report, Suite};
use freeconv::{ratio, Error};

#[derive(Parser)]
#[command(
    name = "freeconv",
    about = "Exact-arithmetic free multiplicative convolution toolbox",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Free cumulants of a distribution (moment file in, series file out).
    Cumulants(IoArgs),
    /// Moments of a cumulant series (series file in, distribution out).
    Moments(IoArgs),
    /// Free multiplicative convolution of two distributions.
    Boxtimes(BinaryArgs),
    /// Chain-sum transform of a normalized distribution.
    Ls(IoArgs),
    /// One-variable S-transform of a normalized distribution.
    S(IoArgs),
    /// Inverse under free multiplicative convolution.
    Inverse(IoArgs),
    /// Run an identity suite and print the report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct IoArgs {
    /// Input JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Truncate the input to this degree before computing.
    #[arg(long)]
    degree: Option<usize>,
    /// Require this alphabet size in the input.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Render rationals as fixed-precision decimals (text format only).
    #[arg(long)]
    decimal: bool,
}

#[derive(Args)]
struct BinaryArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Second input JSON file.
    #[arg(long = "in2")]
    input2: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    decimal: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which identity suite to run.
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// Size/degree parameter of the suite; per-suite default when
    /// omitted, clamped to each suite's supported range.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        format!("unknown suite {s:?}; expected lattice, hopf, ls-oracle, sym or all")
    })
}

enum CliError {
    Input(String),
    Invariant(String),
    VerificationFailed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Domain(m) => CliError::Input(format!("domain error: {m}")),
            Error::Parse(m) => CliError::Input(format!("parse error: {m}")),
            Error::Invariant(m) => CliError::Invariant(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::VerificationFailed) => ExitCode::from(4),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Cumulants(args) => {
            let d = load_distribution(&args.input, args.degree, args.k)?;
            let r = d.r_transform().clone();
            emit(&args, &r, || render_series_text(&r, args.decimal))
        }
        Command::Moments(args) => {
            let r: NcSeries = load_json(&args.input)?;
            let r = maybe_truncate_series(r, args.degree)?;
            check_k(r.alphabet_size(), args.k)?;
            let d = Distribution::from_r_transform(&r).map_err(CliError::from)?;
            emit(&args, &d, || render_distribution_text(&d, args.decimal))
        }
        Command::Boxtimes(args) => {
            let a = load_distribution(&args.input, args.degree, args.k)?;
            let b = load_distribution(&args.input2, args.degree, args.k)?;
            let prod = a.boxtimes(&b).map_err(CliError::from)?;
            let io = IoArgs {
                input: args.input,
                out: args.out,
                degree: None,
                k: None,
                format: args.format,
                decimal: args.decimal,
            };
            emit(&io, &prod, || render_distribution_text(&prod, args.decimal))
        }
        Command::Ls(args) => {
            let d = load_distribution(&args.input, args.degree, args.k)?;
            let ls = d.ls_transform().map_err(CliError::from)?.clone();
            emit(&args, &ls, || render_series_text(&ls, args.decimal))
        }
        Command::S(args) => {
            let d = load_distribution(&args.input, args.degree, args.k)?;
            let s = d.s_transform().map_err(CliError::from)?.clone();
            emit(&args, &s, || render_onevar_text(&s, args.decimal))
        }
        Command::Inverse(args) => {
            let d = load_distribution(&args.input, args.degree, args.k)?;
            let inv = d.boxtimes_inverse().map_err(CliError::from)?;
            emit(&args, &inv, || render_distribution_text(&inv, args.decimal))
        }
        Command::Verify(args) => {
            let report = verify::run_suite(args.suite, args.degree).map_err(CliError::from)?;
            let rendered = match args.format {
                Format::Json => to_canonical_json(&report)?,
                Format::Text => render_report_text(&report),
            };
            write_output(args.out.as_deref(), &rendered)?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

fn load_distribution(
    path: &Path,
    degree: Option<usize>,
    k: Option<usize>,
) -> Result<Distribution, CliError> {
    let d: Distribution = load_json(path)?;
    check_k(d.alphabet_size(), k)?;
    match degree {
        Some(n) if n != d.degree() => d.truncated(n).map_err(CliError::from),
        _ => Ok(d),
    }
}

fn maybe_truncate_series(r: NcSeries, degree: Option<usize>) -> Result<NcSeries, CliError> {
    match degree {
        Some(n) if n != r.degree() => r.truncated(n).map_err(CliError::from),
        _ => Ok(r),
    }
}

fn check_k(actual: usize, expected: Option<usize>) -> Result<(), CliError> {
    match expected {
        Some(k) if k != actual => Err(CliError::Input(format!(
            "input has alphabet size {actual}, expected {k}"
        ))),
        _ => Ok(()),
    }
}

fn emit<T: serde::Serialize>(
    args: &IoArgs,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    let rendered = match args.format {
        Format::Json => to_canonical_json(value)?,
        Format::Text => text(),
    };
    write_output(args.out.as_deref(), &rendered)
}

fn to_canonical_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Invariant(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn value_cell(v: &ratio::BigRational, decimal: bool) -> String {
    if decimal {
        ratio::to_decimal(v, 12)
    } else {
        ratio::to_string(v)
    }
}

fn render_series_text(r: &NcSeries, decimal: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# series  k={}  degree={}",
        r.alphabet_size(),
        r.degree()
    );
    let width = r
        .coeffs()
        .keys()
        .map(|w| w.to_string().len())
        .max()
        .unwrap_or(4);
    for (w, v) in r.coeffs() {
        let _ = writeln!(out, "{:<width$}  {}", w.to_string(), value_cell(v, decimal));
    }
    out
}

fn render_distribution_text(d: &Distribution, decimal: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# distribution  k={}  degree={}",
        d.alphabet_size(),
        d.degree()
    );
    let width = d
        .moments()
        .keys()
        .map(|w| w.to_string().len())
        .max()
        .unwrap_or(4);
    for (w, v) in d.moments() {
        let _ = writeln!(out, "{:<width$}  {}", w.to_string(), value_cell(v, decimal));
    }
    out
}

fn render_onevar_text(s: &OneVarSeries, decimal: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# series  degree={}", s.degree());
    for (i, v) in s.coeffs().iter().enumerate() {
        let _ = writeln!(out, "z^{i:<4} {}", value_cell(v, decimal));
    }
    out
}

fn render_report_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# suite {}", report.suite);
    for c in &report.checks {
        let _ = writeln!(
            out,
            "{} {:<36} {} [{}]",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail,
            c.anchor
        );
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(out, "# {} checks, {} failed", report.checks.len(), failed);
    out
}
