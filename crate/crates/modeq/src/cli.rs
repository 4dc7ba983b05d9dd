//! The `modeq` command line.
//!
//! Exit codes: `classify` returns 0 for Equivalent, 1 for Inequivalent and 2
//! for Unsupported; `oracle` returns 0 when every cell passes and 1
//! otherwise. Usage errors exit with 3 and computation errors with 4.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coefficients::{DensityPair, SeriesSpec};
use crate::equivalence::{decide_with, known_tables, DecideOptions, TableName};
use crate::error::{Error, Result};
use crate::invariants::{invariant, InvariantKind};
use crate::oracle::checks::{run_check, Check, Grid};
use crate::pencils::{sample_level_curve, to_csv, to_svg, Level, PencilFamily, Window};
use crate::scalars::{fmt_rational, parse_rational, Rational};

pub const EXIT_USAGE: i32 = 3;
pub const EXIT_ERROR: i32 = 4;

fn q(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn level(s: &str) -> std::result::Result<Level, String> {
    s.parse::<Level>().map_err(|e| e.to_string())
}

fn kind(s: &str) -> std::result::Result<InvariantKind, String> {
    s.parse::<InvariantKind>().map_err(|e| e.to_string())
}

fn table(s: &str) -> std::result::Result<TableName, String> {
    s.parse::<TableName>().map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "modeq", version, about = "Exact equivalence classes of symbol quotient modules")]
pub struct Cli {
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether two modules with the same composition series are equivalent.
    Classify(ClassifyArgs),
    /// Evaluate invariants at one module.
    Invariants(InvariantsArgs),
    /// Sample level curves of a pencil as CSV or SVG.
    Pencil(PencilArgs),
    /// Cross-check the closed forms and the decider against the brute-force oracle.
    Oracle(OracleArgs),
    /// Regenerate classical classification tables.
    Tables(TablesArgs),
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub lambda1: Rational,
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub mu1: Rational,
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub lambda2: Rational,
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub mu2: Rational,
    /// Offset of the lowest density, `δ - k`.
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub n: Rational,
    /// Length of the series; implied by `--pattern` when omitted.
    #[arg(long)]
    pub l: Option<usize>,
    /// Lacunary pattern of retained offsets, e.g. `0,2,3,5`.
    #[arg(long, value_delimiter = ',')]
    pub pattern: Option<Vec<usize>>,
    /// Allow patterns whose classification is not settled.
    #[arg(long)]
    pub experimental: bool,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub lambda: Rational,
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub mu: Rational,
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub n: Rational,
    /// Subset of I,J,K,M,R,Itilde,Jtilde,Mtilde,Rtilde (default: all).
    #[arg(long, value_delimiter = ',', value_parser = kind)]
    pub kinds: Option<Vec<InvariantKind>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    #[value(name = "Rtilde", alias = "rtilde")]
    Rtilde,
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "M", alias = "m")]
    M,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Args, Debug)]
pub struct PencilArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub n5: Option<Rational>,
    #[arg(long, value_parser = q, allow_hyphen_values = true)]
    pub n6: Option<Rational>,
    /// Comma-separated levels; `inf` for the denominator curve.
    #[arg(long, value_delimiter = ',', value_parser = level, allow_hyphen_values = true, required = true)]
    pub levels: Vec<Level>,
    /// `x0,x1,y0,y1`.
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long = "out", value_enum, default_value = "csv")]
    pub format: Format,
    /// Sample columns and rows per axis.
    #[arg(long, default_value_t = 41)]
    pub resolution: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckArg {
    Cmz,
    Pq,
    Intertwiner,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridArg {
    Small,
    Full,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub check: CheckArg,
    #[arg(long, value_enum, default_value = "small")]
    pub grid: GridArg,
    #[arg(long, default_value_t = crate::oracle::DEFAULT_DEGREE)]
    pub degree: u32,
    #[arg(long = "gen-cap", default_value_t = crate::oracle::DEFAULT_GEN_CAP)]
    pub gen_cap: u32,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// One of DO97, GO96, LO99_l3, Ga00_D2, Ga00_D3 (default: all).
    #[arg(long, value_parser = table)]
    pub which: Option<TableName>,
}

/// Text to emit and the process exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

/// A failure before or during the computation.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidWindow(_) => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> std::result::Result<Output, Failure> {
    match &cli.command {
        Command::Classify(a) => classify(a),
        Command::Invariants(a) => invariants(a),
        Command::Pencil(a) => pencil(a),
        Command::Oracle(a) => oracle(a),
        Command::Tables(a) => tables(a),
    }
}

fn classify(a: &ClassifyArgs) -> std::result::Result<Output, Failure> {
    let spec = match (&a.pattern, a.l) {
        (Some(p), l) => {
            let spec = SeriesSpec::with_pattern(a.n.clone(), p.clone())?;
            if let Some(l) = l {
                if l != spec.l {
                    return Err(Failure::Usage(format!("--l {l} disagrees with pattern span {}", spec.l)));
                }
            }
            spec
        }
        (None, Some(l)) => SeriesSpec::new(a.n.clone(), l),
        (None, None) => return Err(Failure::Usage("one of --l or --pattern is required".into())),
    };
    let pa = DensityPair::new(a.lambda1.clone(), a.mu1.clone());
    let pb = DensityPair::new(a.lambda2.clone(), a.mu2.clone());
    let verdict = decide_with(&spec, &pa, &pb, DecideOptions { experimental: a.experimental })?;
    let mut v = to_value(&verdict);
    let obj = v.as_object_mut().expect("verdict is an object");
    obj.insert("params_a".into(), to_value(&pa));
    obj.insert("params_b".into(), to_value(&pb));
    obj.insert("gamma".into(), json!([fmt_rational(&pa.gamma()), fmt_rational(&pb.gamma())]));
    obj.insert("delta".into(), json!([fmt_rational(&pa.delta()), fmt_rational(&pb.delta())]));
    obj.insert("n".into(), json!(fmt_rational(&spec.n)));
    obj.insert("l".into(), json!(spec.l));
    obj.insert("pattern".into(), json!(spec.pattern));
    Ok(Output { text: pretty(&v), code: verdict.exit_code() })
}

fn invariants(a: &InvariantsArgs) -> std::result::Result<Output, Failure> {
    let p = DensityPair::new(a.lambda.clone(), a.mu.clone());
    let kinds = a.kinds.clone().unwrap_or_else(|| InvariantKind::NAMED.to_vec());
    let mut values = serde_json::Map::new();
    for k in kinds {
        let v = match invariant(k, &a.n, &p) {
            Ok(v) => to_value(&v),
            Err(e) => json!({ "error": e.to_string() }),
        };
        values.insert(k.to_string(), v);
    }
    let v = json!({
        "params": to_value(&p),
        "gamma": fmt_rational(&p.gamma()),
        "delta": fmt_rational(&p.delta()),
        "n": fmt_rational(&a.n),
        "invariants": values,
    });
    Ok(Output { text: pretty(&v), code: 0 })
}

fn pencil(a: &PencilArgs) -> std::result::Result<Output, Failure> {
    let family = match (a.family, &a.n5, &a.n6) {
        (FamilyArg::Rtilde, None, None) => PencilFamily::Rtilde,
        (FamilyArg::I, Some(n5), None) => PencilFamily::Ipencil(n5.clone()),
        (FamilyArg::M, None, Some(n6)) => PencilFamily::Mpencil(n6.clone()),
        (FamilyArg::Rtilde, ..) => return Err(Failure::Usage("Rtilde takes neither --n5 nor --n6".into())),
        (FamilyArg::I, ..) => return Err(Failure::Usage("family I needs --n5 and no --n6".into())),
        (FamilyArg::M, ..) => return Err(Failure::Usage("family M needs --n6 and no --n5".into())),
    };
    let family = family.validated()?;
    let window: Window = a.window.parse()?;
    let curves = a
        .levels
        .par_iter()
        .map(|l| sample_level_curve(&family, l, &window, a.resolution))
        .collect::<Result<Vec<_>>>()?;
    let text = match a.format {
        Format::Csv => to_csv(&family, &curves, &window)?,
        Format::Svg => to_svg(&family, &curves, &window)?,
    };
    Ok(Output { text, code: 0 })
}

fn oracle(a: &OracleArgs) -> std::result::Result<Output, Failure> {
    let check = match a.check {
        CheckArg::Cmz => Check::Cmz,
        CheckArg::Pq => Check::Pq,
        CheckArg::Intertwiner => Check::Intertwiner,
    };
    if check == Check::Cmz && (a.degree < 6 || a.gen_cap < 5) {
        return Err(Failure::Usage("gap-4 blocks need --degree ≥ 6 and --gen-cap ≥ 5".into()));
    }
    if a.gen_cap < 3 {
        return Err(Failure::Usage("--gen-cap must be at least 3".into()));
    }
    let grid = match a.grid {
        GridArg::Small => Grid::Small,
        GridArg::Full => Grid::Full,
    };
    let report = run_check(check, grid, a.degree, a.gen_cap);
    let code = if report.all_passed() { 0 } else { 1 };
    Ok(Output { text: pretty(&to_value(&report)), code })
}

fn tables(a: &TablesArgs) -> std::result::Result<Output, Failure> {
    let which: Vec<TableName> = match a.which {
        Some(t) => vec![t],
        None => TableName::ALL.to_vec(),
    };
    let mut out: BTreeMap<String, Value> = BTreeMap::new();
    for t in which {
        out.insert(t.to_string(), to_value(&known_tables(t)?));
    }
    let v = if out.len() == 1 { out.into_values().next().expect("one table") } else { to_value(&out) };
    Ok(Output { text: pretty(&v), code: 0 })
}

fn configure_threads() {
    if let Some(n) = std::env::var("MODEQ_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// [`run`] with explicit arguments (the first is the program name).
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(out) => {
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_ERROR;
                    }
                }
                None => print!("{}", out.text),
            }
            out.code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
