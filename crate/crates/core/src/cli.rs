//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::bounds;
use crate::decoder::{decode, AssignmentStrategy, ReceivedWord, RepeatedCode};
use crate::error::{usage, Error, Result};
use crate::galois::FieldDescriptor;
use crate::polynomial::UniPoly;
use crate::rscode::{CodeDescriptor, EvalPoints};
use crate::simulator::{
    compare_strategies, inject_errors, render_csv, render_ratios, render_text, trial_rng, with_threads, ErrorModel,
    ErrorValues, MessageMode, TrialConfig,
};
use crate::tables;

/// Exit status for a decode that returns an empty list.
pub const EXIT_EMPTY_LIST: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "repcode", version, about = "List decoding of repeated Reed-Solomon codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Encode a message; optionally add random errors.
    Encode(EncodeArgs),
    /// Decode a received word read from a file.
    Decode(DecodeArgs),
    /// Run Monte-Carlo trials.
    Simulate(SimulateArgs),
    /// Print the closed-form error bounds.
    Bounds(BoundsArgs),
    /// Regenerate one of the built-in experiment tables.
    Table(TableArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Count,
    Threshold,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ValuesArg {
    #[default]
    Nonzero,
    Uniform,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CodeArgs {
    /// TOML file; its entries override the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Field as "p^m" or its order; defaults to the smallest GF(2^m) with more than n elements.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of repetitions.
    #[arg(long)]
    pub l: Option<usize>,
    /// Explicit evaluation points as field indices; default is consecutive powers of a primitive element.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub points: Vec<u32>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct StrategyArgs {
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyKind>,
    /// Threshold for the threshold strategy; defaults to floor(l/2) + 1.
    #[arg(long)]
    pub b: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Message coefficients as field indices, lowest degree first.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub message: Vec<u32>,
    /// Add this many random errors.
    #[arg(long)]
    pub tau: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub distinct_column_values: bool,
    #[arg(long, value_enum, default_value_t)]
    pub error_values: ValuesArg,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub strategy: StrategyArgs,
    /// Received word: whitespace-separated symbol indices, l rows of n.
    #[arg(long)]
    pub input: PathBuf,
    /// Also print the multiplicities and interpolation diagnostics.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub strategy: StrategyArgs,
    /// Error counts, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub tau: Vec<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub distinct_column_values: bool,
    #[arg(long, value_enum, default_value_t)]
    pub error_values: ValuesArg,
    #[arg(long)]
    pub random_message: bool,
    /// Run count and both thresholds and report decode-time ratios.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub id: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t)]
    pub error_values: ValuesArg,
}

/// Config file entries; any present entry replaces the matching flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub field: Option<FieldEntry>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub eval_points: Option<EvalPoints>,
    pub strategy: Option<StrategyKind>,
    pub b: Option<usize>,
    pub tau: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub distinct_column_values: Option<bool>,
    pub error_values: Option<ErrorValues>,
    pub message: Option<MessageMode>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldEntry {
    Text(String),
    Full(FieldDescriptor),
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

struct Resolved {
    code: RepeatedCode,
    descriptor: CodeDescriptor,
    file: FileConfig,
}

fn resolve_code(args: &CodeArgs) -> Result<Resolved> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let n = file.n.or(args.n).ok_or_else(|| Error::Usage("--n is required".into()))?;
    let k = file.k.or(args.k).ok_or_else(|| Error::Usage("--k is required".into()))?;
    let l = file.l.or(args.l).unwrap_or(1);
    let field = match (&file.field, &args.field) {
        (Some(FieldEntry::Full(d)), _) => d.clone(),
        (Some(FieldEntry::Text(s)), _) => FieldDescriptor::parse(s)?,
        (None, Some(s)) => FieldDescriptor::parse(s)?,
        (None, None) => {
            let m = (1..=16).find(|&m| (1usize << m) > n).ok_or_else(|| Error::Usage(format!("n = {n} too large")))?;
            FieldDescriptor { p: 2, m, modulus: None }
        }
    };
    let descriptor = CodeDescriptor {
        field,
        n,
        k,
        eval_points: match (&file.eval_points, args.points.is_empty()) {
            (Some(p), _) => p.clone(),
            (None, false) => EvalPoints::Explicit(args.points.clone()),
            (None, true) => EvalPoints::default(),
        },
    };
    let code = RepeatedCode::new(descriptor.build()?, l)?;
    Ok(Resolved { code, descriptor, file })
}

fn resolve_strategy(args: &StrategyArgs, file: &FileConfig, l: usize) -> Result<AssignmentStrategy> {
    let kind = file.strategy.or(args.strategy).unwrap_or(StrategyKind::Count);
    let b = file.b.or(args.b);
    let s = match kind {
        StrategyKind::Count => {
            if b.is_some() {
                return usage("--b only applies to the threshold strategy");
            }
            AssignmentStrategy::Count
        }
        StrategyKind::Threshold => AssignmentStrategy::Threshold { b: b.unwrap_or(l / 2 + 1) },
    };
    s.validate(l)?;
    Ok(s)
}

fn values(v: ValuesArg) -> ErrorValues {
    match v {
        ValuesArg::Nonzero => ErrorValues::Nonzero,
        ValuesArg::Uniform => ErrorValues::Uniform,
    }
}

fn require_seed(seed: Option<u64>) -> Result<u64> {
    seed.ok_or_else(|| Error::Usage("randomized commands need an explicit --seed".into()))
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            write!(out, "{e}").map_err(io)?;
            return Ok(0);
        }
        Err(e) => return usage(e.to_string()),
    };
    execute(cli.command, out)
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Encode(a) => cmd_encode(a, out),
        Command::Decode(a) => cmd_decode(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Table(a) => cmd_table(a, out),
    }
    .and_then(|code| {
        out.flush().map_err(io)?;
        Ok(code)
    })
}

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("write failed: {e}"))
}

fn cmd_encode(a: EncodeArgs, out: &mut dyn Write) -> Result<i32> {
    let r = resolve_code(&a.code)?;
    let field = r.code.field();
    let message = UniPoly::from_indices(field, &a.message)?;
    let sent = r.code.encode(&message)?;
    let l = r.code.repetitions();
    let n = r.code.inner().n();
    let word = match a.tau.or(r.file.tau.as_ref().and_then(|t| t.first().copied())) {
        None => ReceivedWord::new(l, n, sent.0)?,
        Some(tau) => {
            let seed = require_seed(r.file.seed.or(a.seed))?;
            let model = ErrorModel {
                distinct_column_values: r.file.distinct_column_values.unwrap_or(a.distinct_column_values),
                values: r.file.error_values.unwrap_or(values(a.error_values)),
            };
            inject_errors(field, &sent, l, tau, model, &mut trial_rng(seed, 0))?.0
        }
    };
    write!(out, "{word}").map_err(io)?;
    Ok(0)
}

fn cmd_decode(a: DecodeArgs, out: &mut dyn Write) -> Result<i32> {
    let r = resolve_code(&a.code)?;
    let strategy = resolve_strategy(&a.strategy, &r.file, r.code.repetitions())?;
    let text = std::fs::read_to_string(&a.input).map_err(|e| Error::Parse(format!("{}: {e}", a.input.display())))?;
    let word = ReceivedWord::parse(&text, r.code.field(), r.code.repetitions(), r.code.inner().n())?;
    let result = decode(&r.code, &word, strategy)?;
    let d = &result.diagnostics;
    writeln!(
        out,
        "code: [{}, {}] over {} repeated {} times; strategy {}",
        r.code.inner().n(),
        r.code.dimension(),
        r.code.field(),
        r.code.repetitions(),
        strategy
    )
    .map_err(io)?;
    if a.verbose {
        writeln!(out, "multiplicities (position: value^m):").map_err(io)?;
        for i in 0..result.multiplicities.n() {
            let col: Vec<String> = result.multiplicities.column(i).iter().map(|(b, m)| format!("{b}^{m}")).collect();
            let shown = if col.is_empty() { "erased".to_string() } else { col.join(" ") };
            writeln!(out, "  {}: {}", i + 1, shown).map_err(io)?;
        }
        writeln!(out, "conditions: {}", d.conditions).map_err(io)?;
        writeln!(out, "N = {}", d.budget).map_err(io)?;
        writeln!(out, "C = {}", d.weighted_cap).map_err(io)?;
        writeln!(out, "L = {}", d.y_cap).map_err(io)?;
        writeln!(
            out,
            "leading monomial: x^{}*y^{} (weighted degree {})",
            d.leading_monomial.0, d.leading_monomial.1, d.weighted_degree
        )
        .map_err(io)?;
        writeln!(out, "erasures: {}", d.erasures).map_err(io)?;
    }
    writeln!(out, "candidates: {}", result.len()).map_err(io)?;
    for (i, c) in result.candidates.iter().enumerate() {
        let msg: Vec<String> = (0..r.code.dimension()).map(|j| c.message.coeff(j).to_string()).collect();
        let word: Vec<String> = c.inner.symbols().iter().map(|s| s.to_string()).collect();
        writeln!(
            out,
            "#{} distance {} score {} message [{}] codeword [{}]",
            i + 1,
            c.distance,
            c.score,
            msg.join(" "),
            word.join(" ")
        )
        .map_err(io)?;
    }
    Ok(if result.is_empty() { EXIT_EMPTY_LIST } else { 0 })
}

fn cmd_simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let r = resolve_code(&a.code)?;
    let l = r.code.repetitions();
    let f = &r.file;
    let taus = f.tau.clone().unwrap_or_else(|| a.tau.clone());
    if taus.is_empty() {
        return usage("--tau is required");
    }
    let seed = require_seed(f.seed.or(a.seed))?;
    let trials = f.trials.or(a.trials).unwrap_or(100);
    let threads = f.threads.or(a.threads);
    let format = f.format.or(a.format).unwrap_or_default();
    let errors = ErrorModel {
        distinct_column_values: f.distinct_column_values.unwrap_or(a.distinct_column_values),
        values: f.error_values.unwrap_or(values(a.error_values)),
    };
    let message = f.message.unwrap_or(if a.random_message { MessageMode::Random } else { MessageMode::Zero });
    let strategies = if a.compare {
        let mut s = vec![AssignmentStrategy::Count];
        for b in [l / 2 + 1, l / 2] {
            if b >= 1 && b <= l && !s.contains(&AssignmentStrategy::Threshold { b }) {
                s.push(AssignmentStrategy::Threshold { b });
            }
        }
        s
    } else {
        vec![resolve_strategy(&a.strategy, f, l)?]
    };
    let configs: Vec<TrialConfig> = strategies
        .iter()
        .flat_map(|&strategy| taus.iter().map(move |&tau| (strategy, tau)))
        .map(|(strategy, tau)| TrialConfig {
            code: r.descriptor.clone(),
            l,
            strategy,
            tau,
            trials,
            seed,
            errors,
            message,
        })
        .collect();
    let comparison = with_threads(threads, || compare_strategies(&configs))??;
    let text = match format {
        Format::Csv => render_csv(&comparison.reports),
        Format::Text => render_text(&comparison.reports),
    };
    write!(out, "{text}").map_err(io)?;
    if a.compare && format == Format::Text {
        write!(out, "{}", render_ratios(&comparison.ratios)).map_err(io)?;
    }
    Ok(0)
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let records = bounds::report(a.n as u64, a.k as u64, a.l as u64, a.b.map(|b| b as u64))?;
    match a.format {
        Format::Text => {
            writeln!(out, "n={} k={} l={} d={}", a.n, a.k, a.l, a.n - a.k + 1).map_err(io)?;
            for r in &records {
                let value = r.value.clone().unwrap_or_else(|| "-".into());
                let flag = if r.applicable { "applies" } else { "not applicable" };
                writeln!(out, "{}: {}  [{}; {}]", r.name, value, flag, r.condition).map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(out, "name,value,applicable,condition").map_err(io)?;
            for r in &records {
                writeln!(
                    out,
                    "{},{},{},\"{}\"",
                    r.name,
                    r.value.clone().unwrap_or_default(),
                    r.applicable,
                    r.condition.replace('"', "'")
                )
                .map_err(io)?;
            }
        }
    }
    Ok(0)
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = tables::table(a.id)?;
    let seed = require_seed(a.seed)?;
    if a.trials == 0 {
        return usage("trials must be at least 1");
    }
    let mut configs = spec.configs(a.trials, seed);
    for c in &mut configs {
        c.errors.values = values(a.error_values);
    }
    let code = RepeatedCode::new(spec.code().build()?, spec.l)?;
    let reports = with_threads(a.threads, || {
        configs.iter().map(|c| crate::simulator::run_trials_with(&code, c)).collect::<Result<Vec<_>>>()
    })??;
    match a.format {
        Format::Csv => write!(out, "{}", render_csv(&reports)),
        Format::Text => {
            writeln!(out, "Table {}: {}", spec.id, spec.title).and_then(|_| write!(out, "{}", render_text(&reports)))
        }
    }
    .map_err(io)?;
    Ok(0)
}
