//! Seeded Monte-Carlo trials: inject errors into a repeated codeword,
//! decode, and tally successes, list sizes and decode times.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decoder::{decode, score, AssignmentStrategy, ReceivedWord, RepeatedCode};
use crate::error::{usage, Error, Result};
use crate::galois::{Elem, Field};
use crate::polynomial::UniPoly;
use crate::rscode::{CodeDescriptor, Codeword};

pub const CSV_HEADER: &str = "tau,successes,trials,rate,mean_list,p50_decode_us";

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MessageMode {
    /// The all-zero codeword.
    #[default]
    Zero,
    /// A uniformly random message per trial.
    Random,
}

/// Distribution of the value added at each chosen coordinate.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorValues {
    /// Uniform over the nonzero elements: exactly tau symbols change.
    #[default]
    Nonzero,
    /// Uniform over the whole field: a chosen coordinate keeps its value with
    /// probability 1/q.
    Uniform,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorModel {
    /// Errors landing in the same column get pairwise distinct values.
    #[serde(default)]
    pub distinct_column_values: bool,
    #[serde(default)]
    pub values: ErrorValues,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub code: CodeDescriptor,
    pub l: usize,
    pub strategy: AssignmentStrategy,
    pub tau: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub errors: ErrorModel,
    #[serde(default)]
    pub message: MessageMode,
}

impl TrialConfig {
    pub fn build_code(&self) -> Result<RepeatedCode> {
        RepeatedCode::new(self.code.build()?, self.l)
    }

    pub fn validate(&self, code: &RepeatedCode) -> Result<()> {
        if self.trials == 0 {
            return usage("trials must be at least 1");
        }
        if self.tau > code.length() {
            return usage(format!("tau = {} exceeds the code length {}", self.tau, code.length()));
        }
        self.strategy.validate(code.repetitions())?;
        check_model(code.field(), code.repetitions(), self.errors)?;
        Ok(())
    }
}

/// One injected error: block, position and the value added.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorEntry {
    pub block: usize,
    pub position: usize,
    pub delta: Elem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ErrorPattern {
    pub entries: Vec<ErrorEntry>,
}

impl ErrorPattern {
    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    /// tau_i for every position.
    pub fn column_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for e in &self.entries {
            counts[e.position] += 1;
        }
        counts
    }
}

fn check_model(field: &Field, l: usize, model: ErrorModel) -> Result<()> {
    let choices = match model.values {
        ErrorValues::Nonzero => field.order() - 1,
        ErrorValues::Uniform => field.order(),
    };
    if model.distinct_column_values && l as u32 > choices {
        return usage(format!("distinct column values need l <= {choices}"));
    }
    Ok(())
}

/// Adds `tau` errors at distinct coordinates of a word given as l blocks of
/// n symbols (row-major).
pub fn inject_errors<R: Rng + ?Sized>(
    field: &Field,
    sent: &Codeword,
    l: usize,
    tau: usize,
    model: ErrorModel,
    rng: &mut R,
) -> Result<(ReceivedWord, ErrorPattern)> {
    let len = sent.len();
    if l == 0 || !len.is_multiple_of(l) {
        return usage(format!("word of length {len} is not {l} blocks"));
    }
    let n = len / l;
    if tau > len {
        return usage(format!("tau = {tau} exceeds word length {len}"));
    }
    check_model(field, l, model)?;
    let distinct_column_values = model.distinct_column_values;
    let low = match model.values {
        ErrorValues::Nonzero => 1,
        ErrorValues::Uniform => 0,
    };
    let q = field.order();
    let mut coords = sample(rng, len, tau).into_vec();
    coords.sort_unstable();
    let mut symbols = sent.symbols().to_vec();
    let mut used: Vec<Vec<u32>> = if distinct_column_values { vec![Vec::new(); n] } else { Vec::new() };
    let mut entries = Vec::with_capacity(tau);
    for c in coords {
        let (block, position) = (c / n, c % n);
        let delta = loop {
            let d = rng.gen_range(low..q);
            if !distinct_column_values || !used[position].contains(&d) {
                break d;
            }
        };
        if distinct_column_values {
            used[position].push(delta);
        }
        let delta = Elem(delta);
        symbols[c] = field.add(symbols[c], delta);
        entries.push(ErrorEntry { block, position, delta });
    }
    Ok((ReceivedWord::new(l, n, symbols)?, ErrorPattern { entries }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub success: bool,
    pub list_size: usize,
    /// Score of the sent codeword under the trial's multiplicities.
    pub sent_score: u64,
    pub decode_time: Duration,
}

/// The generator for trial `index`: its own stream of the seed's ChaCha8 sequence.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn run_trial(code: &RepeatedCode, config: &TrialConfig, index: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(config.seed, index);
    let field = code.field();
    let message = match config.message {
        MessageMode::Zero => UniPoly::zero(),
        MessageMode::Random => {
            UniPoly::from_coeffs((0..code.dimension()).map(|_| Elem(rng.gen_range(0..field.order()))).collect())
        }
    };
    let inner = code.inner().encode(&message)?;
    let sent = code.lift(&inner)?;
    let (word, _) = inject_errors(field, &sent, code.repetitions(), config.tau, config.errors, &mut rng)?;
    let start = Instant::now();
    let out = decode(code, &word, config.strategy)?;
    let decode_time = start.elapsed();
    Ok(TrialOutcome {
        success: out.contains_inner(&inner),
        list_size: out.len(),
        sent_score: score(&out.multiplicities, &inner),
        decode_time,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialReport {
    pub tau: usize,
    pub strategy: AssignmentStrategy,
    pub successes: usize,
    pub trials: usize,
    pub success_rate: f64,
    pub mean_list: f64,
    pub max_list: usize,
    pub total_decode: Duration,
    pub p50_decode: Duration,
    pub wall_clock: Duration,
    pub config: TrialConfig,
}

impl TrialReport {
    pub fn from_outcomes(config: &TrialConfig, outcomes: &[TrialOutcome], wall_clock: Duration) -> Self {
        let trials = outcomes.len();
        let successes = outcomes.iter().filter(|o| o.success).count();
        let lists: usize = outcomes.iter().map(|o| o.list_size).sum();
        let mut times: Vec<Duration> = outcomes.iter().map(|o| o.decode_time).collect();
        times.sort_unstable();
        Self {
            tau: config.tau,
            strategy: config.strategy,
            successes,
            trials,
            success_rate: successes as f64 / trials.max(1) as f64,
            mean_list: lists as f64 / trials.max(1) as f64,
            max_list: outcomes.iter().map(|o| o.list_size).max().unwrap_or(0),
            total_decode: times.iter().sum(),
            p50_decode: median(&times),
            wall_clock,
            config: config.clone(),
        }
    }

    /// The fields that depend only on the seed.
    pub fn statistics(&self) -> (usize, usize, usize, usize) {
        (self.successes, self.trials, (self.mean_list * self.trials as f64).round() as usize, self.max_list)
    }

    pub fn p50_decode_us(&self) -> f64 {
        self.p50_decode.as_secs_f64() * 1e6
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.4},{:.3},{:.1}",
            self.tau,
            self.successes,
            self.trials,
            self.success_rate,
            self.mean_list,
            self.p50_decode_us()
        )
    }
}

fn median(sorted: &[Duration]) -> Duration {
    match sorted.len() {
        0 => Duration::ZERO,
        n if n % 2 == 1 => sorted[n / 2],
        n => (sorted[n / 2 - 1] + sorted[n / 2]) / 2,
    }
}

/// Runs `f` on a pool capped at `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => usage("threads must be at least 1"),
        Some(t) => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(|e| Error::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Every trial outcome, in trial order.
pub fn run_outcomes(code: &RepeatedCode, config: &TrialConfig) -> Result<Vec<TrialOutcome>> {
    config.validate(code)?;
    (0..config.trials as u64).into_par_iter().map(|t| run_trial(code, config, t)).collect()
}

pub fn run_trials_with(code: &RepeatedCode, config: &TrialConfig) -> Result<TrialReport> {
    let start = Instant::now();
    let outcomes = run_outcomes(code, config)?;
    Ok(TrialReport::from_outcomes(config, &outcomes, start.elapsed()))
}

pub fn run_trials(config: &TrialConfig) -> Result<TrialReport> {
    let code = config.build_code()?;
    run_trials_with(&code, config)
}

/// Wall-clock ratio between two reports at the same tau.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioEntry {
    pub tau: usize,
    pub slower: String,
    pub faster: String,
    /// p50(slower) / p50(faster)
    pub ratio: f64,
    /// The ratio after dividing each time by p^m of its field.
    pub field_normalized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub reports: Vec<TrialReport>,
    pub ratios: Vec<RatioEntry>,
}

pub fn label(config: &TrialConfig) -> String {
    format!("[{}n={},k={}] l={} {}", field_label(&config.code), config.code.n, config.code.k, config.l, config.strategy)
}

fn field_label(code: &CodeDescriptor) -> String {
    format!("GF({}^{}) ", code.field.p, code.field.m)
}

/// Runs every config and reports p50 ratios between all pairs sharing a tau.
pub fn compare_strategies(configs: &[TrialConfig]) -> Result<Comparison> {
    let reports = configs.iter().map(run_trials).collect::<Result<Vec<_>>>()?;
    let mut ratios = Vec::new();
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            if a.tau != b.tau {
                continue;
            }
            let (slow, fast) = if a.p50_decode >= b.p50_decode { (a, b) } else { (b, a) };
            let ratio = slow.p50_decode.as_secs_f64() / fast.p50_decode.as_secs_f64().max(1e-12);
            let fp = &slow.config.code.field;
            let fq = &fast.config.code.field;
            let scale = (fp.p as f64).powi(fp.m as i32) / (fq.p as f64).powi(fq.m as i32);
            ratios.push(RatioEntry {
                tau: a.tau,
                slower: label(&slow.config),
                faster: label(&fast.config),
                ratio,
                field_normalized: ratio / scale,
            });
        }
    }
    Ok(Comparison { reports, ratios })
}

pub fn render_csv(reports: &[TrialReport]) -> String {
    let mut out = String::new();
    let mut current: Option<String> = None;
    let series = reports.iter().map(|r| label(&r.config)).collect::<std::collections::BTreeSet<_>>().len();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in reports {
        let l = label(&r.config);
        if series > 1 && current.as_ref() != Some(&l) {
            writeln!(out, "# {l}").unwrap();
            current = Some(l);
        }
        writeln!(out, "{}", r.csv_row()).unwrap();
    }
    out
}

pub fn render_text(reports: &[TrialReport]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<34} {:>5} {:>9} {:>7} {:>8} {:>9} {:>8} {:>12}",
        "series", "tau", "successes", "trials", "rate", "mean_list", "max_list", "p50_us"
    )
    .unwrap();
    for r in reports {
        writeln!(
            out,
            "{:<34} {:>5} {:>9} {:>7} {:>8.4} {:>9.3} {:>8} {:>12.1}",
            label(&r.config),
            r.tau,
            r.successes,
            r.trials,
            r.success_rate,
            r.mean_list,
            r.max_list,
            r.p50_decode_us()
        )
        .unwrap();
    }
    out
}

pub fn render_ratios(ratios: &[RatioEntry]) -> String {
    let mut out = String::new();
    for r in ratios {
        writeln!(
            out,
            "tau={}: {} is {:.2}x slower than {} (field-size normalized: {:.2}x)",
            r.tau, r.slower, r.ratio, r.faster, r.field_normalized
        )
        .unwrap();
    }
    out
}
