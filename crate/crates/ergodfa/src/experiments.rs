//! Reproducible Monte Carlo campaigns over random DFA, plus the analytic
//! bound suite.
//!
//! A campaign samples DFA for each configured state count, decomposes their
//! class structure, optionally minimizes them and analyzes the induced walk,
//! and aggregates everything into per-n summaries. Reproducibility contract:
//! the report is a pure function of the config. Trials run in parallel but
//! are buffered by trial index before any floating-point aggregation, so the
//! reduction order — and therefore every emitted byte — is independent of
//! the worker count.
//!
//! Seed plan: each state count gets its own stream master
//! `derive_trial_seed(master_seed, n)`, each trial the seed
//! `derive_trial_seed(n_master, trial)`, and each walk a further derived
//! stream so walk randomness never aliases the sampling draws.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::Automaton;
use crate::bounds::{
    brute_force_census, emk_bound, grusho_constant, simplified_bound_ratio,
    technical_lemma_value, truncate3, CensusResult,
};
use crate::markov::{
    simulate_walk, stationary, transition_matrix, MarkovError, DEFAULT_MAX_ITERS,
    DEFAULT_TOLERANCE,
};
use crate::minimization::minimize;
use crate::randgen::{derive_trial_seed, sample_dfa, SampleSpec};
use crate::structure::{communicating_classes, is_ergodic_structure};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid config: {reason}")]
    InvalidConfig { reason: String },
    #[error("check {check} failed: {details}")]
    CheckFailed { check: String, details: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Master seed of the published default campaign.
pub const DEFAULT_MASTER_SEED: u64 = 0xDFA;
/// Walk length used by the default campaign.
pub const DEFAULT_WALK_STEPS: u64 = 1_000_000;
/// Stream tag separating walk randomness from the sampling stream.
const WALK_STREAM: u64 = 1;
/// Frozen cap for the simplified-bound ratio scan (observed maximum on the
/// scan grid is below 0.15; any cap would do, boundedness is the content).
pub const RATIO_SCAN_CAP: f64 = 1.0;

/// Which per-trial analyses to run and which thresholds to enforce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckFlags {
    pub ergodicity: bool,
    pub class_size: bool,
    pub minimization_preservation: bool,
    pub stationary: bool,
    pub walk: bool,
}

impl Default for CheckFlags {
    fn default() -> CheckFlags {
        CheckFlags {
            ergodicity: true,
            class_size: true,
            minimization_preservation: true,
            stationary: true,
            walk: true,
        }
    }
}

/// Pass/fail thresholds, applied to the summary of the largest configured
/// state count. These are calibrated empirical choices, not theorems: the
/// theory is asymptotic and fixes no finite-n rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    pub min_fraction_ergodic: f64,
    pub min_fraction_unique_closed: f64,
    /// Allowed deviation of mean (largest closed class size)/n from the
    /// Grusho constant.
    pub class_fraction_tol: f64,
}

impl Default for Thresholds {
    fn default() -> Thresholds {
        Thresholds {
            min_fraction_ergodic: 0.99,
            min_fraction_unique_closed: 0.99,
            class_fraction_tol: 0.02,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    #[default]
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_values: Vec<usize>,
    pub r: usize,
    /// Trials per state count.
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub checks: CheckFlags,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: ReportFormat,
    /// Keep per-trial records in the report (and in CSV output).
    #[serde(default)]
    pub record_trials: bool,
    #[serde(default = "default_walk_steps")]
    pub walk_steps: u64,
    /// When present, [`evaluate_campaign`] enforces these on the largest n.
    #[serde(default)]
    pub thresholds: Option<Thresholds>,
}

fn default_walk_steps() -> u64 {
    DEFAULT_WALK_STEPS
}

impl ExperimentConfig {
    /// The published default: r = 2 (the hardest case — smallest Grusho
    /// constant), a grid of five state counts, 300 trials each.
    pub fn default_campaign() -> ExperimentConfig {
        ExperimentConfig {
            n_values: vec![50, 100, 200, 500, 1000],
            r: 2,
            trials: 300,
            master_seed: DEFAULT_MASTER_SEED,
            checks: CheckFlags::default(),
            output_path: None,
            format: ReportFormat::Json,
            record_trials: false,
            walk_steps: DEFAULT_WALK_STEPS,
            thresholds: Some(Thresholds::default()),
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.n_values.is_empty() {
            return Err(ExperimentError::InvalidConfig { reason: "n_values is empty".into() });
        }
        if self.n_values.iter().any(|&n| n == 0) {
            return Err(ExperimentError::InvalidConfig { reason: "n_values contains 0".into() });
        }
        if self.r < 2 {
            return Err(ExperimentError::InvalidConfig {
                reason: format!("alphabet size {} is below 2", self.r),
            });
        }
        if self.trials == 0 {
            return Err(ExperimentError::InvalidConfig { reason: "trials is 0".into() });
        }
        Ok(())
    }
}

/// Everything measured about one sampled DFA. A failed analysis is recorded
/// in `error` and never aborts the campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub class_count: usize,
    pub closed_count: usize,
    pub largest_closed_size: usize,
    pub largest_closed_period: usize,
    /// More than one closed class (rare; the class-size statistic then uses
    /// the largest).
    pub multi_class: bool,
    pub ergodic: bool,
    pub minimized_states: Option<usize>,
    pub minimized_ergodic: Option<bool>,
    pub stationary_converged: Option<bool>,
    pub walk_tv: Option<f64>,
    pub error: Option<String>,
}

/// Per-state-count aggregates. Every field is recomputable from the trial
/// records via [`NSummary::from_records`]; the campaign runner itself goes
/// through that same function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NSummary {
    pub n: usize,
    pub trials: usize,
    pub fraction_unique_closed: f64,
    pub fraction_ergodic: f64,
    /// Mean of (largest closed class size) / n.
    pub mean_class_fraction: f64,
    pub stddev_class_fraction: f64,
    /// Reference value: the Grusho constant for the configured alphabet.
    pub grusho_c: f64,
    /// Among ergodic inputs that were minimized; None when none were.
    pub fraction_minimized_ergodic: Option<f64>,
    pub stationary_convergence_rate: Option<f64>,
    pub mean_walk_tv: Option<f64>,
    pub multi_class_trials: usize,
    pub failed_trials: usize,
}

impl NSummary {
    /// Aggregates a block of records (all with the same n) in slice order.
    pub fn from_records(n: usize, r: usize, records: &[TrialRecord]) -> NSummary {
        debug_assert!(records.iter().all(|t| t.n == n));
        let trials = records.len();
        let ok: Vec<&TrialRecord> = records.iter().filter(|t| t.error.is_none()).collect();
        let failed_trials = trials - ok.len();
        let denom = ok.len().max(1) as f64;

        let fraction_unique_closed =
            ok.iter().filter(|t| t.closed_count == 1).count() as f64 / denom;
        let fraction_ergodic = ok.iter().filter(|t| t.ergodic).count() as f64 / denom;
        let fractions: Vec<f64> =
            ok.iter().map(|t| t.largest_closed_size as f64 / n as f64).collect();
        let mean_class_fraction = fractions.iter().sum::<f64>() / denom;
        let stddev_class_fraction = if fractions.len() >= 2 {
            let var = fractions.iter().map(|f| (f - mean_class_fraction).powi(2)).sum::<f64>()
                / (fractions.len() - 1) as f64;
            var.sqrt()
        } else {
            0.0
        };

        let ratio = |hits: usize, total: usize| -> Option<f64> {
            (total > 0).then(|| hits as f64 / total as f64)
        };
        let minimized: Vec<bool> = ok.iter().filter_map(|t| t.minimized_ergodic).collect();
        let fraction_minimized_ergodic =
            ratio(minimized.iter().filter(|&&b| b).count(), minimized.len());
        let converged: Vec<bool> = ok.iter().filter_map(|t| t.stationary_converged).collect();
        let stationary_convergence_rate =
            ratio(converged.iter().filter(|&&b| b).count(), converged.len());
        let tvs: Vec<f64> = ok.iter().filter_map(|t| t.walk_tv).collect();
        let mean_walk_tv =
            (!tvs.is_empty()).then(|| tvs.iter().sum::<f64>() / tvs.len() as f64);

        NSummary {
            n,
            trials,
            fraction_unique_closed,
            fraction_ergodic,
            mean_class_fraction,
            stddev_class_fraction,
            grusho_c: grusho_constant(r).expect("config enforces r >= 2"),
            fraction_minimized_ergodic,
            stationary_convergence_rate,
            mean_walk_tv,
            multi_class_trials: ok.iter().filter(|t| t.multi_class).count(),
            failed_trials,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub summaries: Vec<NSummary>,
    /// Present when the config asked for per-trial records.
    #[serde(default)]
    pub records: Option<Vec<TrialRecord>>,
}

fn failed_trial(n: usize, trial: usize, seed: u64, error: String) -> TrialRecord {
    TrialRecord {
        n,
        trial,
        seed,
        class_count: 0,
        closed_count: 0,
        largest_closed_size: 0,
        largest_closed_period: 0,
        multi_class: false,
        ergodic: false,
        minimized_states: None,
        minimized_ergodic: None,
        stationary_converged: None,
        walk_tv: None,
        error: Some(error),
    }
}

fn run_trial(
    n: usize,
    r: usize,
    trial: usize,
    n_master: u64,
    checks: CheckFlags,
    walk_steps: u64,
) -> TrialRecord {
    let seed = derive_trial_seed(n_master, trial as u64);
    let spec = SampleSpec { n, r, master_seed: n_master, trial_index: trial as u64 };
    let dfa = match sample_dfa(&spec) {
        Ok(d) => d,
        Err(e) => return failed_trial(n, trial, seed, e.to_string()),
    };
    let decomposition = match communicating_classes(&dfa) {
        Ok(d) => d,
        Err(e) => return failed_trial(n, trial, seed, e.to_string()),
    };
    let closed_count = decomposition.closed_class_count();
    let (largest_idx, largest_closed_size) =
        decomposition.largest_closed_class().expect("every finite DFA has a closed class");
    let largest_closed_period =
        decomposition.period(largest_idx).expect("closed classes have a period");
    let ergodic = decomposition.is_ergodic();

    let mut record = TrialRecord {
        n,
        trial,
        seed,
        class_count: decomposition.class_count(),
        closed_count,
        largest_closed_size,
        largest_closed_period,
        multi_class: closed_count > 1,
        ergodic,
        minimized_states: None,
        minimized_ergodic: None,
        stationary_converged: None,
        walk_tv: None,
        error: None,
    };

    if checks.minimization_preservation && ergodic {
        let minimized = minimize(&dfa);
        record.minimized_states = Some(minimized.dfa.state_count());
        match is_ergodic_structure(&minimized.dfa) {
            Ok((still_ergodic, _)) => record.minimized_ergodic = Some(still_ergodic),
            Err(e) => {
                record.error = Some(e.to_string());
                return record;
            }
        }
    }

    if checks.stationary {
        let matrix = match transition_matrix(&dfa) {
            Ok(m) => m,
            Err(e) => {
                record.error = Some(e.to_string());
                return record;
            }
        };
        match stationary(&matrix, DEFAULT_TOLERANCE, DEFAULT_MAX_ITERS) {
            Ok(pi) => {
                record.stationary_converged = Some(true);
                if checks.walk {
                    let walk =
                        simulate_walk(&dfa, derive_trial_seed(seed, WALK_STREAM), walk_steps);
                    record.walk_tv = Some(walk.frequencies().total_variation(&pi));
                }
            }
            Err(MarkovError::NotConverged { .. }) => {
                record.stationary_converged = Some(false);
            }
            Err(e) => {
                record.error = Some(e.to_string());
            }
        }
    }
    record
}

/// Runs the whole campaign. Trials are embarrassingly parallel; the per-n
/// record vectors come back ordered by trial index, so aggregation — and the
/// eventual report — is deterministic for a fixed config regardless of how
/// many rayon workers participate.
pub fn run_campaign(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let mut summaries = Vec::with_capacity(cfg.n_values.len());
    let mut all_records = Vec::new();
    for &n in &cfg.n_values {
        let n_master = derive_trial_seed(cfg.master_seed, n as u64);
        let records: Vec<TrialRecord> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| run_trial(n, cfg.r, trial, n_master, cfg.checks, cfg.walk_steps))
            .collect();
        summaries.push(NSummary::from_records(n, cfg.r, &records));
        if cfg.record_trials {
            all_records.extend(records);
        }
    }
    Ok(ExperimentReport {
        config: cfg.clone(),
        summaries,
        records: cfg.record_trials.then_some(all_records),
    })
}

/// Enforces the config's thresholds (if any) on the largest-n summary, plus
/// the exact minimization-preservation theorem when that check is enabled.
pub fn evaluate_campaign(report: &ExperimentReport) -> Result<(), ExperimentError> {
    let Some(thresholds) = report.config.thresholds else {
        return Ok(());
    };
    let summary = report
        .summaries
        .iter()
        .max_by_key(|s| s.n)
        .ok_or(ExperimentError::InvalidConfig { reason: "report has no summaries".into() })?;
    let checks = report.config.checks;
    if checks.ergodicity {
        if summary.fraction_ergodic < thresholds.min_fraction_ergodic {
            return Err(ExperimentError::CheckFailed {
                check: "ergodicity".into(),
                details: format!(
                    "n={}: fraction_ergodic {} < {}",
                    summary.n, summary.fraction_ergodic, thresholds.min_fraction_ergodic
                ),
            });
        }
        if summary.fraction_unique_closed < thresholds.min_fraction_unique_closed {
            return Err(ExperimentError::CheckFailed {
                check: "unique-closed-class".into(),
                details: format!(
                    "n={}: fraction_unique_closed {} < {}",
                    summary.n, summary.fraction_unique_closed,
                    thresholds.min_fraction_unique_closed
                ),
            });
        }
    }
    if checks.class_size {
        let deviation = (summary.mean_class_fraction - summary.grusho_c).abs();
        if deviation > thresholds.class_fraction_tol {
            return Err(ExperimentError::CheckFailed {
                check: "class-size".into(),
                details: format!(
                    "n={}: mean class fraction {} deviates from {} by {deviation}",
                    summary.n, summary.mean_class_fraction, summary.grusho_c
                ),
            });
        }
    }
    if checks.minimization_preservation {
        // Not a tunable threshold: the preservation statement is a theorem,
        // so any ergodic input whose minimization is not ergodic is a bug.
        if let Some(fraction) = summary.fraction_minimized_ergodic {
            if fraction != 1.0 {
                return Err(ExperimentError::CheckFailed {
                    check: "minimization-preservation".into(),
                    details: format!(
                        "n={}: fraction_minimized_ergodic {fraction} != 1.0",
                        summary.n
                    ),
                });
            }
        }
    }
    Ok(())
}

const CSV_COLUMNS: [&str; 14] = [
    "n",
    "trial",
    "seed",
    "class_count",
    "closed_count",
    "largest_closed_size",
    "largest_closed_period",
    "multi_class",
    "ergodic",
    "minimized_states",
    "minimized_ergodic",
    "stationary_converged",
    "walk_tv",
    "error",
];

/// Per-trial records as CSV; header-only when there are none. (CSV carries
/// only the records table — summaries and config live in the JSON format.)
pub fn render_csv(records: &[TrialRecord]) -> Result<String, ExperimentError> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    writer.write_record(CSV_COLUMNS)?;
    for record in records {
        writer.serialize(record)?;
    }
    let bytes = writer.into_inner().expect("flushing an in-memory writer cannot fail");
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn parse_csv_records(text: &str) -> Result<Vec<TrialRecord>, ExperimentError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row?);
    }
    Ok(records)
}

pub fn render_json(report: &ExperimentReport) -> Result<String, ExperimentError> {
    let mut out = serde_json::to_string_pretty(report)?;
    out.push('\n');
    Ok(out)
}

pub fn parse_report_json(text: &str) -> Result<ExperimentReport, ExperimentError> {
    Ok(serde_json::from_str(text)?)
}

pub fn render_report(
    report: &ExperimentReport,
    format: ReportFormat,
) -> Result<String, ExperimentError> {
    match format {
        ReportFormat::Json => render_json(report),
        ReportFormat::Csv => render_csv(report.records.as_deref().unwrap_or(&[])),
    }
}

/// Renders and writes the report. Emitting the same report twice writes
/// byte-identical files.
pub fn emit_report(
    report: &ExperimentReport,
    format: ReportFormat,
    path: &Path,
) -> Result<(), ExperimentError> {
    fs::write(path, render_report(report, format)?)?;
    Ok(())
}

/// One row of the emk-vs-census comparison in the bound suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub exact: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrushoRow {
    pub r: usize,
    pub value: f64,
    pub truncated: f64,
}

/// Everything the bound suite computed; producing this value at all means
/// every check passed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSuiteReport {
    pub grusho_table: Vec<GrushoRow>,
    pub lemma_supremum: f64,
    pub lemma_argmax_s1: f64,
    pub census_domination: Vec<DominationRow>,
    pub ratio_scan_max: f64,
    pub ratio_cap: f64,
}

/// Verifies that the analytic bound dominates every exact event probability
/// of a census. Fails with the violating (n, m, k) tuple.
pub fn check_census_domination(
    census: &CensusResult,
) -> Result<Vec<DominationRow>, ExperimentError> {
    let mut rows = Vec::new();
    for event in &census.periodic_events {
        let (m, k) = (event.class_size, event.divisor);
        let exact = census.event_probability(m, k);
        let bound = emk_bound(census.n, m, k, census.r).map_err(|e| {
            ExperimentError::CheckFailed {
                check: "census-domination".into(),
                details: format!("emk_bound(n={}, m={m}, k={k}): {e}", census.n),
            }
        })?;
        if exact > bound {
            return Err(ExperimentError::CheckFailed {
                check: "census-domination".into(),
                details: format!(
                    "n={}, m={m}, k={k}: exact {exact} exceeds bound {bound}",
                    census.n
                ),
            });
        }
        rows.push(DominationRow { n: census.n, m, k, exact, bound });
    }
    Ok(rows)
}

/// Runs every analytic check: the Grusho table against its classical
/// truncated values, the technical-lemma grid supremum, exact-census
/// domination for n = 2 and 3, and the simplified-bound ratio scan. Returns
/// the collected numbers; any violation is a [`ExperimentError::CheckFailed`].
pub fn run_bound_suite() -> Result<BoundSuiteReport, ExperimentError> {
    // Grusho fixed points, truncated to three digits.
    let expected_thousandths: [i64; 6] = [796, 940, 980, 993, 997, 999];
    let mut grusho_table = Vec::new();
    for (r, &expected) in (2..=7).zip(&expected_thousandths) {
        let value = grusho_constant(r).map_err(|e| ExperimentError::CheckFailed {
            check: "grusho-table".into(),
            details: e.to_string(),
        })?;
        let truncated = truncate3(value);
        if (truncated * 1000.0).round() as i64 != expected {
            return Err(ExperimentError::CheckFailed {
                check: "grusho-table".into(),
                details: format!("r={r}: truncated {truncated}, expected 0.{expected}"),
            });
        }
        grusho_table.push(GrushoRow { r, value, truncated });
    }

    // Technical-lemma grid: sup over x in (0,1) step 0.001, s in {1,1.5,2,5}.
    let mut lemma_supremum = 0.0f64;
    let mut lemma_argmax_s1 = 0.0f64;
    let mut lemma_max_s1 = 0.0f64;
    for i in 1..1000 {
        let x = i as f64 / 1000.0;
        for s in [1.0, 1.5, 2.0, 5.0] {
            let value = technical_lemma_value(x, s).map_err(|e| {
                ExperimentError::CheckFailed {
                    check: "technical-lemma".into(),
                    details: e.to_string(),
                }
            })?;
            if value > 1.2 {
                return Err(ExperimentError::CheckFailed {
                    check: "technical-lemma".into(),
                    details: format!("x={x}, s={s}: value {value} exceeds 1.2"),
                });
            }
            lemma_supremum = lemma_supremum.max(value);
            if s == 1.0 && value > lemma_max_s1 {
                lemma_max_s1 = value;
                lemma_argmax_s1 = x;
            }
        }
    }
    if !(0.75..=0.85).contains(&lemma_argmax_s1) {
        return Err(ExperimentError::CheckFailed {
            check: "technical-lemma".into(),
            details: format!("s=1 maximizer {lemma_argmax_s1} outside [0.75, 0.85]"),
        });
    }

    // Exact censuses must sit below the analytic bound.
    let mut census_domination = Vec::new();
    for n in [2, 3] {
        let census = brute_force_census(n, 2).map_err(|e| ExperimentError::CheckFailed {
            check: "census-domination".into(),
            details: e.to_string(),
        })?;
        census_domination.extend(check_census_domination(&census)?);
    }

    // Ratio of the full bound to the simplified shape stays bounded.
    let mut ratio_scan_max = 0.0f64;
    for r in [2, 3] {
        for n in 2..=50 {
            for m in 2..=n {
                for k in 2..=m {
                    let ratio = simplified_bound_ratio(n, m, k, r).map_err(|e| {
                        ExperimentError::CheckFailed {
                            check: "ratio-scan".into(),
                            details: e.to_string(),
                        }
                    })?;
                    if !ratio.is_finite() || ratio > RATIO_SCAN_CAP {
                        return Err(ExperimentError::CheckFailed {
                            check: "ratio-scan".into(),
                            details: format!(
                                "n={n}, m={m}, k={k}, r={r}: ratio {ratio} exceeds {RATIO_SCAN_CAP}"
                            ),
                        });
                    }
                    ratio_scan_max = ratio_scan_max.max(ratio);
                }
            }
        }
    }

    Ok(BoundSuiteReport {
        grusho_table,
        lemma_supremum,
        lemma_argmax_s1,
        census_domination,
        ratio_scan_max,
        ratio_cap: RATIO_SCAN_CAP,
    })
}
