//! End-to-end certification runs: generate, verify, deform, reduce, find a
//! line, count, build `chi`, certify. Each run is recorded as a [`Dossier`].

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deformation::{deformation_report, DeformationReport};
use crate::family::{sample, CubicFile, CubicFourfold, FamilyTag};
use crate::singularity::{full_report, is_smooth, SingularityReport};
use crate::zeta::charpoly::DIM;
use crate::zeta::{
    candidates_from_counts, certify, count_points, find_line, good_reduction, reduce_mod_2, traces, Certificate,
    CharPolyCandidate, CountRecord, LineWitness, ReducedCubic, TraceVector, Verdict,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Extension degree whose count completes the trace vector.
pub const CERTIFY_M: u32 = (DIM / 2) as u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Stage {
    Smoothness,
    Singularity,
    Deformation,
    Reduction,
    Line,
    Count,
    Zeta,
    Certify,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "status")]
pub enum DeformationStep {
    Computed { report: DeformationReport },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "status")]
pub enum LineStep {
    Found { witness: LineWitness },
    NoLine,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageTiming {
    pub stage: Stage,
    pub seconds: f64,
}

/// Where a run stopped and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Stop {
    pub stage: Stage,
    pub reason: String,
}

/// Record of one run. A field is present exactly when its stage ran; the
/// verdict is present exactly when counts reached `m = 11`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Dossier {
    pub tool_version: String,
    pub seed: u64,
    pub input: CubicFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth_q: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singularity: Option<SingularityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReducedCubic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<LineStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<TraceVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<CharPolyCandidate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stopped: Option<Stop>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<StageTiming>,
}

impl Dossier {
    pub fn certified(&self) -> bool {
        self.verdict == Some(Verdict::NonSpecialCertified)
    }

    /// The printed `chi` when exactly one candidate survived.
    pub fn unique_chi(&self) -> Option<&CharPolyCandidate> {
        match self.chi.as_deref() {
            Some([c]) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dossier serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunOptions {
    pub mmax: u32,
    pub threads: usize,
    pub exact: bool,
    /// Wall-clock timings break byte-for-byte reproducibility, so they are opt-in.
    pub record_timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { mmax: CERTIFY_M, threads: 0, exact: false, record_timings: false }
    }
}

struct Clock {
    on: bool,
    timings: Vec<StageTiming>,
}

impl Clock {
    fn time<T>(&mut self, stage: Stage, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.on {
            self.timings.push(StageTiming { stage, seconds: start.elapsed().as_secs_f64() });
        }
        out
    }
}

/// Runs every stage on `cubic`, stopping at the first failure. All random
/// choices (the primes of the modular checks) come from `seed`.
pub fn run_cubic(cubic: &CubicFourfold, seed: u64, opts: &RunOptions) -> Dossier {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clock = Clock { on: opts.record_timings, timings: Vec::new() };
    let mut d = Dossier {
        tool_version: TOOL_VERSION.to_string(),
        seed,
        input: cubic.to_file(),
        smooth_q: None,
        singularity: None,
        deformation: None,
        reduction: None,
        line: None,
        counts: None,
        traces: None,
        chi: None,
        verdict: None,
        certificate: None,
        stopped: None,
        timings: Vec::new(),
    };
    let result = stages(cubic, opts, &mut rng, &mut clock, &mut d);
    if let Err(stop) = result {
        d.stopped = Some(stop);
    }
    d.timings = clock.timings;
    d
}

fn stop(stage: Stage, reason: impl ToString) -> Stop {
    Stop { stage, reason: reason.to_string() }
}

fn stages(cubic: &CubicFourfold, opts: &RunOptions, rng: &mut ChaCha8Rng, clock: &mut Clock, d: &mut Dossier) -> Result<(), Stop> {
    let smooth = clock.time(Stage::Smoothness, || is_smooth(&cubic.form, opts.exact, rng));
    d.smooth_q = Some(smooth);
    if !smooth {
        return Err(stop(Stage::Smoothness, "the cubic is singular"));
    }

    let report = clock
        .time(Stage::Singularity, || full_report(&cubic.section(), opts.exact, rng))
        .map_err(|e| stop(Stage::Singularity, e))?;
    let expected = cubic.family.map(|t| t.expected_labels());
    let labels_ok = expected.as_ref().map_or(true, |e| report.matches(e));
    d.singularity = Some(report.clone());
    if !labels_ok {
        let got: Vec<String> = report.labels().iter().map(|l| l.to_string()).collect();
        let want = expected.unwrap_or_default().join("+");
        return Err(stop(Stage::Singularity, format!("section has {} instead of {want}", got.join("+"))));
    }

    let step = clock.time(Stage::Deformation, || match deformation_report(cubic, &report) {
        Ok(report) => DeformationStep::Computed { report },
        Err(e) => DeformationStep::Skipped { reason: e.to_string() },
    });
    d.deformation = Some(step);
    if let Some(tag) = cubic.family.filter(|t| t.is_known_special()) {
        return Err(stop(Stage::Deformation, known_special_message(tag)));
    }

    let mut reduced = reduce_mod_2(cubic).map_err(|e| stop(Stage::Reduction, e))?;
    let good = clock.time(Stage::Reduction, || good_reduction(&mut reduced));
    d.reduction = Some(reduced.clone());
    if !good {
        return Err(stop(Stage::Reduction, "the reduction mod 2 is singular"));
    }

    let line = clock.time(Stage::Line, || find_line(&reduced));
    d.line = Some(match &line {
        Some(w) => LineStep::Found { witness: w.clone() },
        None => LineStep::NoLine,
    });
    let Some(witness) = line else { return Err(stop(Stage::Line, "no line over F_2")) };

    let mut counts = Vec::new();
    let counted = clock.time(Stage::Count, || -> Result<(), Stop> {
        for m in 1..=opts.mmax {
            let mut rec = count_points(&reduced, &witness, m, opts.threads).map_err(|e| stop(Stage::Count, e))?;
            if !opts.record_timings {
                rec.elapsed_seconds = 0.0;
            }
            counts.push(rec);
        }
        Ok(())
    });
    d.counts = Some(counts.clone());
    counted?;

    d.traces = Some(traces(&counts).map_err(|e| stop(Stage::Zeta, e))?);
    if opts.mmax < CERTIFY_M {
        return Ok(());
    }
    let candidates = clock.time(Stage::Zeta, || candidates_from_counts(&counts)).map_err(|e| stop(Stage::Zeta, e))?;
    d.chi = Some(candidates.clone());
    let cert = clock.time(Stage::Certify, || certify(&candidates)).map_err(|e| stop(Stage::Certify, e))?;
    d.verdict = Some(cert.verdict);
    d.certificate = Some(cert);
    Ok(())
}

pub fn known_special_message(tag: FamilyTag) -> String {
    format!("{tag} members contain a plane, so they lie on a special divisor; certification is not attempted")
}

/// One line of a pipeline log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AttemptRecord {
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stopped: Option<Stop>,
}

impl AttemptRecord {
    fn of(d: &Dossier) -> Self {
        AttemptRecord { seed: d.seed, verdict: d.verdict, stopped: d.stopped.clone() }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("attempts must be at least 1")]
    NoAttempts,
    #[error("mmax must be at least {CERTIFY_M} to certify, got {0}")]
    MmaxTooSmall(u32),
    #[error("{}", known_special_message(*.0))]
    KnownSpecial(FamilyTag),
    #[error("no certified member among {} attempts", .log.len())]
    AttemptsExhausted { log: Vec<AttemptRecord> },
}

/// The first certified member plus the log of every attempt.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PipelineOutcome {
    pub dossier: Dossier,
    pub attempts: Vec<AttemptRecord>,
}

/// Samples `family` at seeds `seed_start, seed_start + 1, ..` until a member
/// is certified non-special. The sample seed doubles as the run seed.
pub fn run_pipeline(
    family: FamilyTag,
    seed_start: u64,
    attempts: u32,
    bound: i64,
    opts: &RunOptions,
) -> Result<PipelineOutcome, PipelineError> {
    if attempts == 0 {
        return Err(PipelineError::NoAttempts);
    }
    if opts.mmax < CERTIFY_M {
        return Err(PipelineError::MmaxTooSmall(opts.mmax));
    }
    if family.is_known_special() {
        return Err(PipelineError::KnownSpecial(family));
    }
    let mut log = Vec::new();
    for k in 0..attempts as u64 {
        let seed = seed_start.wrapping_add(k);
        let d = run_cubic(&sample(family, seed, bound), seed, opts);
        log.push(AttemptRecord::of(&d));
        if d.certified() {
            return Ok(PipelineOutcome { dossier: d, attempts: log });
        }
    }
    Err(PipelineError::AttemptsExhausted { log })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundsConfig {
    pub bound: i64,
    pub mmax: u32,
    pub exact: bool,
}

/// A batch of seeds of one family with the outcome of each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub family_tag: FamilyTag,
    /// Half-open range `[start, end)`.
    pub seed_range: (u64, u64),
    pub bounds_config: BoundsConfig,
    pub thread_count: usize,
    #[serde(default)]
    pub outcomes: Vec<AttemptRecord>,
}

impl RunManifest {
    pub fn new(family_tag: FamilyTag, seed_range: (u64, u64), bounds_config: BoundsConfig, thread_count: usize) -> Self {
        RunManifest { family_tag, seed_range, bounds_config, thread_count, outcomes: Vec::new() }
    }

    fn options(&self) -> RunOptions {
        RunOptions {
            mmax: self.bounds_config.mmax,
            threads: self.thread_count,
            exact: self.bounds_config.exact,
            record_timings: false,
        }
    }

    /// Runs every seed and fills in `outcomes`. Dossiers carry no timings,
    /// so a second run of the same manifest produces identical bytes.
    pub fn run(&mut self) -> Vec<Dossier> {
        let opts = self.options();
        let dossiers: Vec<Dossier> = (self.seed_range.0..self.seed_range.1)
            .map(|seed| run_cubic(&sample(self.family_tag, seed, self.bounds_config.bound), seed, &opts))
            .collect();
        self.outcomes = dossiers.iter().map(AttemptRecord::of).collect();
        dossiers
    }
}
