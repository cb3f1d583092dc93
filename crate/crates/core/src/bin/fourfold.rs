use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use fourfold::deformation::deformation_report;
use fourfold::family::{audit_dimensions, sample, CubicFile, CubicFourfold, FamilyTag};
use fourfold::fixtures::fixture;
use fourfold::pipeline::{known_special_message, run_cubic, run_pipeline, LineStep, PipelineError, RunOptions, CERTIFY_M};
use fourfold::singularity::{full_report, is_smooth, SingularityReport};
use fourfold::zeta::count::{counts_to_csv, MAX_M};
use fourfold::zeta::{candidates_from_counts, count_range, find_line, good_reduction, reduce_mod_2, traces, ReducedCubic};

const THREADS_ENV: &str = "FOURFOLD_THREADS";
const SLOW_M: u32 = 10;
const AUDIT_SAMPLES: usize = 5;

#[derive(Parser)]
#[command(name = "fourfold", version, about = "Cubic fourfolds with singular hyperplane sections and their non-speciality certificates")]
struct Cli {
    /// Worker threads for point counting (0 = all cores); FOURFOLD_THREADS overrides.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Counting {
    /// Count over F_{2^m} for m = 1..=mmax.
    #[arg(long, default_value_t = CERTIFY_M)]
    mmax: u32,
    /// Required for mmax >= 10.
    #[arg(long)]
    allow_slow: bool,
}

#[derive(Args)]
struct Checks {
    /// Seed for the random primes of the modular checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Decide smoothness and Tjurina numbers over Q instead of modulo primes.
    #[arg(long)]
    exact_rationals: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a member of a family.
    Generate {
        #[arg(long)]
        family: FamilyTag,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
    /// Smoothness and the singularities of the section x5 = 0.
    Verify {
        /// Cubic JSON, a text polynomial, or fixture:<family>.
        input: String,
        #[command(flatten)]
        checks: Checks,
    },
    /// Tjurina bases, rank of the global-to-local map, T333 modular test.
    Deform {
        input: String,
        #[command(flatten)]
        checks: Checks,
    },
    /// Reduction mod 2, its smoothness, and a line over F_2.
    Reduce2 { input: String },
    /// Point counts over F_{2^m} as CSV.
    Count {
        input: String,
        #[command(flatten)]
        counting: Counting,
    },
    /// Traces and candidate characteristic polynomials.
    Zeta {
        input: String,
        #[command(flatten)]
        counting: Counting,
    },
    /// Every stage on one cubic, written as a dossier.
    Certify {
        input: String,
        #[command(flatten)]
        counting: Counting,
        #[command(flatten)]
        checks: Checks,
    },
    /// Sample a family until a member is certified.
    Pipeline {
        #[arg(long)]
        family: FamilyTag,
        /// First seed tried.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        attempts: u32,
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[command(flatten)]
        counting: Counting,
        #[arg(long)]
        exact_rationals: bool,
    },
    /// Parameter counts and stabilizer dimensions of every family.
    AuditDims {
        #[arg(long)]
        family: Option<FamilyTag>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn math(msg: impl ToString) -> Failure {
    Failure::Math(msg.to_string())
}

fn load(input: &str) -> Result<CubicFourfold, Failure> {
    if let Some(tag) = input.strip_prefix("fixture:") {
        let tag: FamilyTag = tag.parse().map_err(usage)?;
        return Ok(fixture(tag).fourfold());
    }
    let text = std::fs::read_to_string(input).map_err(|e| usage(format!("{input}: {e}")))?;
    if text.trim_start().starts_with('{') {
        let file: CubicFile = serde_json::from_str(&text).map_err(|e| usage(format!("{input}: {e}")))?;
        CubicFourfold::from_file(&file).map_err(|e| usage(format!("{input}: {e}")))
    } else {
        CubicFourfold::parse(&text, None).map_err(|e| usage(format!("{input}: {e}")))
    }
}

struct Output {
    out: Option<PathBuf>,
}

impl Output {
    fn text(&self, s: &str) -> Outcome {
        match &self.out {
            Some(p) => std::fs::write(p, s).map_err(|e| usage(format!("{}: {e}", p.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                match writeln!(stdout, "{}", s.trim_end()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(format!("stdout: {e}"))),
                    _ => Ok(()),
                }
            }
        }
    }

    fn json<T: Serialize>(&self, v: &T) -> Outcome {
        self.text(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"))
    }
}

fn check_mmax(c: &Counting) -> Outcome {
    if !(1..=MAX_M).contains(&c.mmax) {
        return Err(usage(format!("--mmax must lie in 1..={MAX_M}")));
    }
    if c.mmax >= SLOW_M && !c.allow_slow {
        return Err(usage(format!("--mmax {} takes a long time; pass --allow-slow to confirm", c.mmax)));
    }
    Ok(())
}

fn threads(flag: usize) -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(flag),
    }
}

fn reduced_with_line(cubic: &CubicFourfold) -> Result<(ReducedCubic, fourfold::zeta::LineWitness), Failure> {
    let mut r = reduce_mod_2(cubic).map_err(math)?;
    if !good_reduction(&mut r) {
        return Err(math("the reduction mod 2 is singular"));
    }
    let w = find_line(&r).ok_or_else(|| math("no line over F_2"))?;
    Ok((r, w))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Verification {
    smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    singularity: Option<SingularityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_labels: Option<Vec<&'static str>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_family: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Reduction {
    reduction: ReducedCubic,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<LineStep>,
}

fn run(cli: Cli) -> Outcome {
    let out = Output { out: cli.out.clone() };
    let threads = threads(cli.threads)?;
    match cli.command {
        Command::Generate { family, seed, bound } => {
            if bound < 1 {
                return Err(usage("--bound must be positive"));
            }
            let c = sample(family, seed, bound);
            out.json(&c.to_file())?;
            if let Some(p) = &cli.out {
                let txt = p.with_extension("txt");
                std::fs::write(&txt, c.form.to_string() + "\n").map_err(|e| usage(format!("{}: {e}", txt.display())))?;
            }
            Ok(())
        }
        Command::Verify { input, checks } => {
            let cubic = load(&input)?;
            let mut rng = ChaCha8Rng::seed_from_u64(checks.seed);
            let smooth = is_smooth(&cubic.form, checks.exact_rationals, &mut rng);
            let singularity = full_report(&cubic.section(), checks.exact_rationals, &mut rng).map_err(math)?;
            let expected = cubic.family.map(|t| t.expected_labels());
            let matches_family = expected.as_ref().map(|e| singularity.matches(e));
            let note = cubic.family.filter(|t| t.is_known_special()).map(known_special_message);
            let v = Verification { smooth, singularity: Some(singularity), expected_labels: expected, matches_family, note };
            out.json(&v)?;
            if !smooth || matches_family == Some(false) {
                return Err(math("verification failed"));
            }
            Ok(())
        }
        Command::Deform { input, checks } => {
            let cubic = load(&input)?;
            let mut rng = ChaCha8Rng::seed_from_u64(checks.seed);
            let report = full_report(&cubic.section(), checks.exact_rationals, &mut rng).map_err(math)?;
            out.json(&deformation_report(&cubic, &report).map_err(math)?)
        }
        Command::Reduce2 { input } => {
            let cubic = load(&input)?;
            let mut reduction = reduce_mod_2(&cubic).map_err(math)?;
            let good = good_reduction(&mut reduction);
            let line = good.then(|| match find_line(&reduction) {
                Some(witness) => LineStep::Found { witness },
                None => LineStep::NoLine,
            });
            out.json(&Reduction { reduction, line })?;
            if !good {
                return Err(math("the reduction mod 2 is singular"));
            }
            Ok(())
        }
        Command::Count { input, counting } => {
            check_mmax(&counting)?;
            let (r, w) = reduced_with_line(&load(&input)?)?;
            out.text(&counts_to_csv(&count_range(&r, &w, counting.mmax, threads).map_err(math)?))
        }
        Command::Zeta { input, counting } => {
            check_mmax(&counting)?;
            let (r, w) = reduced_with_line(&load(&input)?)?;
            let counts = count_range(&r, &w, counting.mmax, threads).map_err(math)?;
            let t = traces(&counts).map_err(math)?;
            let chi = if counting.mmax >= CERTIFY_M { Some(candidates_from_counts(&counts).map_err(math)?) } else { None };
            out.json(&serde_json::json!({ "traces": t, "chi": chi }))
        }
        Command::Certify { input, counting, checks } => {
            check_mmax(&counting)?;
            let cubic = load(&input)?;
            let opts = RunOptions { mmax: counting.mmax, threads, exact: checks.exact_rationals, record_timings: true };
            let d = run_cubic(&cubic, checks.seed, &opts);
            out.text(&(d.to_json() + "\n"))?;
            match (&d.stopped, d.verdict) {
                (Some(s), _) => Err(math(format!("stopped at {:?}: {}", s.stage, s.reason))),
                (None, None) => Err(math(format!("no verdict: counts stop at m = {}", counting.mmax))),
                (None, Some(v)) if !d.certified() => Err(math(format!("verdict {v}"))),
                _ => Ok(()),
            }
        }
        Command::Pipeline { family, seed, attempts, bound, counting, exact_rationals } => {
            if family.is_known_special() {
                return Err(math(known_special_message(family)));
            }
            if attempts == 0 {
                return Err(usage(PipelineError::NoAttempts));
            }
            check_mmax(&counting)?;
            let opts = RunOptions { mmax: counting.mmax, threads, exact: exact_rationals, record_timings: true };
            match run_pipeline(family, seed, attempts, bound, &opts) {
                Ok(outcome) => {
                    for a in &outcome.attempts {
                        eprintln!("seed {}: {}", a.seed, describe(a));
                    }
                    out.json(&outcome)
                }
                Err(PipelineError::AttemptsExhausted { log }) => {
                    for a in &log {
                        eprintln!("seed {}: {}", a.seed, describe(a));
                    }
                    Err(math(format!("no certified member among {} attempts", log.len())))
                }
                Err(e @ PipelineError::KnownSpecial(_)) => Err(math(e)),
                Err(e) => Err(usage(e)),
            }
        }
        Command::AuditDims { family, seed, bound } => {
            let tags: Vec<FamilyTag> = family.map_or_else(|| FamilyTag::ALL.to_vec(), |t| vec![t]);
            let audits: Vec<_> = tags.iter().map(|&t| audit_dimensions(t, AUDIT_SAMPLES, seed, bound)).collect();
            eprintln!("{:>10} {:>4} {:>4} {:>6}  samples", "family", "p_K", "d_K", "dim D");
            for a in &audits {
                eprintln!("{:>10} {:>4} {:>4} {:>6}  {:?}", a.family.cli_name(), a.p_k, a.d_k, a.dim_d_k, a.per_sample);
            }
            out.json(&audits)
        }
    }
}

fn describe(a: &fourfold::pipeline::AttemptRecord) -> String {
    match (&a.stopped, a.verdict) {
        (Some(s), _) => format!("stopped at {:?}: {}", s.stage, s.reason),
        (None, Some(v)) => v.to_string(),
        (None, None) => "no verdict".into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Math(msg))) => {
            eprintln!("fourfold: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("fourfold: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(3),
    }
}

