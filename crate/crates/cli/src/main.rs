//! `sumset` — compute sumset variants, evaluate lower bounds, classify
//! extremal structure and run exhaustive window sweeps.
//!
//! Exit codes form a stable contract:
//!   0  success / no violations
//!   1  verification or fixture failures (report still emitted)
//!   2  usage errors (bad flags, unparsable sets, invalid configs)
//!   3  infeasible mathematical preconditions (e.g. h > k)

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sumset_core::bounds::{lower_bound, BoundError, BoundKind};
use sumset_core::inverse::classify;
use sumset_core::search::{
    fixture_suite, run_verify, Constraint, FixtureExpectation, SearchConfig, SearchError, VerifyMode,
};
use sumset_core::set::{IntegerSet, SetError};
use sumset_core::sumset::{compute, EngineError, SumsetKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Ordinary,
    Restricted,
    Signed,
    RestrictedSigned,
}

impl From<KindArg> for SumsetKind {
    fn from(value: KindArg) -> Self {
        match value {
            KindArg::Ordinary => SumsetKind::Ordinary,
            KindArg::Restricted => SumsetKind::Restricted,
            KindArg::Signed => SumsetKind::Signed,
            KindArg::RestrictedSigned => SumsetKind::RestrictedSigned,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundArg {
    RestrictedDirect,
    SignedPositiveGeneral,
    SignedNonnegGeneral,
    PositiveMidRange,
    NonnegMidRange,
    PositiveFullK,
    NonnegFullK,
    HPlusOneCase,
}

impl From<BoundArg> for BoundKind {
    fn from(value: BoundArg) -> Self {
        match value {
            BoundArg::RestrictedDirect => BoundKind::RestrictedDirect,
            BoundArg::SignedPositiveGeneral => BoundKind::SignedPositiveGeneral,
            BoundArg::SignedNonnegGeneral => BoundKind::SignedNonnegGeneral,
            BoundArg::PositiveMidRange => BoundKind::PositiveMidRange,
            BoundArg::NonnegMidRange => BoundKind::NonnegMidRange,
            BoundArg::PositiveFullK => BoundKind::PositiveFullK,
            BoundArg::NonnegFullK => BoundKind::NonnegFullK,
            BoundArg::HPlusOneCase => BoundKind::HPlusOneCase,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstraintArg {
    Zero,
    Positive,
    Absdisjoint,
}

impl From<ConstraintArg> for Constraint {
    fn from(value: ConstraintArg) -> Self {
        match value {
            ConstraintArg::Zero => Constraint::ContainsZero,
            ConstraintArg::Positive => Constraint::AllPositive,
            ConstraintArg::Absdisjoint => Constraint::AbsDisjoint,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Direct,
    Inverse,
}

#[derive(Parser, Debug)]
#[command(
    name = "sumset",
    version,
    about = "Sumset computation, lower-bound checking and exhaustive verification for integer sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for the command's report.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one sumset variant of a set.
    Compute {
        /// Set literal, e.g. `0,1,2,4,6`.
        #[arg(long)]
        set: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        h: u32,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Evaluate a lower-bound formula at (h, k).
    Bound {
        #[arg(long, value_enum)]
        kind: BoundArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        h: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Sweep every canonical set in a window, checking bounds (direct)
    /// or inverse predictions.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        h: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Window bound M: sets satisfy a_k <= M.
        #[arg(long)]
        max: i64,
        #[arg(long, value_enum)]
        constraint: ConstraintArg,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Worker count; the report is identical for any value.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Cursor file; resumes from it when present, updated while
        /// running.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Name every structural family a set belongs to.
    Classify {
        #[arg(long)]
        set: String,
    },
    /// Run the built-in table of known sumset values.
    Fixtures,
}

const EXIT_OK: u8 = 0;
const EXIT_VIOLATIONS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    ExitCode::from(code)
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INFEASIBLE,
            message: message.into(),
        }
    }
}

impl From<SetError> for Failure {
    fn from(err: SetError) -> Self {
        Failure::usage(err.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(err: EngineError) -> Self {
        match err {
            EngineError::ZeroH => Failure::usage(err.to_string()),
            other => Failure::infeasible(other.to_string()),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(err: BoundError) -> Self {
        match err {
            BoundError::Inapplicable { .. } => Failure::infeasible(err.to_string()),
            BoundError::Engine(engine) => engine.into(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(err: SearchError) -> Self {
        match err {
            SearchError::Engine(engine) => engine.into(),
            SearchError::Bound(bound) => bound.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute { set, h, kind } => cmd_compute(&set, h, kind.into(), cli.format),
        Command::Bound { kind, h, k } => cmd_bound(kind.into(), h, k as usize, cli.format),
        Command::Verify {
            h,
            k,
            max,
            constraint,
            mode,
            jobs,
            checkpoint,
        } => cmd_verify(
            h,
            k as usize,
            max,
            constraint.into(),
            mode,
            jobs as usize,
            checkpoint,
            cli.format,
        ),
        Command::Classify { set } => cmd_classify(&set, cli.format),
        Command::Fixtures => cmd_fixtures(cli.format),
    }
}

fn cmd_compute(literal: &str, h: u32, kind: SumsetKind, format: OutputFormat) -> Result<u8, Failure> {
    let a = IntegerSet::parse(literal)?;
    let result = compute(kind, &a, h)?;
    match format {
        OutputFormat::Human => {
            println!("kind: {}", result.kind);
            println!("h: {}", result.h);
            println!("set: {a}");
            println!("cardinality: {}", result.cardinality());
            println!("sums: {}", result.sums);
        }
        OutputFormat::Json => {
            let value = serde_json::json!({
                "set": a.to_string(),
                "kind": result.kind,
                "h": result.h,
                "cardinality": result.cardinality(),
                "min": result.sums.min_element(),
                "max": result.sums.max_element(),
                "sums": result.sums.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        OutputFormat::Csv => {
            println!("set,kind,h,cardinality,sums");
            println!(
                "\"{a}\",{},{},{},\"{}\"",
                result.kind,
                result.h,
                result.cardinality(),
                result.sums
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bound(kind: BoundKind, h: u32, k: usize, format: OutputFormat) -> Result<u8, Failure> {
    let value = lower_bound(kind, h, k)?;
    match format {
        OutputFormat::Human => println!("{kind}(h={h}, k={k}) = {value}"),
        OutputFormat::Json => {
            let out = serde_json::json!({ "kind": kind, "h": h, "k": k, "bound": value });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        OutputFormat::Csv => {
            println!("kind,h,k,bound");
            println!("{kind},{h},{k},{value}");
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    h: u32,
    k: usize,
    max: i64,
    constraint: Constraint,
    mode: ModeArg,
    jobs: usize,
    checkpoint: Option<PathBuf>,
    format: OutputFormat,
) -> Result<u8, Failure> {
    let config = SearchConfig::new(k, h, max, constraint).with_jobs(jobs);
    let mode = match mode {
        ModeArg::Direct => VerifyMode::Direct,
        ModeArg::Inverse => VerifyMode::Inverse,
    };
    let report = run_verify(&config, mode, checkpoint.as_deref())?;
    match format {
        OutputFormat::Human => {
            println!(
                "verify {mode:?} h={} k={} max={} constraint={} jobs={}",
                config.h,
                config.k,
                config.max_element,
                config.constraint.name(),
                config.jobs
            );
            println!("sets checked: {}", report.sets_checked);
            println!("violations: {}", report.violations.len());
            for v in &report.violations {
                println!("  VIOLATION {} on {}: bound {}, actual {}", v.kind, v.set, v.bound, v.actual);
            }
            println!("equality cases: {}", report.equality_cases.len());
            for case in &report.equality_cases {
                let kinds = case.kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("+");
                let classes = case.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";");
                println!(
                    "  {} attains {} at {} [{}] predicted={}",
                    case.set, case.bound, kinds, classes, case.prediction_matched
                );
            }
            println!("elapsed: {} ms", report.elapsed_ms);
        }
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Csv => print!("{}", report.to_csv()),
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VIOLATIONS })
}

fn cmd_classify(literal: &str, format: OutputFormat) -> Result<u8, Failure> {
    let a = IntegerSet::parse(literal)?;
    let classes = classify(&a);
    match format {
        OutputFormat::Human => {
            for class in &classes {
                println!("{class}");
            }
        }
        OutputFormat::Json => {
            let out = serde_json::json!({
                "set": a.to_string(),
                "classes": classes,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        OutputFormat::Csv => {
            println!("set,classes");
            let joined = classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";");
            println!("\"{a}\",\"{joined}\"");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_fixtures(format: OutputFormat) -> Result<u8, Failure> {
    let report = fixture_suite();
    match format {
        OutputFormat::Human => {
            for row in &report.rows {
                let expect = match &row.expectation {
                    FixtureExpectation::Cardinality { value } => format!("= {value}"),
                    FixtureExpectation::CardinalityAtLeast { value } => format!(">= {value}"),
                    FixtureExpectation::IntervalSet { lo, hi } => format!("set = [{lo}, {hi}]"),
                };
                println!(
                    "{} |{}^±{{{}}}| {} (actual {})",
                    if row.pass { "PASS" } else { "FAIL" },
                    row.h,
                    row.set,
                    expect,
                    row.actual_cardinality
                );
            }
        }
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Csv => print!("{}", report.to_csv()),
    }
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_VIOLATIONS })
}
