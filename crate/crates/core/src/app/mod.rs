//! The `nqueens` command line: argument parsing, reference data, the result
//! cache and the verify/bench drivers.
//!
//! [`run`] takes the argument list and returns an [`Outcome`] instead of
//! printing or exiting, so every subcommand can be driven from tests.
//!
//! Exit codes: 0 success, 1 internal error or failed check, 2 usage error,
//! 3 refusal because a count is over its work ceiling.

pub mod cache;
pub mod commands;
pub mod reference;
pub mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use self::cache::Cache;
use self::commands::{
    bench, bench_cells, compare_reference, methods_for, render_checks, render_ref_checks, run_method, verify, MethodArg,
    NRange, BENCH_COLUMNS,
};
use self::reference::{load_reference, KNOWN_SERIES};
use self::report::{render, Format};
use crate::counters::{default_max_n, predicted_work, CountOptions, CountResult, Method};
use crate::error::Error;
use crate::model::ProblemTag;
use crate::transform::default_threads;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CEILING: i32 = 3;

/// Cache location used when neither `--cache-file` nor `NQUEENS_CACHE` is set.
pub const DEFAULT_CACHE_FILE: &str = ".nqueens-cache.jsonl";

#[derive(Debug, Parser)]
#[command(name = "nqueens", version, about = "Exact queen-placement counts via permanent closed forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count solutions with the closed form, the oracle, or both.
    Count(CountArgs),
    /// Determinant lower bound, or the Schur permanent for `--problem schur`.
    Bound(BoundArgs),
    /// Run the oracle-equivalence and inequality-chain suites.
    Verify(VerifyArgs),
    /// Measure closed-form work growth across a range of n.
    Bench(BenchArgs),
    /// Compare computed values against OEIS b-files.
    Reference(ReferenceArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Work ceiling overriding the per-problem default.
    #[arg(long, value_name = "BIGINT", value_parser = parse_biguint)]
    pub max_work: Option<BigUint>,
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Neither read nor write the result cache.
    #[arg(long)]
    pub no_cache: bool,
    /// Cache file (default: $NQUEENS_CACHE or ./.nqueens-cache.jsonl).
    #[arg(long, value_name = "PATH")]
    pub cache_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_parser = parse_problem)]
    pub problem: ProblemTag,
    /// INT or inclusive range A..B.
    #[arg(long, value_name = "INT|A..B")]
    pub n: NRange,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = parse_problem)]
    pub problem: ProblemTag,
    #[arg(long, value_name = "INT|A..B")]
    pub n: NRange,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A problem name or `all`.
    #[arg(long, default_value = "all")]
    pub problem: String,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Directory of b-files to compare against as well.
    #[arg(long, value_name = "DIR")]
    pub against_reference: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_parser = parse_problem, default_value = "toroidal-semi")]
    pub problem: ProblemTag,
    /// Omitted means an empty range.
    #[arg(long, value_name = "INT|A..B")]
    pub n: Option<NRange>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct ReferenceArgs {
    /// b-files to check.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Series id, when file names are not of the form bNNNNNN.txt.
    #[arg(long)]
    pub series: Option<String>,
    /// Ignore entries for boards larger than this.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Use the closed form only up to this order and the oracle beyond.
    #[arg(long)]
    pub closed_max_n: Option<usize>,
    #[command(flatten)]
    pub run: RunArgs,
}

fn parse_problem(s: &str) -> Result<ProblemTag, String> {
    s.parse()
}

fn parse_biguint(s: &str) -> Result<BigUint, String> {
    s.parse().map_err(|_| format!("`{s}` is not a nonnegative integer"))
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(&mut self, e: &Error) {
        let _ = writeln!(self.stderr, "error: {e}");
        self.code = exit_code(e);
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::WorkCeiling { .. } | Error::TooLarge { .. } | Error::TooManyVariables { .. } => EXIT_CEILING,
        Error::Unsupported(_) | Error::ZeroSize | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let mut out = Outcome {
                code,
                ..Default::default()
            };
            if e.use_stderr() {
                out.stderr = text;
            } else {
                out.stdout = text;
            }
            out
        }
    }
}

pub fn execute(cli: Cli) -> Outcome {
    let mut out = Outcome::default();
    match cli.command {
        Command::Count(a) => cmd_count(&a, &mut out),
        Command::Bound(a) => cmd_bound(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
        Command::Bench(a) => cmd_bench(&a, &mut out),
        Command::Reference(a) => cmd_reference(&a, &mut out),
    }
    out
}

fn options(run: &RunArgs, problems: &[ProblemTag], out: &mut Outcome) -> CountOptions {
    let opts = CountOptions {
        threads: run.threads.unwrap_or_else(default_threads).max(1),
        max_work: run.max_work.clone(),
    };
    if let Some(w) = &opts.max_work {
        for &p in problems {
            if *w > predicted_work(p, default_max_n(p)) {
                let _ = writeln!(
                    out.stderr,
                    "warning: --max-work {w} is above the default ceiling for {p}; closed-form time grows as \
                     O(n*32^n) for queens, O(n*8^n) for toroidal and semi, O(n*4^n) for toroidal-semi"
                );
                break;
            }
        }
    }
    opts
}

fn cache_for(args: &CacheArgs) -> Option<Cache> {
    if args.no_cache {
        return None;
    }
    let path = args
        .cache_file
        .clone()
        .or_else(|| std::env::var_os("NQUEENS_CACHE").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE));
    Some(Cache::new(path))
}

/// Runs one count, consulting and filling the cache.
fn cached_run(
    cache: Option<&Cache>,
    p: ProblemTag,
    n: usize,
    method: Method,
    opts: &CountOptions,
    out: &mut Outcome,
) -> Result<CountResult, Error> {
    // The Schur permanent is cached under its own method name.
    let key = match (p, method) {
        (ProblemTag::Schur, Method::Closed | Method::DetBound) => Method::Schur,
        _ => method,
    };
    if let Some(c) = cache {
        match c.lookup(p, n, key) {
            Ok(Some(hit)) => return Ok(hit),
            Ok(None) => {}
            Err(e) => {
                let _ = writeln!(out.stderr, "warning: cache read failed: {e}");
            }
        }
    }
    let r = run_method(p, n, key, opts)?;
    if let Some(c) = cache {
        if let Err(e) = c.append(&r) {
            let _ = writeln!(out.stderr, "warning: cache write failed: {e}");
        }
    }
    Ok(r)
}

fn cmd_count(a: &CountArgs, out: &mut Outcome) {
    counting(a.problem, a.n, methods_for(a.method), a.format, &a.run, &a.cache, out);
}

fn cmd_bound(a: &BoundArgs, out: &mut Outcome) {
    // The Schur permanent is dispatched from the bound method by `run_method`.
    counting(a.problem, a.n, &[Method::DetBound], a.format, &a.run, &a.cache, out);
}

fn counting(
    problem: ProblemTag,
    range: NRange,
    methods: &[Method],
    format: Format,
    run: &RunArgs,
    cache: &CacheArgs,
    out: &mut Outcome,
) {
    let opts = options(run, &[problem], out);
    let cache = cache_for(cache);
    let mut results = Vec::new();
    for n in range.iter() {
        let mut per_n = Vec::new();
        for &m in methods {
            match cached_run(cache.as_ref(), problem, n, m, &opts, out) {
                Ok(r) => per_n.push(r),
                Err(e) => {
                    out.stdout = render(&results, format);
                    return out.fail(&e);
                }
            }
        }
        if let [closed, oracle] = per_n.as_slice() {
            if closed.value != oracle.value {
                let _ = writeln!(
                    out.stderr,
                    "mismatch: {problem} n={n} closed={} oracle={}",
                    closed.value, oracle.value
                );
                out.code = EXIT_INTERNAL;
            }
        }
        results.extend(per_n);
    }
    out.stdout = render(&results, format);
}

fn cmd_verify(a: &VerifyArgs, out: &mut Outcome) {
    let problems: Vec<ProblemTag> = if a.problem == "all" {
        ProblemTag::ALL.to_vec()
    } else {
        match a.problem.parse() {
            Ok(p) => vec![p],
            Err(e) => {
                let _ = writeln!(out.stderr, "error: {e}");
                out.code = EXIT_USAGE;
                return;
            }
        }
    };
    let opts = options(&a.run, &problems, out);
    let checks = match verify(&problems, a.max_n, &opts) {
        Ok(c) => c,
        Err(e) => return out.fail(&e),
    };
    out.stdout = render_checks(&checks);
    if checks.iter().any(|c| !c.passed) {
        out.code = EXIT_INTERNAL;
    }
    if let Some(dir) = &a.against_reference {
        for spec in KNOWN_SERIES {
            if !problems.contains(&spec.problem) {
                continue;
            }
            let path = dir.join(spec.file);
            if !path.exists() {
                continue;
            }
            reference_one(&path, Some(spec.id), Some(a.max_n), None, &opts, out);
        }
    }
}

fn reference_one(
    path: &Path,
    series: Option<&str>,
    max_n: Option<usize>,
    closed_max_n: Option<usize>,
    opts: &CountOptions,
    out: &mut Outcome,
) {
    let checks = load_reference(path, series).and_then(|s| compare_reference(&s, max_n, closed_max_n, opts));
    match checks {
        Ok(checks) => {
            out.stdout.push_str(&render_ref_checks(&checks));
            if checks.iter().any(|c| c.matches() == Some(false)) {
                out.code = EXIT_INTERNAL;
            }
        }
        Err(e) => {
            let _ = writeln!(out.stderr, "error: {}: {e}", path.display());
            out.code = out.code.max(exit_code(&e));
        }
    }
}

fn cmd_reference(a: &ReferenceArgs, out: &mut Outcome) {
    let problems: Vec<ProblemTag> = KNOWN_SERIES.iter().map(|s| s.problem).collect();
    let opts = options(&a.run, &problems, out);
    for f in &a.files {
        reference_one(f, a.series.as_deref(), a.max_n, a.closed_max_n, &opts, out);
    }
}

fn cmd_bench(a: &BenchArgs, out: &mut Outcome) {
    let opts = options(&a.run, &[a.problem], out);
    let range = a.n.unwrap_or(NRange { lo: 1, hi: 0 });
    let (rows, notes) = match bench(a.problem, range, &opts) {
        Ok(x) => x,
        Err(e) => return out.fail(&e),
    };
    for note in notes {
        let _ = writeln!(out.stderr, "note: {note}");
    }
    let mut s = String::new();
    match a.format {
        Format::Plain => {
            let _ = writeln!(s, "{}", BENCH_COLUMNS.map(|c| format!("{c:>16}")).join(""));
            for r in &rows {
                let _ = writeln!(s, "{}", bench_cells(r).map(|c| format!("{c:>16}")).join(""));
            }
        }
        Format::Csv => {
            let _ = writeln!(s, "{}", BENCH_COLUMNS.join(","));
            for r in &rows {
                let _ = writeln!(s, "{}", bench_cells(r).join(","));
            }
        }
        Format::Json => {
            for r in &rows {
                let v = json!({
                    "problem": a.problem.as_str(),
                    "n": r.n,
                    "kernel_calls": r.kernel_calls,
                    "predicted_calls": r.predicted_calls,
                    "zero_skips": r.stats.zero_skips,
                    "inner_steps": r.stats.inner_steps,
                    "elapsed_s": r.elapsed_s,
                    "ratio": r.ratio,
                    "predicted_ratio": r.predicted_ratio,
                    "peak_bytes": r.peak_bytes,
                });
                let _ = writeln!(s, "{v}");
            }
        }
    }
    out.stdout = s;
}
