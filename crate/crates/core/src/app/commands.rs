//! Library-level drivers behind the `nqueens` subcommands. Each returns data;
//! rendering and exit codes live in the parent module.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;

use super::reference::{series_spec, ReferenceSeries};
use crate::alloc_track::measure_peak;
use crate::counters::{
    count_closed_with_stats, count_latin_closed_with_stats, count_oracle, det_bound, predicted_kernel_calls,
    schur_permanent, CountOptions, CountResult, Method,
};
use crate::error::{Error, Result};
use crate::model::ProblemTag;
use crate::oracle::{transversal_oracle, BACKTRACK_MAX, LATIN_ORACLE_MAX};
use crate::transform::WorkStats;

/// Inclusive range of board orders; `lo > hi` is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub fn single(n: usize) -> Self {
        NRange { lo: n, hi: n }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    pub fn is_empty(self) -> bool {
        self.lo > self.hi
    }
}

impl std::str::FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{s}` is not INT or A..B"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(NRange {
                lo: num(a)?,
                hi: num(b.strip_prefix('=').unwrap_or(b))?,
            }),
            None => num(s).map(NRange::single),
        }
    }
}

/// Which pipelines `count` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Closed,
    Oracle,
    Both,
    Det,
}

/// One count through one pipeline, dispatched by problem.
pub fn run_method(problem: ProblemTag, n: usize, method: Method, opts: &CountOptions) -> Result<CountResult> {
    match (method, problem) {
        (Method::Closed, ProblemTag::Latin) => count_latin_closed_with_stats(n, opts).map(|(r, _)| r),
        (Method::Closed | Method::Schur | Method::DetBound, ProblemTag::Schur) => schur_permanent(n, opts),
        (Method::Closed, p) => count_closed_with_stats(p, n, opts).map(|(r, _)| r),
        (Method::DetBound, p) => det_bound(p, n, opts),
        (Method::Oracle, p) => {
            let limit = if p == ProblemTag::Latin { LATIN_ORACLE_MAX } else { BACKTRACK_MAX };
            if n > limit {
                return Err(Error::TooLarge {
                    what: "oracle search",
                    n,
                    limit,
                });
            }
            count_oracle(p, n)
        }
        (Method::Schur, p) => Err(Error::Unsupported(p)),
    }
}

/// Expands a `count --method` choice into pipelines.
pub fn methods_for(arg: MethodArg) -> &'static [Method] {
    match arg {
        MethodArg::Closed => &[Method::Closed],
        MethodArg::Oracle => &[Method::Oracle],
        MethodArg::Both => &[Method::Closed, Method::Oracle],
        MethodArg::Det => &[Method::DetBound],
    }
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub problem: ProblemTag,
    pub n: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Eq,
    Le,
}

#[derive(Default)]
struct Memo {
    values: HashMap<(ProblemTag, usize, Method), BigInt>,
}

impl Memo {
    fn get(&mut self, p: ProblemTag, n: usize, m: Method, opts: &CountOptions) -> Result<BigInt> {
        if let Some(v) = self.values.get(&(p, n, m)) {
            return Ok(v.clone());
        }
        let v = run_method(p, n, m, opts)?.value;
        self.values.insert((p, n, m), v.clone());
        Ok(v)
    }
}

fn push(out: &mut Vec<Check>, name: &str, p: ProblemTag, n: usize, lhs: BigInt, rel: Rel, rhs: BigInt) {
    let passed = match rel {
        Rel::Eq => lhs == rhs,
        Rel::Le => lhs <= rhs,
    };
    out.push(Check {
        name: name.to_string(),
        problem: p,
        n,
        lhs,
        rhs,
        passed,
    });
}

/// Problems a verify run touches, including the ones its checks lean on.
fn verify_needs(problems: &[ProblemTag]) -> Vec<ProblemTag> {
    let mut need: Vec<ProblemTag> = problems.to_vec();
    if problems.contains(&ProblemTag::Schur) && !need.contains(&ProblemTag::ToroidalSemi) {
        need.push(ProblemTag::ToroidalSemi);
    }
    need
}

/// Refuses up front when any count a verify run needs is over its ceiling.
pub fn verify_preflight(problems: &[ProblemTag], max_n: usize, opts: &CountOptions) -> Result<()> {
    for p in verify_needs(problems) {
        for n in 1..=max_n {
            opts.check(p, n)?;
            let limit = match p {
                ProblemTag::Latin => LATIN_ORACLE_MAX,
                ProblemTag::Schur => continue,
                _ => BACKTRACK_MAX,
            };
            if n > limit {
                return Err(Error::TooLarge {
                    what: "oracle search",
                    n,
                    limit,
                });
            }
        }
    }
    Ok(())
}

/// Runs the oracle-equivalence and bound-chain suites for `n = 1..=max_n`.
pub fn verify(problems: &[ProblemTag], max_n: usize, opts: &CountOptions) -> Result<Vec<Check>> {
    verify_preflight(problems, max_n, opts)?;
    let mut memo = Memo::default();
    let mut out = Vec::new();
    let has = |p| problems.contains(&p);
    for n in 1..=max_n {
        for &p in problems {
            match p {
                ProblemTag::Schur => {
                    let s = memo.get(p, n, Method::Schur, opts)?.abs();
                    let d = memo.get(ProblemTag::ToroidalSemi, n, Method::DetBound, opts)?;
                    let ts = memo.get(ProblemTag::ToroidalSemi, n, Method::Closed, opts)?;
                    push(&mut out, "|schur| = det(TS)", p, n, s.clone(), Rel::Eq, d);
                    push(&mut out, "|schur| <= TS", p, n, s, Rel::Le, ts);
                }
                _ => {
                    let closed = memo.get(p, n, Method::Closed, opts)?;
                    let oracle = memo.get(p, n, Method::Oracle, opts)?;
                    push(&mut out, "closed = oracle", p, n, closed.clone(), Rel::Eq, oracle);
                    if p.is_board() {
                        let det = memo.get(p, n, Method::DetBound, opts)?;
                        push(&mut out, "det <= closed", p, n, det, Rel::Le, closed.clone());
                    }
                    if p == ProblemTag::ToroidalSemi {
                        push(&mut out, "closed = transversals", p, n, closed, Rel::Eq, transversal_oracle(n)?);
                    }
                }
            }
        }
        let chains = [
            (ProblemTag::Queens, ProblemTag::SemiQueens, "Q <= S"),
            (ProblemTag::Toroidal, ProblemTag::Queens, "T <= Q"),
            (ProblemTag::ToroidalSemi, ProblemTag::SemiQueens, "TS <= S"),
        ];
        for (small, big, name) in chains {
            if has(small) && has(big) {
                let a = memo.get(small, n, Method::Closed, opts)?;
                let b = memo.get(big, n, Method::Closed, opts)?;
                push(&mut out, name, big, n, a, Rel::Le, b);
            }
        }
    }
    Ok(out)
}

pub fn render_checks(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let _ = writeln!(
            s,
            "{} {:<22} {:<14} n={:<3} {} vs {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.problem.as_str(),
            c.n,
            c.lhs,
            c.rhs
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(s, "{} checks, {} failed", checks.len(), failed);
    s
}

// ---------------------------------------------------------------- reference

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefCheck {
    pub series_id: String,
    pub index: i64,
    pub n: usize,
    pub expected: BigInt,
    /// `None` when every pipeline that could produce `n` is over its limit.
    pub computed: Option<(BigInt, Method)>,
}

impl RefCheck {
    pub fn matches(&self) -> Option<bool> {
        self.computed.as_ref().map(|(v, _)| *v == self.expected)
    }
}

/// Compares a series against computed values. Entries with `n > max_n` are
/// ignored. The closed form is used up to `closed_max_n` (and within the
/// work ceiling); the oracle covers the rest as far as it reaches. Schur
/// entries always use the ring permanent, within its ceiling.
pub fn compare_reference(
    series: &ReferenceSeries,
    max_n: Option<usize>,
    closed_max_n: Option<usize>,
    opts: &CountOptions,
) -> Result<Vec<RefCheck>> {
    let spec = series_spec(&series.series_id).ok_or_else(|| Error::Parse {
        line: 0,
        message: format!("unknown series `{}`", series.series_id),
    })?;
    let p = spec.problem;
    let mut out = Vec::new();
    for (&index, expected) in &series.entries {
        let Some(n) = spec.board_order(index) else { continue };
        if max_n.is_some_and(|m| n > m) {
            continue;
        }
        let closed_ok = closed_max_n.is_none_or(|c| n <= c) && opts.check(p, n).is_ok();
        // No search exists for Schur's matrix, so the cap does not apply.
        let method = if p == ProblemTag::Schur {
            opts.check(p, n).is_ok().then_some(Method::Schur)
        } else if closed_ok {
            Some(Method::Closed)
        } else if n <= BACKTRACK_MAX {
            Some(Method::Oracle)
        } else {
            None
        };
        let computed = match method {
            Some(m) => Some((run_method(p, n, m, opts)?.value, m)),
            None => None,
        };
        out.push(RefCheck {
            series_id: series.series_id.clone(),
            index,
            n,
            expected: expected.clone(),
            computed,
        });
    }
    Ok(out)
}

pub fn render_ref_checks(checks: &[RefCheck]) -> String {
    let mut s = String::new();
    for c in checks {
        let (status, got) = match (&c.computed, c.matches()) {
            (Some((v, m)), Some(true)) => ("PASS", format!("{v} ({})", m.as_str())),
            (Some((v, m)), _) => ("FAIL", format!("{v} ({})", m.as_str())),
            (None, _) => ("SKIP", "over limit".to_string()),
        };
        let _ = writeln!(
            s,
            "{status} {} index={} n={} expected {} got {}",
            c.series_id, c.index, c.n, c.expected, got
        );
    }
    s
}

// ---------------------------------------------------------------- bench

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub kernel_calls: u64,
    pub predicted_calls: Option<u64>,
    pub stats: WorkStats,
    pub elapsed_s: f64,
    /// `inner_steps(n) / inner_steps(n - 1)` when the previous row exists.
    pub ratio: Option<f64>,
    pub predicted_ratio: Option<f64>,
    /// Peak bytes held by the calling thread; needs the tracking allocator.
    pub peak_bytes: Option<usize>,
}

/// Growth per unit `n` of the closed form's running time.
pub fn predicted_ratio(problem: ProblemTag) -> Option<f64> {
    match problem {
        ProblemTag::Queens => Some(32.0),
        ProblemTag::Toroidal | ProblemTag::SemiQueens => Some(8.0),
        ProblemTag::ToroidalSemi => Some(4.0),
        ProblemTag::Latin | ProblemTag::Schur => None,
    }
}

/// Times the closed form across `range`. Orders over the work ceiling are
/// reported in the returned notes and skipped.
pub fn bench(problem: ProblemTag, range: NRange, opts: &CountOptions) -> Result<(Vec<BenchRow>, Vec<String>)> {
    if !(problem.is_board() || problem == ProblemTag::Latin) {
        return Err(Error::Unsupported(problem));
    }
    let mut rows: Vec<BenchRow> = Vec::new();
    let mut notes = Vec::new();
    if range.is_empty() {
        return Ok((rows, notes));
    }
    for n in range.iter() {
        let (res, peak_bytes) = measure_peak(|| {
            if problem == ProblemTag::Latin {
                count_latin_closed_with_stats(n, opts)
            } else {
                count_closed_with_stats(problem, n, opts)
            }
        });
        let (r, stats) = match res {
            Ok(x) => x,
            Err(e @ Error::WorkCeiling { .. }) | Err(e @ Error::ZeroSize) => {
                notes.push(format!("n={n} skipped: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let ratio = rows
            .last()
            .filter(|prev| prev.n + 1 == n && prev.stats.inner_steps > 0)
            .map(|prev| stats.inner_steps as f64 / prev.stats.inner_steps as f64);
        rows.push(BenchRow {
            n,
            kernel_calls: r.kernel_calls,
            predicted_calls: predicted_kernel_calls(problem, n),
            stats,
            elapsed_s: r.elapsed_s,
            ratio,
            predicted_ratio: predicted_ratio(problem),
            peak_bytes,
        });
    }
    Ok((rows, notes))
}

pub const BENCH_COLUMNS: [&str; 9] = [
    "n",
    "kernel_calls",
    "predicted_calls",
    "zero_skips",
    "inner_steps",
    "elapsed_s",
    "ratio",
    "predicted_ratio",
    "peak_bytes",
];

pub fn bench_cells(r: &BenchRow) -> [String; 9] {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".to_string());
    [
        r.n.to_string(),
        r.kernel_calls.to_string(),
        opt(r.predicted_calls.map(|c| c.to_string())),
        r.stats.zero_skips.to_string(),
        r.stats.inner_steps.to_string(),
        format!("{:.4}", r.elapsed_s),
        opt(r.ratio.map(|x| format!("{x:.3}"))),
        opt(r.predicted_ratio.map(|x| format!("{x}"))),
        opt(r.peak_bytes.map(|b| b.to_string())),
    ]
}
