//! Closed-form counts, determinant lower bounds and Schur's permanent.
//!
//! Every board count is `g(per(O), deg)` for the problem's obstruction
//! matrix `O`, expanded with the binomial transform. The popcount strata
//! are swept as follows:
//!
//! | problem        | variables | degree | terms swept                |
//! |----------------|-----------|--------|----------------------------|
//! | queens         | `4n - 2`  | `2n`   | assignments to `Q_n`       |
//! | toroidal       | `2n`      | `2n`   | assignments to `T_n`       |
//! | semi-queens    | `2n - 1`  | `n`    | diagonally constant `M`    |
//! | toroidal semi  | `n`       | `n`    | circulant `M`              |
//! | latin          | `n^2`     | `n^2`  | every (0,1) matrix, `per^n`|
//!
//! For the toroidal family the sign of stratum `i` is `(-1)^i`; with
//! `m = k = 2n` that is what the general transform gives.

use std::time::Instant;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{binomial_u128, cyclotomic_value, permanent_ring, RingElem};
use crate::model::{
    build_obstruction, build_schur_exponents, fill_circulant, fill_diagonally_constant, low_mask,
    BinaryMatrix, ProblemTag,
};
use crate::oracle::{count_backtracking, latin_oracle};
use crate::transform::{default_threads, g_from_profile, popcount_profile, Kernel, TermSource, WorkStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Closed,
    DetBound,
    Oracle,
    Schur,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::DetBound => "det_bound",
            Method::Oracle => "oracle",
            Method::Schur => "schur",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Method::Closed, Method::DetBound, Method::Oracle, Method::Schur]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    pub problem: ProblemTag,
    pub n: usize,
    pub method: Method,
    pub value: BigInt,
    pub elapsed_s: f64,
    pub kernel_calls: u64,
}

/// Largest `n` each closed-form pipeline runs without an explicit budget.
pub fn default_max_n(problem: ProblemTag) -> usize {
    match problem {
        ProblemTag::Queens => 7,
        ProblemTag::Toroidal => 7,
        ProblemTag::SemiQueens => 7,
        ProblemTag::ToroidalSemi => 12,
        ProblemTag::Latin => 5,
        ProblemTag::Schur => 13,
    }
}

#[derive(Debug, Clone)]
pub struct CountOptions {
    pub threads: usize,
    /// Overrides the default ceiling; compared against [`predicted_work`].
    pub max_work: Option<BigUint>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            threads: default_threads(),
            max_work: None,
        }
    }
}

impl CountOptions {
    pub fn with_threads(threads: usize) -> Self {
        CountOptions {
            threads: threads.max(1),
            ..Default::default()
        }
    }

    pub fn ceiling(&self, problem: ProblemTag) -> BigUint {
        match &self.max_work {
            Some(w) => w.clone(),
            None => predicted_work(problem, default_max_n(problem)),
        }
    }

    pub fn check(&self, problem: ProblemTag, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let predicted = predicted_work(problem, n);
        let ceiling = self.ceiling(problem);
        if predicted > ceiling {
            return Err(Error::WorkCeiling {
                problem,
                n,
                predicted: predicted.to_string(),
                ceiling: ceiling.to_string(),
            });
        }
        Ok(())
    }
}

/// Number of kernel evaluations the closed form performs:
/// `sum_{i=1..k} C(m, i)` for the problem's `(m, k)`.
pub fn predicted_terms(problem: ProblemTag, n: usize) -> BigUint {
    let (m, k) = match problem {
        ProblemTag::Schur => return (BigUint::one() << n) - 1u32,
        p => (p.variable_count(n).unwrap(), p.solution_degree(n).unwrap()),
    };
    let mut total = BigUint::zero();
    let mut c = BigUint::one();
    for i in 1..=k.min(m) {
        // C(m, i) = C(m, i-1) * (m - i + 1) / i
        c = c * BigUint::from(m - i + 1) / BigUint::from(i);
        total += &c;
    }
    total
}

/// Predicted inner-loop work: every kernel call is an `n x n` Gray-code
/// Ryser sweep costing `n 2^n`. Schur's ring permanent pays another `n^2`
/// per step for the cyclic products.
pub fn predicted_work(problem: ProblemTag, n: usize) -> BigUint {
    let per_call = BigUint::from(n) << n;
    let base = predicted_terms(problem, n) * per_call;
    match problem {
        ProblemTag::Schur => base * BigUint::from(n * n),
        _ => base,
    }
}

struct DiagonalSource {
    n: usize,
}

impl TermSource for DiagonalSource {
    fn n(&self) -> usize {
        self.n
    }

    fn m(&self) -> usize {
        2 * self.n - 1
    }

    fn fill(&self, mask: u64, out: &mut BinaryMatrix) {
        fill_diagonally_constant(mask as u128, out)
    }
}

/// Assignment to `Z_n` rendered as a circulant: variable `x_n` sits in
/// column 0 of the first row and `x_c` in column `c`.
struct CirculantSource {
    n: usize,
}

impl TermSource for CirculantSource {
    fn n(&self) -> usize {
        self.n
    }

    fn m(&self) -> usize {
        self.n
    }

    fn fill(&self, mask: u64, out: &mut BinaryMatrix) {
        let n = self.n;
        let first = if n == 1 {
            mask
        } else {
            ((mask << 1) | (mask >> (n - 1))) & low_mask(n)
        };
        fill_circulant(first, out)
    }
}

/// Every (0,1) matrix of order `n`, cell `(i, j)` read from bit `i + n j`.
struct AllMatricesSource {
    n: usize,
}

impl TermSource for AllMatricesSource {
    fn n(&self) -> usize {
        self.n
    }

    fn m(&self) -> usize {
        self.n * self.n
    }

    fn fill(&self, mask: u64, out: &mut BinaryMatrix) {
        let n = self.n;
        for (i, row) in out.rows_mut().iter_mut().enumerate() {
            *row = (0..n).fold(0, |acc, j| acc | (mask >> (i + n * j) & 1) << j);
        }
    }
}

fn board_sweep(problem: ProblemTag, n: usize, kernel: Kernel, threads: usize) -> Result<(BigInt, WorkStats)> {
    let m = problem.variable_count(n).ok_or(Error::Unsupported(problem))?;
    let k = problem.solution_degree(n).ok_or(Error::Unsupported(problem))?;
    let profile = match problem {
        ProblemTag::Queens | ProblemTag::Toroidal => {
            let o = build_obstruction(problem, n)?;
            popcount_profile(&o, kernel, k, threads)?
        }
        ProblemTag::SemiQueens => popcount_profile(&DiagonalSource { n }, kernel, k, threads)?,
        ProblemTag::ToroidalSemi => popcount_profile(&CirculantSource { n }, kernel, k, threads)?,
        p => return Err(Error::Unsupported(p)),
    };
    Ok((g_from_profile(&profile.f, m, k), profile.stats))
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_secs_f64()))
}

/// Closed-form count for one of the four board problems, with work stats.
pub fn count_closed_with_stats(
    problem: ProblemTag,
    n: usize,
    opts: &CountOptions,
) -> Result<(CountResult, WorkStats)> {
    if !problem.is_board() {
        return Err(Error::Unsupported(problem));
    }
    opts.check(problem, n)?;
    let ((value, stats), elapsed_s) = timed(|| board_sweep(problem, n, Kernel::Permanent, opts.threads))?;
    Ok((
        CountResult {
            problem,
            n,
            method: Method::Closed,
            value,
            elapsed_s,
            kernel_calls: stats.terms,
        },
        stats,
    ))
}

pub fn count_closed(problem: ProblemTag, n: usize, opts: &CountOptions) -> Result<CountResult> {
    count_closed_with_stats(problem, n, opts).map(|(r, _)| r)
}

/// `L_n = sum over all (0,1) matrices M of (-1)^(ones(M) + n) per(M)^n`.
pub fn count_latin_closed(n: usize, opts: &CountOptions) -> Result<CountResult> {
    count_latin_closed_with_stats(n, opts).map(|(r, _)| r)
}

pub fn count_latin_closed_with_stats(n: usize, opts: &CountOptions) -> Result<(CountResult, WorkStats)> {
    opts.check(ProblemTag::Latin, n)?;
    if n > 8 {
        return Err(Error::TooManyVariables { vars: n * n });
    }
    let ((value, stats), elapsed_s) = timed(|| {
        let src = AllMatricesSource { n };
        let profile = popcount_profile(&src, Kernel::PermanentPower(n as u32), n * n, opts.threads)?;
        let mut total = BigInt::zero();
        for (ones, f) in profile.f.iter().enumerate().skip(1) {
            if (ones + n).is_multiple_of(2) {
                total += f;
            } else {
                total -= f;
            }
        }
        Ok((total, profile.stats))
    })?;
    Ok((
        CountResult {
            problem: ProblemTag::Latin,
            n,
            method: Method::Closed,
            value,
            elapsed_s,
            kernel_calls: stats.terms,
        },
        stats,
    ))
}

/// `|g(det(O), deg)|`, a lower bound on the matching count.
pub fn det_bound(problem: ProblemTag, n: usize, opts: &CountOptions) -> Result<CountResult> {
    det_bound_with_stats(problem, n, opts).map(|(r, _)| r)
}

pub fn det_bound_with_stats(problem: ProblemTag, n: usize, opts: &CountOptions) -> Result<(CountResult, WorkStats)> {
    if !problem.is_board() {
        return Err(Error::Unsupported(problem));
    }
    opts.check(problem, n)?;
    let ((value, stats), elapsed_s) = timed(|| board_sweep(problem, n, Kernel::Determinant, opts.threads))?;
    Ok((
        CountResult {
            problem,
            n,
            method: Method::DetBound,
            value: value.abs(),
            elapsed_s,
            kernel_calls: stats.terms,
        },
        stats,
    ))
}

/// The ring matrix `(x^(jk mod n))` standing for Schur's matrix.
pub fn schur_matrix(n: usize) -> Result<Vec<Vec<RingElem>>> {
    Ok(build_schur_exponents(n)?
        .into_iter()
        .map(|row| row.into_iter().map(|e| RingElem::monomial(e, n)).collect())
        .collect())
}

/// Signed permanent of Schur's matrix of order `n`.
pub fn schur_permanent(n: usize, opts: &CountOptions) -> Result<CountResult> {
    opts.check(ProblemTag::Schur, n)?;
    let (value, elapsed_s) = timed(|| {
        let per = permanent_ring(&schur_matrix(n)?)?;
        cyclotomic_value(&per)
    })?;
    Ok(CountResult {
        problem: ProblemTag::Schur,
        n,
        method: Method::Schur,
        value,
        elapsed_s,
        kernel_calls: 1,
    })
}

/// Count by direct search; no kernel calls.
pub fn count_oracle(problem: ProblemTag, n: usize) -> Result<CountResult> {
    let (value, elapsed_s) = timed(|| match problem {
        ProblemTag::Latin => latin_oracle(n),
        p if p.is_board() => count_backtracking(p, n),
        p => Err(Error::Unsupported(p)),
    })?;
    Ok(CountResult {
        problem,
        n,
        method: Method::Oracle,
        value,
        elapsed_s,
        kernel_calls: 0,
    })
}

/// Predicted `sum_{i=1..k} C(m, i)` as a machine integer, when it fits.
pub fn predicted_kernel_calls(problem: ProblemTag, n: usize) -> Option<u64> {
    let (m, k) = (problem.variable_count(n)?, problem.solution_degree(n)?);
    (1..=k.min(m) as u64).try_fold(0u64, |acc, i| {
        let c = binomial_u128(m as u64, i)?;
        acc.checked_add(u64::try_from(c).ok()?)
    })
}

/// True for a nonnegative value; counts never go below zero.
pub fn is_count(v: &BigInt) -> bool {
    v.sign() != Sign::Minus
}
