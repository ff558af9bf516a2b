//! Popcount-stratified sums over the Boolean cube and the binomial
//! transform that turns them into coefficient counts.
//!
//! For a polynomial `P` in `m` variables, `f(P, i)` sums `P(s)` over all
//! 0/1 points `s` with exactly `i` ones. A term built from `j` distinct
//! variables survives at `C(m - j, i - j)` of those points, so `f` is the
//! binomial transform of `g(P, j)` (the coefficient sum of terms with exactly
//! `j` distinct variables) and `g` is recovered by the alternating inverse
//!
//! ```text
//! g(P, k) = sum_{i=1..k} (-1)^(i+k) * C(m - i, k - i) * f(P, i)
//! ```
//!
//! Here `P` is always `per` or `det` of an obstruction matrix, so `P(s)` is a
//! permanent or determinant of a (0,1) matrix.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    binomial, binomial_u128, determinant_binary, determinant_binary_i128, permanent,
    permanent_i128, FAST_PERMANENT_MAX,
};
use crate::model::{low_mask, Assignment, BinaryMatrix, ObstructionMatrix, MAX_VARS};

/// Iterates `S_{m,k}` in colexicographic order, which for bit masks is plain
/// increasing numeric order.
#[derive(Debug, Clone)]
pub struct KSubsetCursor {
    m: usize,
    k: usize,
    current: Option<u64>,
}

impl Iterator for KSubsetCursor {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let mask = self.current?;
        self.current = if self.k == 0 {
            None
        } else {
            let next = gosper_next(mask);
            (next != 0 && next & !low_mask(self.m) == 0 && next > mask).then_some(next)
        };
        Some(Assignment::from_mask(mask, self.m).expect("width checked on construction"))
    }
}

pub fn enumerate_k_subsets(m: usize, k: usize) -> Result<KSubsetCursor> {
    if m > MAX_VARS {
        return Err(Error::TooManyVariables { vars: m });
    }
    if k > m {
        return Err(Error::OutOfRange {
            index: k as i64,
            lo: 0,
            hi: m as i64,
        });
    }
    Ok(KSubsetCursor {
        m,
        k,
        current: Some(low_mask(k)),
    })
}

/// Next larger integer with the same popcount. Wraps to garbage after the
/// last 64-bit pattern; callers bound the iteration count.
#[inline]
fn gosper_next(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

/// Mask of the `rank`-th `k`-subset of `0..m` in colex order
/// (combinatorial number system).
fn unrank_colex(mut rank: u64, m: usize, k: usize) -> u64 {
    let mut mask = 0u64;
    let mut hi = m;
    for j in (1..=k).rev() {
        // Largest c < hi with C(c, j) <= rank.
        let mut c = hi - 1;
        while binomial_u128(c as u64, j as u64).unwrap() > rank as u128 {
            c -= 1;
        }
        rank -= binomial_u128(c as u64, j as u64).unwrap() as u64;
        mask |= 1 << c;
        hi = c;
    }
    mask
}

/// Function of the substituted matrix summed by `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Permanent,
    Determinant,
    /// `per(M)^p`; the block-diagonal permanent used for Latin squares.
    PermanentPower(u32),
}

/// Counters for the work a sweep performed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkStats {
    /// Kernel evaluations, one per enumerated assignment. Assignments that
    /// produce a zero row or column count here too; they are answered by the
    /// zero-line test instead of the full kernel.
    pub terms: u64,
    /// Evaluations settled by the zero-line test.
    pub zero_skips: u64,
    /// Inner-loop steps of the kernels that ran: `n` per Gray-code subset for
    /// permanents, `n^3` per determinant.
    pub inner_steps: u64,
}

impl WorkStats {
    fn merge(mut self, other: WorkStats) -> WorkStats {
        self.terms += other.terms;
        self.zero_skips += other.zero_skips;
        self.inner_steps += other.inner_steps;
        self
    }
}

/// Produces the (0,1) matrix attached to an assignment mask.
pub trait TermSource: Sync {
    fn n(&self) -> usize;
    fn m(&self) -> usize;
    fn fill(&self, mask: u64, out: &mut BinaryMatrix);
}

impl TermSource for ObstructionMatrix {
    fn n(&self) -> usize {
        ObstructionMatrix::n(self)
    }

    fn m(&self) -> usize {
        ObstructionMatrix::m(self)
    }

    fn fill(&self, mask: u64, out: &mut BinaryMatrix) {
        self.substitute_mask_into(mask, out)
    }
}

/// Integer sum that stays in `i128` until it would overflow.
#[derive(Debug, Clone, Default)]
struct ExactSum {
    small: i128,
    big: BigInt,
}

impl ExactSum {
    fn add_small(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    fn add_big(&mut self, v: BigInt) {
        self.big += v;
    }

    fn merge(mut self, other: ExactSum) -> ExactSum {
        self.add_small(other.small);
        self.big += other.big;
        self
    }

    fn value(self) -> BigInt {
        self.big + self.small
    }
}

#[derive(Default)]
struct Partial {
    sum: ExactSum,
    stats: WorkStats,
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        Partial {
            sum: self.sum.merge(other.sum),
            stats: self.stats.merge(other.stats),
        }
    }
}

fn evaluate(kernel: Kernel, m: &BinaryMatrix, acc: &mut Partial) {
    acc.stats.terms += 1;
    if m.has_zero_line() {
        acc.stats.zero_skips += 1;
        return;
    }
    let n = m.n();
    match kernel {
        Kernel::Permanent | Kernel::PermanentPower(_) => {
            acc.stats.inner_steps += ((1u64 << n) - 1) * n as u64;
            let p = kernel_power(kernel);
            if n <= FAST_PERMANENT_MAX {
                let per = permanent_i128(m);
                match per.checked_pow(p) {
                    Some(v) => acc.sum.add_small(v),
                    None => acc.sum.add_big(Pow::pow(BigInt::from(per), p)),
                }
            } else {
                acc.sum.add_big(Pow::pow(permanent(m), p));
            }
        }
        Kernel::Determinant => {
            acc.stats.inner_steps += (n * n * n) as u64;
            match determinant_binary_i128(m) {
                Some(d) => acc.sum.add_small(d),
                None => acc.sum.add_big(determinant_binary(m)),
            }
        }
    }
}

fn kernel_power(kernel: Kernel) -> u32 {
    match kernel {
        Kernel::PermanentPower(p) => p,
        _ => 1,
    }
}

/// Assignments handled per parallel task.
const CHUNK: u64 = 1 << 12;

fn sweep_chunk<S: TermSource + ?Sized>(src: &S, kernel: Kernel, ones: usize, start: u64, len: u64) -> Partial {
    let mut acc = Partial::default();
    let mut buf = BinaryMatrix::zeros(src.n()).expect("source dimension already validated");
    let mut mask = unrank_colex(start, src.m(), ones);
    for step in 0..len {
        src.fill(mask, &mut buf);
        evaluate(kernel, &buf, &mut acc);
        if step + 1 < len {
            mask = gosper_next(mask);
        }
    }
    acc
}

/// `f(P, i)` for `i = 0..=max_ones`, with `f[0]` left at zero; every stratum
/// `i >= 1` is swept in full.
#[derive(Debug, Clone)]
pub struct Profile {
    pub f: Vec<BigInt>,
    pub stats: WorkStats,
}

/// Worker count used when the caller does not pick one.
pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Sweeps the strata `1..=max_ones` of the cube. The subset stream of each
/// stratum is cut into fixed-size rank ranges, so the partition (and the
/// exact integer result) does not depend on `threads`.
pub fn popcount_profile<S: TermSource + ?Sized>(
    src: &S,
    kernel: Kernel,
    max_ones: usize,
    threads: usize,
) -> Result<Profile> {
    let m = src.m();
    if m > MAX_VARS {
        return Err(Error::TooManyVariables { vars: m });
    }
    if max_ones > m {
        return Err(Error::OutOfRange {
            index: max_ones as i64,
            lo: 1,
            hi: m as i64,
        });
    }
    let mut f = vec![BigInt::zero(); max_ones + 1];
    let mut stats = WorkStats::default();
    let pool = if threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Io(e.to_string()))?,
        )
    } else {
        None
    };
    for (ones, slot) in f.iter_mut().enumerate().skip(1) {
        let total = binomial_u128(m as u64, ones as u64).expect("C(64, k) fits") as u64;
        let chunks = total.div_ceil(CHUNK);
        let range = move |c: u64| (c * CHUNK, CHUNK.min(total - c * CHUNK));
        let part = match &pool {
            None => (0..chunks).fold(Partial::default(), |acc, c| {
                let (start, len) = range(c);
                acc.merge(sweep_chunk(src, kernel, ones, start, len))
            }),
            Some(pool) => pool.install(|| {
                (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let (start, len) = range(c);
                        sweep_chunk(src, kernel, ones, start, len)
                    })
                    .reduce(Partial::default, Partial::merge)
            }),
        };
        *slot = part.sum.value();
        stats = stats.merge(part.stats);
    }
    Ok(Profile { f, stats })
}

/// `f(P, i)` with `P = kernel(O)`, summed over all assignments with `i` ones.
pub fn f_value(o: &ObstructionMatrix, i: usize, kernel: Kernel) -> Result<BigInt> {
    if i == 0 || i > o.m() {
        return Err(Error::OutOfRange {
            index: i as i64,
            lo: 1,
            hi: o.m() as i64,
        });
    }
    let pool_threads = default_threads();
    let m = o.m();
    let total = binomial_u128(m as u64, i as u64).expect("C(64, k) fits") as u64;
    let sweep = |c: u64| sweep_chunk(o, kernel, i, c * CHUNK, CHUNK.min(total - c * CHUNK));
    let chunks = total.div_ceil(CHUNK);
    let part = if pool_threads > 1 && chunks > 1 {
        (0..chunks).into_par_iter().map(sweep).reduce(Partial::default, Partial::merge)
    } else {
        (0..chunks).map(sweep).fold(Partial::default(), Partial::merge)
    };
    Ok(part.sum.value())
}

/// Combines `f(P, 1..=k)` into `g(P, k)`; `f[0]` is ignored.
pub fn g_from_profile(f: &[BigInt], m: usize, k: usize) -> BigInt {
    let mut total = BigInt::zero();
    for (i, fi) in f.iter().enumerate().take(k + 1).skip(1) {
        let term = fi * binomial((m - i) as u64, (k - i) as i64);
        if (i + k).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `g(P, k)` for `P = kernel(O)` through the binomial-transform closed form.
pub fn g_closed_form(o: &ObstructionMatrix, k: usize, kernel: Kernel) -> Result<BigInt> {
    if k == 0 || k > o.m() {
        return Err(Error::OutOfRange {
            index: k as i64,
            lo: 1,
            hi: o.m() as i64,
        });
    }
    let profile = popcount_profile(o, kernel, k, default_threads())?;
    Ok(g_from_profile(&profile.f, o.m(), k))
}

fn check_sequence(len: usize, m: usize, l: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::OutOfRange {
            index: l as i64 - 1,
            lo: l as i64,
            hi: m as i64,
        });
    }
    let top = l + len - 1;
    if top > m {
        return Err(Error::OutOfRange {
            index: top as i64,
            lo: l as i64,
            hi: m as i64,
        });
    }
    Ok(())
}

/// `a(k) = sum_{i=l..k} b(i) C(m-i, k-i)` for `k = l..l+len`; `b[0]` is `b(l)`.
pub fn forward_transform(b: &[BigInt], m: usize, l: usize) -> Result<Vec<BigInt>> {
    check_sequence(b.len(), m, l)?;
    Ok((0..b.len())
        .map(|kk| {
            let k = l + kk;
            (0..=kk).fold(BigInt::zero(), |acc, ii| {
                let i = l + ii;
                acc + &b[ii] * binomial((m - i) as u64, (k - i) as i64)
            })
        })
        .collect())
}

/// Inverts [`forward_transform`]:
/// `b(k) = sum_{i=l..k} a(i) C(m-i, k-i) (-1)^(k-i)`.
pub fn binomial_inversion(a: &[BigInt], m: usize, l: usize) -> Result<Vec<BigInt>> {
    check_sequence(a.len(), m, l)?;
    Ok((0..a.len())
        .map(|kk| {
            let k = l + kk;
            (0..=kk).fold(BigInt::zero(), |acc, ii| {
                let i = l + ii;
                let term = &a[ii] * binomial((m - i) as u64, (k - i) as i64);
                if (k - i).is_multiple_of(2) {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect())
}

/// Sum of `kernel(O | s)` over every `s` in `{0,1}^m`, including `s = 0`.
/// Used to check that the strata partition the cube.
pub fn cube_total(o: &ObstructionMatrix, kernel: Kernel) -> Result<BigInt> {
    let mut acc = Partial::default();
    let mut buf = BinaryMatrix::zeros(o.n())?;
    for mask in 0..=low_mask(o.m()) {
        o.substitute_mask_into(mask, &mut buf);
        evaluate(kernel, &buf, &mut acc);
    }
    Ok(acc.sum.value())
}

/// `kernel(M)` as a big integer.
pub fn apply_kernel(kernel: Kernel, m: &BinaryMatrix) -> BigInt {
    let mut acc = Partial::default();
    evaluate(kernel, m, &mut acc);
    acc.sum.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_obstruction, ProblemTag};
    use num_traits::One;
    use std::collections::HashSet;

    #[test]
    fn subset_counts_and_order() {
        let only_zero: Vec<_> = enumerate_k_subsets(3, 0).unwrap().collect();
        assert_eq!(only_zero.len(), 1);
        assert_eq!(only_zero[0].mask(), 0);
        let all: Vec<_> = enumerate_k_subsets(3, 3).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].mask(), 0b111);
        let pairs: Vec<u64> = enumerate_k_subsets(4, 2).unwrap().map(|a| a.mask()).collect();
        assert_eq!(pairs, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert!(enumerate_k_subsets(3, 4).is_err());
    }

    #[test]
    fn subset_streams_are_complete_and_distinct() {
        for m in 0..=20usize {
            for k in 0..=m {
                let mut seen = HashSet::new();
                for a in enumerate_k_subsets(m, k).unwrap() {
                    assert_eq!(a.count_ones() as usize, k);
                    assert_eq!(a.len(), m);
                    assert!(seen.insert(a.mask()));
                }
                assert_eq!(BigInt::from(seen.len()), binomial(m as u64, k as i64));
            }
        }
        assert_eq!(enumerate_k_subsets(64, 63).unwrap().count(), 64);
        assert_eq!(enumerate_k_subsets(64, 64).unwrap().count(), 1);
    }

    #[test]
    fn unrank_matches_stream() {
        for m in 1..=10 {
            for k in 1..=m {
                for (rank, a) in enumerate_k_subsets(m, k).unwrap().enumerate() {
                    assert_eq!(unrank_colex(rank as u64, m, k), a.mask());
                }
            }
        }
    }

    #[test]
    fn f_examples() {
        let z1 = build_obstruction(ProblemTag::ToroidalSemi, 1).unwrap();
        assert_eq!(f_value(&z1, 1, Kernel::Permanent).unwrap(), BigInt::one());
        let s2 = build_obstruction(ProblemTag::SemiQueens, 2).unwrap();
        assert_eq!(f_value(&s2, 3, Kernel::Permanent).unwrap(), BigInt::from(2));
        let q4 = build_obstruction(ProblemTag::Queens, 4).unwrap();
        assert_eq!(f_value(&q4, 2, Kernel::Permanent).unwrap(), BigInt::zero());
        assert!(f_value(&q4, 0, Kernel::Permanent).is_err());
        assert!(f_value(&q4, 15, Kernel::Permanent).is_err());
    }

    #[test]
    fn f_matches_direct_summation() {
        for kind in ProblemTag::BOARDS {
            for n in 1..=3 {
                let o = build_obstruction(kind, n).unwrap();
                for i in 1..=o.m() {
                    for kernel in [Kernel::Permanent, Kernel::Determinant] {
                        let direct = (0..=low_mask(o.m()))
                            .filter(|mask| mask.count_ones() as usize == i)
                            .map(|mask| {
                                let s = o.substitute(&Assignment::from_mask(mask, o.m()).unwrap()).unwrap();
                                match kernel {
                                    Kernel::Determinant => determinant_binary(&s),
                                    _ => permanent(&s),
                                }
                            })
                            .fold(BigInt::zero(), |a, b| a + b);
                        assert_eq!(f_value(&o, i, kernel).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn g_examples() {
        let z1 = build_obstruction(ProblemTag::ToroidalSemi, 1).unwrap();
        assert_eq!(g_closed_form(&z1, 1, Kernel::Permanent).unwrap(), BigInt::one());
        let s2 = build_obstruction(ProblemTag::SemiQueens, 2).unwrap();
        assert_eq!(g_closed_form(&s2, 2, Kernel::Permanent).unwrap(), BigInt::one());
        let q4 = build_obstruction(ProblemTag::Queens, 4).unwrap();
        assert_eq!(g_closed_form(&q4, 8, Kernel::Permanent).unwrap(), BigInt::from(2));
        assert!(g_closed_form(&q4, 0, Kernel::Permanent).is_err());
    }

    #[test]
    fn strata_partition_the_cube() {
        for kind in ProblemTag::BOARDS {
            for n in 1..=3 {
                let o = build_obstruction(kind, n).unwrap();
                for kernel in [Kernel::Permanent, Kernel::Determinant] {
                    let zero = apply_kernel(kernel, &o.substitute(&Assignment::zeros(o.m()).unwrap()).unwrap());
                    let strata = popcount_profile(&o, kernel, o.m(), 1).unwrap();
                    let sum = strata.f.iter().fold(zero, |a, b| a + b);
                    assert_eq!(sum, cube_total(&o, kernel).unwrap());
                }
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_profile() {
        let o = build_obstruction(ProblemTag::Queens, 4).unwrap();
        let one = popcount_profile(&o, Kernel::Permanent, 8, 1).unwrap();
        for threads in [2, 3, 8] {
            let p = popcount_profile(&o, Kernel::Permanent, 8, threads).unwrap();
            assert_eq!(p.f, one.f);
            assert_eq!(p.stats, one.stats);
        }
    }

    #[test]
    fn inversion_examples() {
        let b: Vec<BigInt> = [1, 0, 0].iter().map(|&v| BigInt::from(v)).collect();
        let a = forward_transform(&b, 3, 1).unwrap();
        assert_eq!(binomial_inversion(&a, 3, 1).unwrap(), b);
        // Constant multiples of C(m, k), m = 5, l = 0.
        let a: Vec<BigInt> = (0..=5).map(|k| binomial(5, k) * 7).collect();
        let b = binomial_inversion(&a, 5, 0).unwrap();
        assert_eq!(forward_transform(&b, 5, 0).unwrap(), a);
    }

    #[test]
    fn inversion_range_checks() {
        let a = vec![BigInt::one(); 4];
        assert!(binomial_inversion(&a, 3, 1).is_err());
        assert!(binomial_inversion(&[], 3, 1).is_err());
        assert!(forward_transform(&a, 4, 1).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn forward_then_inverse_is_identity(
                raw in proptest::collection::vec(any::<i64>(), 1..=8usize),
                l in 0usize..=1,
            ) {
                let m = 8;
                let b: Vec<BigInt> = raw.iter().map(|&v| BigInt::from(v)).collect();
                let a = forward_transform(&b, m, l).unwrap();
                prop_assert_eq!(binomial_inversion(&a, m, l).unwrap(), b);
            }
        }
    }
}
