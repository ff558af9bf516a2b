//! Permanents of (0,1) matrices.
//!
//! [`permanent`] evaluates Ryser's inclusion-exclusion formula
//!
//! ```text
//! per(A) = sum over nonempty S of (-1)^(n - |S|) * prod_i sum_{j in S} a_ij
//! ```
//!
//! walking the column subsets in binary-reflected Gray-code order. Each step
//! toggles one column, so the `n` row sums are patched in place and the
//! whole evaluation takes `O(n 2^n)` time and `O(n)` extra space.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::BinaryMatrix;

/// Largest order evaluated with 128-bit accumulators. Every partial product
/// is at most `n^n` and there are `2^n` of them, which stays below `2^127`
/// up to here.
pub const FAST_PERMANENT_MAX: usize = 20;

/// Largest order accepted by [`permanent_naive`].
pub const NAIVE_PERMANENT_MAX: usize = 10;

pub fn permanent(m: &BinaryMatrix) -> BigInt {
    if m.n() <= FAST_PERMANENT_MAX {
        BigInt::from(permanent_i128(m))
    } else {
        permanent_big(m)
    }
}

/// Gray-code Ryser on machine integers. Requires `n <= FAST_PERMANENT_MAX`.
pub fn permanent_i128(m: &BinaryMatrix) -> i128 {
    let n = m.n();
    assert!(n <= FAST_PERMANENT_MAX, "order {n} needs the big-integer path");
    if n == 0 {
        return 1;
    }
    let rows = m.rows();
    let mut sums = [0i32; FAST_PERMANENT_MAX];
    let sums = &mut sums[..n];
    let mut total: i128 = 0;
    let mut subset = 0u64;
    for step in 1u64..1 << n {
        let col = step.trailing_zeros();
        subset ^= 1 << col;
        if subset >> col & 1 == 1 {
            for (s, &r) in sums.iter_mut().zip(rows) {
                *s += (r >> col & 1) as i32;
            }
        } else {
            for (s, &r) in sums.iter_mut().zip(rows) {
                *s -= (r >> col & 1) as i32;
            }
        }
        let mut prod: i128 = 1;
        for &s in sums.iter() {
            if s == 0 {
                prod = 0;
                break;
            }
            prod *= s as i128;
        }
        if prod != 0 {
            if (n as u32 - subset.count_ones()).is_multiple_of(2) {
                total += prod;
            } else {
                total -= prod;
            }
        }
    }
    total
}

fn permanent_big(m: &BinaryMatrix) -> BigInt {
    let n = m.n();
    let rows = m.rows();
    let mut sums = vec![0i64; n];
    let mut total = BigInt::zero();
    let mut subset = 0u64;
    for step in 1u64..1 << n {
        let col = step.trailing_zeros();
        subset ^= 1 << col;
        let delta = if subset >> col & 1 == 1 { 1 } else { -1 };
        for (s, &r) in sums.iter_mut().zip(rows) {
            *s += delta * (r >> col & 1) as i64;
        }
        if sums.contains(&0) {
            continue;
        }
        let prod = sums.iter().fold(BigInt::one(), |acc, &s| acc * s);
        if (n as u32 - subset.count_ones()).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// Literal sum over all `n!` permutations.
pub fn permanent_naive(m: &BinaryMatrix) -> Result<BigInt> {
    let n = m.n();
    if n > NAIVE_PERMANENT_MAX {
        return Err(Error::TooLarge {
            what: "naive permanent",
            n,
            limit: NAIVE_PERMANENT_MAX,
        });
    }
    fn go(m: &BinaryMatrix, row: usize, used: u64) -> u64 {
        if row == m.n() {
            return 1;
        }
        let mut total = 0;
        for col in 0..m.n() {
            if used >> col & 1 == 0 && m.get(row, col) {
                total += go(m, row + 1, used | 1 << col);
            }
        }
        total
    }
    Ok(BigInt::from(go(m, 0, 0)))
}
