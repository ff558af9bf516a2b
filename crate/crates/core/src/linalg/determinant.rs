//! Exact determinants by fraction-free (Bareiss) elimination.
//!
//! After step `k` every entry of the trailing block is a `(k+1) x (k+1)`
//! minor of the input, so the division by the previous pivot is exact and
//! nothing leaves the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::BinaryMatrix;

pub fn determinant(rows: &[Vec<i64>]) -> Result<BigInt> {
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: i,
                cols: r.len(),
            });
        }
    }
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    if let Some(d) = bareiss_i128(&mut a) {
        return Ok(BigInt::from(d));
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    Ok(bareiss_big(&mut a))
}

pub fn determinant_binary(m: &BinaryMatrix) -> BigInt {
    match determinant_binary_i128(m) {
        Some(d) => BigInt::from(d),
        None => {
            let mut a: Vec<Vec<BigInt>> = m
                .to_i64_rows()
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            bareiss_big(&mut a)
        }
    }
}

/// `None` if an intermediate overflowed 128 bits.
pub(crate) fn determinant_binary_i128(m: &BinaryMatrix) -> Option<i128> {
    const STACK: usize = 16;
    let n = m.n();
    if n <= STACK {
        let mut buf = [[0i128; STACK]; STACK];
        for (i, row) in buf.iter_mut().enumerate().take(n) {
            for (j, cell) in row.iter_mut().enumerate().take(n) {
                *cell = m.get(i, j) as i128;
            }
        }
        let mut rows: [&mut [i128]; STACK] = Default::default();
        let mut it = buf.iter_mut();
        for slot in rows.iter_mut().take(n) {
            *slot = &mut it.next().unwrap()[..n];
        }
        return bareiss_rows(&mut rows[..n]);
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) as i128).collect())
        .collect();
    bareiss_i128(&mut a)
}

fn bareiss_i128(a: &mut [Vec<i128>]) -> Option<i128> {
    let mut rows: Vec<&mut [i128]> = a.iter_mut().map(|r| r.as_mut_slice()).collect();
    bareiss_rows(&mut rows)
}

fn bareiss_rows(a: &mut [&mut [i128]]) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(pivot) => {
                    a.swap(k, pivot);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let p = pivot_row[k];
        for row in tail.iter_mut() {
            let lead = row[k];
            for j in k + 1..n {
                let num = row[j]
                    .checked_mul(p)?
                    .checked_sub(lead.checked_mul(pivot_row[j])?)?;
                row[j] = num / prev;
            }
            row[k] = 0;
        }
        prev = p;
    }
    sign.checked_mul(a[n - 1][n - 1])
}

fn bareiss_big(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let num = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = num / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
