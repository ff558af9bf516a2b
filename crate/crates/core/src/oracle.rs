//! Ground truth by direct search.
//!
//! Nothing here touches the permanent or determinant kernels: the board
//! counters are row-by-row backtracking with bitmask conflict sets, and the
//! symbolic expander multiplies monomials along every permutation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ObstructionMatrix, ProblemTag};

pub const BACKTRACK_MAX: usize = 14;
pub const LATIN_ORACLE_MAX: usize = 6;
pub const SYMBOLIC_MAX: usize = 6;

/// A nonattacking placement: `perm[i]` is the column of the piece in row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub perm: Vec<usize>,
}

impl Placement {
    /// Checks the placement against the attack rule of `problem` directly,
    /// pair by pair.
    pub fn is_nonattacking(&self, problem: ProblemTag) -> bool {
        let n = self.perm.len();
        let ne_diagonals = matches!(problem, ProblemTag::Queens | ProblemTag::Toroidal);
        for a in 0..n {
            for b in a + 1..n {
                let (ra, ca) = (a as i64, self.perm[a] as i64);
                let (rb, cb) = (b as i64, self.perm[b] as i64);
                if ca == cb {
                    return false;
                }
                let (mut d1a, mut d1b, mut d2a, mut d2b) = (ra - ca, rb - cb, ra + ca, rb + cb);
                if problem.is_toroidal() {
                    let n = n as i64;
                    d1a = d1a.rem_euclid(n);
                    d1b = d1b.rem_euclid(n);
                    d2a = d2a.rem_euclid(n);
                    d2b = d2b.rem_euclid(n);
                }
                if d1a == d1b || (ne_diagonals && d2a == d2b) {
                    return false;
                }
            }
        }
        true
    }
}

struct Board {
    n: usize,
    toroidal: bool,
    ne_diagonals: bool,
}

impl Board {
    fn classes(&self, row: usize, col: usize) -> (u32, u32) {
        let n = self.n;
        if self.toroidal {
            (((row + n - col) % n) as u32, ((row + col) % n) as u32)
        } else {
            ((row + n - 1 - col) as u32, (row + col) as u32)
        }
    }

    fn count(&self, row: usize, cols: u32, nw: u32, ne: u32) -> u64 {
        if row == self.n {
            return 1;
        }
        let mut total = 0;
        for col in 0..self.n {
            if cols >> col & 1 == 1 {
                continue;
            }
            let (a, b) = self.classes(row, col);
            if nw >> a & 1 == 1 || (self.ne_diagonals && ne >> b & 1 == 1) {
                continue;
            }
            total += self.count(row + 1, cols | 1 << col, nw | 1 << a, ne | 1 << b);
        }
        total
    }
}

/// Number of nonattacking placements of `n` pieces for a board problem.
pub fn count_backtracking(problem: ProblemTag, n: usize) -> Result<BigInt> {
    if !problem.is_board() {
        return Err(Error::Unsupported(problem));
    }
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > BACKTRACK_MAX {
        return Err(Error::TooLarge {
            what: "backtracking search",
            n,
            limit: BACKTRACK_MAX,
        });
    }
    let board = Board {
        n,
        toroidal: problem.is_toroidal(),
        ne_diagonals: matches!(problem, ProblemTag::Queens | ProblemTag::Toroidal),
    };
    let total: u64 = (0..n)
        .into_par_iter()
        .map(|col| {
            let (a, b) = board.classes(0, col);
            board.count(1, 1 << col, 1 << a, 1 << b)
        })
        .sum();
    Ok(BigInt::from(total))
}

/// Transversals of the cyclic Latin square `L[i][j] = (i + j) mod n`.
pub fn transversal_oracle(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > BACKTRACK_MAX {
        return Err(Error::TooLarge {
            what: "transversal search",
            n,
            limit: BACKTRACK_MAX,
        });
    }
    fn go(n: usize, row: usize, cols: u32, symbols: u32) -> u64 {
        if row == n {
            return 1;
        }
        (0..n)
            .filter(|&c| cols >> c & 1 == 0 && symbols >> ((row + c) % n) & 1 == 0)
            .map(|c| go(n, row + 1, cols | 1 << c, symbols | 1 << ((row + c) % n)))
            .sum()
    }
    Ok(BigInt::from(go(n, 0, 0, 0)))
}

/// Number of Latin squares of order `n`. Squares with first row `0..n` are
/// counted cell by cell and multiplied by `n!` relabelings of the symbols.
pub fn latin_oracle(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > LATIN_ORACLE_MAX {
        return Err(Error::TooLarge {
            what: "Latin square search",
            n,
            limit: LATIN_ORACLE_MAX,
        });
    }
    struct Search {
        n: usize,
        rows: Vec<u32>,
        cols: Vec<u32>,
    }
    impl Search {
        fn go(&mut self, cell: usize) -> u64 {
            let n = self.n;
            if cell == n * n {
                return 1;
            }
            let (r, c) = (cell / n, cell % n);
            let mut total = 0;
            for sym in 0..n {
                let bit = 1 << sym;
                if self.rows[r] & bit != 0 || self.cols[c] & bit != 0 {
                    continue;
                }
                self.rows[r] |= bit;
                self.cols[c] |= bit;
                total += self.go(cell + 1);
                self.rows[r] &= !bit;
                self.cols[c] &= !bit;
            }
            total
        }
    }
    let mut s = Search {
        n,
        rows: vec![0; n],
        cols: vec![0; n],
    };
    for c in 0..n {
        s.rows[0] |= 1 << c;
        s.cols[c] |= 1 << c;
    }
    let reduced = s.go(n);
    let factorial = (1..=n as u64).fold(BigInt::one(), |acc, k| acc * k);
    Ok(factorial * reduced)
}

/// Polynomial with nonnegative coefficients, keyed by the sorted multiset of
/// variable indices of each term.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonomialMultiset {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MonomialMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, mut vars: Vec<u32>, coeff: impl Into<BigInt>) {
        vars.sort_unstable();
        let slot = self.terms.entry(vars).or_default();
        *slot += coeff.into();
    }

    pub fn coefficient(&self, vars: &[u32]) -> BigInt {
        let mut key = vars.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn mul(&self, other: &MonomialMultiset) -> MonomialMultiset {
        let mut out = MonomialMultiset::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut key = a.clone();
                key.extend_from_slice(b);
                out.add(key, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, p: u32) -> MonomialMultiset {
        let mut out = MonomialMultiset::new();
        out.add(Vec::new(), 1);
        for _ in 0..p {
            out = out.mul(self);
        }
        out
    }
}

/// Full expansion of `per(O)`: one term per permutation, the product of the
/// entry monomials along it.
pub fn symbolic_permanent(o: &ObstructionMatrix) -> Result<MonomialMultiset> {
    let n = o.n();
    if n > SYMBOLIC_MAX {
        return Err(Error::TooLarge {
            what: "symbolic permanent",
            n,
            limit: SYMBOLIC_MAX,
        });
    }
    fn go(o: &ObstructionMatrix, row: usize, used: u64, acc: &mut Vec<u32>, out: &mut MonomialMultiset) {
        if row == o.n() {
            out.add(acc.clone(), 1);
            return;
        }
        for col in 0..o.n() {
            if used >> col & 1 == 1 {
                continue;
            }
            let vars = o.entry(row, col).vars();
            acc.extend_from_slice(vars);
            go(o, row + 1, used | 1 << col, acc, out);
            acc.truncate(acc.len() - vars.len());
        }
    }
    let mut out = MonomialMultiset::new();
    go(o, 0, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Sum of the coefficients of terms built from exactly `k` distinct
/// variables, regardless of exponents.
pub fn g_direct(p: &MonomialMultiset, k: usize) -> BigInt {
    p.iter()
        .filter(|(vars, _)| distinct(vars) == k)
        .fold(BigInt::zero(), |acc, (_, c)| acc + c)
}

fn distinct(sorted: &[u32]) -> usize {
    if sorted.is_empty() {
        return 0;
    }
    1 + sorted.windows(2).filter(|w| w[0] != w[1]).count()
}
