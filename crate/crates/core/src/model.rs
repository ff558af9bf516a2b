//! Obstruction matrices and (0,1) matrices.
//!
//! An obstruction matrix is an `n x n` grid whose cells hold multilinear
//! monomials. Each monomial names the attack classes (diagonals, broken
//! diagonals, or cells) the square belongs to. Substituting a 0/1 value for
//! every variable turns it into a [`BinaryMatrix`].
//!
//! Conventions used throughout the crate:
//!
//! * Rows and columns are 0-based in the API. Row 0 is the top row, so
//!   cell `(n - 1, 0)` is the bottom-left corner of the board.
//! * Variable indices are 1-based, as in `x_1 .. x_m`. Variable `v` lives in
//!   bit `v - 1` of an [`Assignment`].
//! * For the two-variable families the `y` block follows the `x` block:
//!   queens map `y_d` to `2n - 1 + d`, toroidal queens map `y_d` to `n + d`.
//! * Broken-diagonal residues of `0` are written as `n`, so toroidal
//!   variables run over `1..=n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widest board a [`BinaryMatrix`] can hold; rows are stored as `u64` masks.
pub const MAX_DIM: usize = 64;

/// Largest variable count an [`Assignment`] can carry.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemTag {
    Queens,
    Toroidal,
    SemiQueens,
    ToroidalSemi,
    Latin,
    Schur,
}

impl ProblemTag {
    pub const ALL: [ProblemTag; 6] = [
        ProblemTag::Queens,
        ProblemTag::Toroidal,
        ProblemTag::SemiQueens,
        ProblemTag::ToroidalSemi,
        ProblemTag::Latin,
        ProblemTag::Schur,
    ];

    /// The four board problems that have an obstruction matrix.
    pub const BOARDS: [ProblemTag; 4] = [
        ProblemTag::Queens,
        ProblemTag::Toroidal,
        ProblemTag::SemiQueens,
        ProblemTag::ToroidalSemi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemTag::Queens => "queens",
            ProblemTag::Toroidal => "toroidal",
            ProblemTag::SemiQueens => "semi",
            ProblemTag::ToroidalSemi => "toroidal-semi",
            ProblemTag::Latin => "latin",
            ProblemTag::Schur => "schur",
        }
    }

    pub fn is_board(self) -> bool {
        Self::BOARDS.contains(&self)
    }

    pub fn is_toroidal(self) -> bool {
        matches!(self, ProblemTag::Toroidal | ProblemTag::ToroidalSemi)
    }

    /// Number of variables in the obstruction matrix for board size `n`.
    pub fn variable_count(self, n: usize) -> Option<usize> {
        match self {
            ProblemTag::Queens => Some(4 * n - 2),
            ProblemTag::Toroidal => Some(2 * n),
            ProblemTag::SemiQueens => Some(2 * n - 1),
            ProblemTag::ToroidalSemi => Some(n),
            ProblemTag::Latin => Some(n * n),
            ProblemTag::Schur => None,
        }
    }

    /// Total degree of the permanent of the obstruction matrix; this is the
    /// `k` at which the coefficient sum counts solutions.
    pub fn solution_degree(self, n: usize) -> Option<usize> {
        match self {
            ProblemTag::Queens | ProblemTag::Toroidal => Some(2 * n),
            ProblemTag::SemiQueens | ProblemTag::ToroidalSemi => Some(n),
            ProblemTag::Latin => Some(n * n),
            ProblemTag::Schur => None,
        }
    }
}

impl fmt::Display for ProblemTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ProblemTag::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| {
                format!("unknown problem `{s}` (expected queens, toroidal, semi, toroidal-semi, latin or schur)")
            })
    }
}

/// A product of one or two distinct variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: [u32; 2],
    degree: u8,
}

impl Monomial {
    pub fn single(v: u32) -> Self {
        Monomial { vars: [v, 0], degree: 1 }
    }

    pub fn pair(a: u32, b: u32) -> Self {
        debug_assert_ne!(a, b);
        Monomial { vars: [a, b], degree: 2 }
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars[..self.degree as usize]
    }

    /// Bit mask with bit `v - 1` set for every variable `v`.
    pub fn mask(&self) -> u64 {
        self.vars().iter().fold(0, |acc, &v| acc | 1u64 << (v - 1))
    }
}

/// Flat variable numbers, e.g. `v3*v9`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vars().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "v{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionMatrix {
    n: usize,
    m: usize,
    kind: ProblemTag,
    entries: Vec<Monomial>,
    cell_masks: Vec<u64>,
}

impl ObstructionMatrix {
    fn from_fn(kind: ProblemTag, n: usize, m: usize, f: impl Fn(usize, usize) -> Monomial) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        let cell_masks = entries.iter().map(Monomial::mask).collect();
        ObstructionMatrix {
            n,
            m,
            kind,
            entries,
            cell_masks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of variables.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> ProblemTag {
        self.kind
    }

    pub fn entry(&self, i: usize, j: usize) -> &Monomial {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Monomial)> {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .map(move |(idx, mono)| ((idx / n, idx % n), mono))
    }

    /// `self | s`: cell `(i, j)` is 1 iff every variable of its monomial is set.
    pub fn substitute(&self, s: &Assignment) -> Result<BinaryMatrix> {
        if s.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                got: s.len(),
            });
        }
        let mut out = BinaryMatrix::zeros(self.n)?;
        self.substitute_mask_into(s.mask(), &mut out);
        Ok(out)
    }

    /// Allocation-free substitution used by the counting loops. `out` must
    /// already have dimension `n`.
    pub fn substitute_mask_into(&self, mask: u64, out: &mut BinaryMatrix) {
        debug_assert_eq!(out.n, self.n);
        for (i, row) in out.rows.iter_mut().enumerate() {
            let cells = &self.cell_masks[i * self.n..(i + 1) * self.n];
            let mut bits = 0u64;
            for (j, &cm) in cells.iter().enumerate() {
                if mask & cm == cm {
                    bits |= 1 << j;
                }
            }
            *row = bits;
        }
    }
}

/// Maps a residue modulo `n` to the index range `1..=n`.
fn wrap(value: usize, n: usize) -> u32 {
    match value % n {
        0 => n as u32,
        r => r as u32,
    }
}

fn check_vars(m: usize) -> Result<()> {
    if m > MAX_VARS {
        Err(Error::TooManyVariables { vars: m })
    } else {
        Ok(())
    }
}

/// Builds `Q_n`, `T_n`, `S_n` or `Z_n`.
pub fn build_obstruction(kind: ProblemTag, n: usize) -> Result<ObstructionMatrix> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if !kind.is_board() {
        return Err(Error::WrongFamily(kind));
    }
    let m = kind.variable_count(n).expect("board kinds have variables");
    check_vars(m)?;
    // 1-based row i and column j, as in the index formulas.
    let nw = move |i: usize, j: usize| n - i + j;
    let ne = move |i: usize, j: usize| 2 * n - i - j + 1;
    let matrix = match kind {
        ProblemTag::Queens => ObstructionMatrix::from_fn(kind, n, m, |i, j| {
            let (i, j) = (i + 1, j + 1);
            Monomial::pair(nw(i, j) as u32, (2 * n - 1 + ne(i, j)) as u32)
        }),
        ProblemTag::Toroidal => ObstructionMatrix::from_fn(kind, n, m, |i, j| {
            let (i, j) = (i + 1, j + 1);
            Monomial::pair(wrap(nw(i, j), n), n as u32 + wrap(ne(i, j), n))
        }),
        ProblemTag::SemiQueens => ObstructionMatrix::from_fn(kind, n, m, |i, j| {
            Monomial::single(nw(i + 1, j + 1) as u32)
        }),
        ProblemTag::ToroidalSemi => ObstructionMatrix::from_fn(kind, n, m, |i, j| {
            Monomial::single(wrap(nw(i + 1, j + 1), n))
        }),
        _ => unreachable!(),
    };
    Ok(matrix)
}

/// `B_n` with `(B_n)_{i,j} = x_{i + n(j-1)}` (1-based), one fresh variable per cell.
pub fn build_latin_block(n: usize) -> Result<ObstructionMatrix> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    let m = n * n;
    check_vars(m)?;
    Ok(ObstructionMatrix::from_fn(ProblemTag::Latin, n, m, |i, j| {
        Monomial::single((i + 1 + n * j) as u32)
    }))
}

/// Exponent matrix of Schur's matrix: entry `(j, k)` is `j*k mod n`, standing
/// for `eps^(j*k)` with `eps = exp(2*pi*i/n)`.
pub fn build_schur_exponents(n: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    Ok((0..n)
        .map(|j| (0..n).map(|k| (j * k) % n).collect())
        .collect())
}

/// A point of `{0,1}^m`, packed into a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Assignment {
    bits: u64,
    len: usize,
    ones: u32,
}

impl Assignment {
    pub fn from_mask(bits: u64, len: usize) -> Result<Self> {
        check_vars(len)?;
        let bits = bits & low_mask(len);
        Ok(Assignment {
            bits,
            len,
            ones: bits.count_ones(),
        })
    }

    pub fn from_bits(values: &[bool]) -> Result<Self> {
        check_vars(values.len())?;
        let bits = values
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        Self::from_mask(bits, values.len())
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_mask(0, len)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::from_mask(u64::MAX, len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mask(&self) -> u64 {
        self.bits
    }

    /// Population count.
    pub fn count_ones(&self) -> u32 {
        self.ones
    }

    /// Value of the 1-based variable `v`.
    pub fn get(&self, v: usize) -> bool {
        v >= 1 && v <= self.len && self.bits >> (v - 1) & 1 == 1
    }
}

pub(crate) fn low_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Square (0,1) matrix; row `i` is a bit mask where bit `j` is column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::TooLarge {
                what: "binary matrix",
                n,
                limit: MAX_DIM,
            });
        }
        Ok(BinaryMatrix { n, rows: vec![0; n] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for (i, row) in m.rows.iter_mut().enumerate() {
            *row = 1 << i;
        }
        Ok(m)
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        let full = low_mask(n);
        m.rows.iter_mut().for_each(|r| *r = full);
        Ok(m)
    }

    /// Bits above column `n - 1` are discarded.
    pub fn from_row_masks(n: usize, rows: &[u64]) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::NotSquare {
                rows: rows.len(),
                row: 0,
                cols: n,
            });
        }
        let mut m = Self::zeros(n)?;
        let full = low_mask(n);
        for (dst, &src) in m.rows.iter_mut().zip(rows) {
            *dst = src & full;
        }
        Ok(m)
    }

    /// From nested rows of 0/1 values; any nonzero value counts as 1.
    pub fn from_rows<T: AsRef<[u8]>>(rows: &[T]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
            m.rows[i] = row
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &v)| acc | ((v != 0) as u64) << j);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [u64] {
        &mut self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as i64).collect())
            .collect()
    }

    /// True if some row or some column is entirely zero; permanent and
    /// determinant then vanish.
    pub fn has_zero_line(&self) -> bool {
        let mut cols = 0u64;
        for &r in &self.rows {
            if r == 0 {
                return true;
            }
            cols |= r;
        }
        cols != low_mask(self.n)
    }

    pub fn total_ones(&self) -> u32 {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    pub fn first_row(&self) -> Vec<bool> {
        (0..self.n).map(|j| self.get(0, j)).collect()
    }

    pub fn first_row_ones(&self) -> u32 {
        self.rows.first().map_or(0, |r| r.count_ones())
    }

    /// Entries read off the northwest-southeast diagonals: element `d`
    /// (0-based) is the entry of diagonal `d + 1`, starting from the
    /// bottom-left corner. Only meaningful for diagonally constant matrices.
    pub fn diagonals(&self) -> Vec<bool> {
        let n = self.n;
        (0..2 * n - 1)
            .map(|d| {
                // d = n - 1 - i + j; choose the cell with smallest row/col.
                let (i, j) = if d < n { (n - 1 - d, 0) } else { (0, d + 1 - n) };
                self.get(i, j)
            })
            .collect()
    }

    /// Number of nonzero northwest-southeast diagonals.
    pub fn nonzero_diagonals(&self) -> u32 {
        let n = self.n;
        let mut seen = 0u128;
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    seen |= 1u128 << (n - 1 - i + j);
                }
            }
        }
        seen.count_ones()
    }

    pub fn is_diagonally_constant(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            (0..self.n - 1).all(|j| self.get(i, j) == self.get(i + 1, j + 1))
        })
    }

    pub fn is_circulant(&self) -> bool {
        let n = self.n;
        (0..n.saturating_sub(1)).all(|i| (0..n).all(|j| self.get(i, j) == self.get(i + 1, (j + 1) % n)))
    }

    /// Applies row permutation `rp` and column permutation `cp`: the result
    /// has `out[i][j] = self[rp[i]][cp[j]]`.
    pub fn permuted(&self, rp: &[usize], cp: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix {
            n: self.n,
            rows: vec![0; self.n],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(rp[i], cp[j]));
            }
        }
        out
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn rotate_right(row: u64, n: usize) -> u64 {
    if n == 1 {
        return row;
    }
    ((row << 1) | (row >> (n - 1))) & low_mask(n)
}

/// Circulant matrix whose rows are successive right rotations of `first`.
pub fn circulant_from_first_row(first: &[bool]) -> Result<BinaryMatrix> {
    let n = first.len();
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    let row0 = first
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, &b)| acc | (b as u64) << j);
    let mut m = BinaryMatrix::zeros(n)?;
    fill_circulant(row0, &mut m);
    Ok(m)
}

pub(crate) fn fill_circulant(row0: u64, out: &mut BinaryMatrix) {
    let n = out.n;
    let mut row = row0;
    for r in out.rows.iter_mut() {
        *r = row;
        row = rotate_right(row, n);
    }
}

/// Diagonally constant matrix with entry `(i, j) = vals[n - 1 - i + j]`
/// (0-based), so `vals[0]` is the bottom-left corner. This is exactly
/// `S_n | s` with `s = vals`.
pub fn diagonally_constant_from_diagonals(vals: &[bool]) -> Result<BinaryMatrix> {
    let len = vals.len();
    if len.is_multiple_of(2) {
        return Err(Error::EvenDiagonalCount(len));
    }
    let n = len.div_ceil(2);
    let mask = vals
        .iter()
        .enumerate()
        .fold(0u128, |acc, (d, &b)| acc | (b as u128) << d);
    let mut m = BinaryMatrix::zeros(n)?;
    fill_diagonally_constant(mask, &mut m);
    Ok(m)
}

/// Bit `d` of `diag_mask` is the value on diagonal `d` (0-based).
pub(crate) fn fill_diagonally_constant(diag_mask: u128, out: &mut BinaryMatrix) {
    let n = out.n;
    let full = low_mask(n) as u128;
    for (i, r) in out.rows.iter_mut().enumerate() {
        // Row i reads diagonals n-1-i .. 2n-2-i across columns 0..n.
        *r = ((diag_mask >> (n - 1 - i)) & full) as u64;
    }
}
