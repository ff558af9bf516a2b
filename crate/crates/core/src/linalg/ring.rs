//! Arithmetic in `Z[x] / (x^n - 1)` and evaluation at primitive roots of unity.
//!
//! Powers of an `n`-th root of unity `eps` are represented by the monomials
//! `x^e` of the cyclic ring. Sums and products can be carried out exactly
//! there; the complex value is recovered by reducing modulo the `n`-th
//! cyclotomic polynomial, whose roots are exactly the primitive `n`-th roots.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Element of `Z[x] / (x^n - 1)`; `coeffs[e]` multiplies `x^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    coeffs: Vec<BigInt>,
}

impl RingElem {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus > 0, "ring modulus must be positive");
        RingElem {
            coeffs: vec![BigInt::zero(); modulus],
        }
    }

    /// `x^exp`, with the exponent reduced modulo `modulus`.
    pub fn monomial(exp: usize, modulus: usize) -> Self {
        let mut e = Self::zero(modulus);
        e.coeffs[exp % modulus] = BigInt::one();
        e
    }

    pub fn constant(value: impl Into<BigInt>, modulus: usize) -> Self {
        let mut e = Self::zero(modulus);
        e.coeffs[0] = value.into();
        e
    }

    /// Reduces an arbitrary-length coefficient list by `x^n = 1`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T], modulus: usize) -> Self {
        let mut e = Self::zero(modulus);
        for (i, c) in coeffs.iter().enumerate() {
            e.coeffs[i % modulus] += c.clone().into();
        }
        e
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &RingElem) {
        assert_eq!(self.modulus(), other.modulus(), "mixed ring moduli");
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{e}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, rhs: &RingElem) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Add<&RingElem> for &RingElem {
    type Output = RingElem;

    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for RingElem {
    type Output = RingElem;

    fn neg(mut self) -> RingElem {
        self.coeffs.iter_mut().for_each(|c| *c = -std::mem::take(c));
        self
    }
}

/// Cyclic convolution.
impl Mul<&RingElem> for &RingElem {
    type Output = RingElem;

    fn mul(self, rhs: &RingElem) -> RingElem {
        self.check(rhs);
        let n = self.modulus();
        let mut out = RingElem::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }
}

/// Permanent of a square matrix over the cyclic ring, by Gray-code Ryser.
pub fn permanent_ring(m: &[Vec<RingElem>]) -> Result<RingElem> {
    let n = m.len();
    let modulus = match m.first().and_then(|r| r.first()) {
        Some(e) => e.modulus(),
        None => return Err(Error::ZeroSize),
    };
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: i,
                cols: row.len(),
            });
        }
        if let Some(bad) = row.iter().find(|e| e.modulus() != modulus) {
            return Err(Error::MixedModuli(modulus, bad.modulus()));
        }
    }
    if n >= 63 {
        return Err(Error::TooLarge {
            what: "ring permanent",
            n,
            limit: 62,
        });
    }

    let mut sums = vec![RingElem::zero(modulus); n];
    let mut total = RingElem::zero(modulus);
    let mut subset = 0u64;
    for step in 1u64..1 << n {
        let col = step.trailing_zeros() as usize;
        subset ^= 1 << col;
        let added = subset >> col & 1 == 1;
        for (s, row) in sums.iter_mut().zip(m) {
            if added {
                *s += &row[col];
            } else {
                *s -= &row[col];
            }
        }
        if sums.iter().any(RingElem::is_zero) {
            continue;
        }
        let prod = sums[1..].iter().fold(sums[0].clone(), |acc, s| &acc * s);
        if (n as u32 - subset.count_ones()).is_multiple_of(2) {
            total += &prod;
        } else {
            total -= &prod;
        }
    }
    Ok(total)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `num / den` for integer polynomials (ascending coefficients) where `den`
/// is monic; returns `(quotient, remainder)`.
fn div_rem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = std::mem::take(&mut rem[top]);
        if c.is_zero() {
            continue;
        }
        let shift = top - dd;
        for (k, d) in den.iter().enumerate().take(dd) {
            rem[shift + k] -= &c * d;
        }
        quot[shift] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

/// The `n`-th cyclotomic polynomial, ascending coefficients, obtained by
/// dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n > 0, "cyclotomic polynomial index must be positive");
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = div_rem_monic(&p, &cyclotomic_polynomial(d));
        debug_assert!(r.iter().all(Zero::is_zero));
        p = q;
    }
    p
}

/// Value of `e` at a primitive `n`-th root of unity (`n = e.modulus()`),
/// provided it is a rational integer.
pub fn cyclotomic_value(e: &RingElem) -> Result<BigInt> {
    let n = e.modulus();
    let phi = cyclotomic_polynomial(n);
    let (_, rem) = div_rem_monic(e.coeffs(), &phi);
    if rem.iter().skip(1).any(|c| !c.is_zero()) {
        return Err(Error::NotRational { order: n });
    }
    Ok(rem.into_iter().next().unwrap_or_default())
}
