//! Exact permanent and determinant kernels.

mod determinant;
mod permanent;
mod ring;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use determinant::{determinant, determinant_binary};
pub(crate) use determinant::determinant_binary_i128;
pub use permanent::{permanent, permanent_i128, permanent_naive, FAST_PERMANENT_MAX, NAIVE_PERMANENT_MAX};
pub use ring::{cyclotomic_polynomial, cyclotomic_value, permanent_ring, RingElem};

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut r = BigInt::one();
    for i in 0..b {
        r *= a - i;
        r /= i + 1;
    }
    r
}

/// `C(a, b)` in machine arithmetic, `None` on overflow.
pub(crate) fn binomial_u128(a: u64, b: u64) -> Option<u128> {
    if b > a {
        return Some(0);
    }
    let b = b.min(a - b);
    let mut r: u128 = 1;
    for i in 0..b as u128 {
        r = r.checked_mul(a as u128 - i)? / (i + 1);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn pascal_rule() {
        for a in 1..40u64 {
            for b in 0..=a as i64 {
                assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
                assert_eq!(BigInt::from(binomial_u128(a, b as u64).unwrap()), binomial(a, b));
            }
        }
    }
}
