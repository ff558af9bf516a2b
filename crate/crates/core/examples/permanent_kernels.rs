//! The matrix kernels on their own: Gray-code Ryser against the permutation
//! sum, Bareiss determinants, and a permanent over Z[x]/(x^n - 1).
//!
//!     cargo run --release --example permanent_kernels

use std::time::Instant;

use nqueens_closed::linalg::{
    cyclotomic_polynomial, cyclotomic_value, determinant_binary, permanent, permanent_naive, permanent_ring, RingElem,
};
use nqueens_closed::{circulant_from_first_row, BinaryMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=8 {
        let rows: Vec<Vec<u8>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect()).collect();
        let m = BinaryMatrix::from_rows(&rows)?;
        let (ryser, naive) = (permanent(&m), permanent_naive(&m)?);
        assert_eq!(ryser, naive);
        println!("random {n}x{n}: per = {ryser}, det = {}", determinant_binary(&m));
    }

    // per(J_n) = n!, far past the range where the naive sum is usable.
    let ones = BinaryMatrix::ones(20)?;
    let t = Instant::now();
    println!("per(J_20) = {} in {:?}", permanent(&ones), t.elapsed());

    let c = circulant_from_first_row(&[true, true, false, true, false, false, false])?;
    println!("\ncirculant from 1101000:\n{c}per = {}, det = {}", permanent(&c), determinant_binary(&c));

    // A 3x3 matrix of powers of x, then its value at a primitive cube root.
    let n = 3;
    let m: Vec<Vec<RingElem>> = (0..n)
        .map(|j| (0..n).map(|k| RingElem::monomial(j * k % n, n)).collect())
        .collect();
    let per = permanent_ring(&m)?;
    println!("\nper over Z[x]/(x^3-1) = {per}");
    println!("Phi_3 coefficients = {:?}", cyclotomic_polynomial(3));
    println!("value at a primitive cube root = {}", cyclotomic_value(&per)?);
    Ok(())
}
