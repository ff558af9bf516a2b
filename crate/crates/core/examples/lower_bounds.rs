//! Determinant lower bounds, and the permanent of Schur's matrix computed in
//! the cyclotomic ring. Its magnitude matches the toroidal semi-queens
//! determinant bound, though the two come from unrelated code paths.
//!
//!     cargo run --release --example lower_bounds

use num_traits::Signed;
use nqueens_closed::{count_closed, det_bound, schur_permanent, CountOptions, ProblemTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CountOptions::default();

    println!("determinant bounds (bound <= count)");
    for problem in ProblemTag::BOARDS {
        for n in 1..=6 {
            let bound = det_bound(problem, n, &opts)?.value;
            let count = count_closed(problem, n, &opts)?.value;
            assert!(bound <= count);
            println!("  {:<14} n={n}  {bound:>6} <= {count}", problem.as_str());
        }
    }

    println!("\nSchur permanents P_n");
    for n in 1..=12 {
        let p = schur_permanent(n, &opts)?.value;
        let d = det_bound(ProblemTag::ToroidalSemi, n, &opts)?.value;
        assert_eq!(p.abs(), d);
        println!("  P_{n:<2} = {p}");
    }
    Ok(())
}
