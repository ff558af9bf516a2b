//! Closed-form counts for the four board problems, checked against search.
//!
//!     cargo run --release --example closed_forms

use nqueens_closed::{count_closed, count_oracle, CountOptions, ProblemTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CountOptions::default();
    let ranges = [
        (ProblemTag::Queens, 6),
        (ProblemTag::Toroidal, 7),
        (ProblemTag::SemiQueens, 7),
        (ProblemTag::ToroidalSemi, 9),
    ];
    println!("{:<14} {:>3} {:>10} {:>10} {:>12}", "problem", "n", "closed", "search", "kernel calls");
    for (problem, max_n) in ranges {
        for n in 1..=max_n {
            let closed = count_closed(problem, n, &opts)?;
            let search = count_oracle(problem, n)?;
            assert_eq!(closed.value, search.value);
            println!(
                "{:<14} {:>3} {:>10} {:>10} {:>12}",
                problem.as_str(),
                n,
                closed.value,
                search.value,
                closed.kernel_calls
            );
        }
    }
    Ok(())
}
