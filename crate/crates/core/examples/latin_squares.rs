//! Latin squares counted as a signed sum of permanent powers over all
//! (0,1) matrices, next to a direct enumeration.
//!
//!     cargo run --release --example latin_squares [MAX_N]

use nqueens_closed::counters::count_latin_closed;
use nqueens_closed::oracle::latin_oracle;
use nqueens_closed::CountOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    for n in 1..=max_n {
        let closed = count_latin_closed(n, &CountOptions::default())?;
        let direct = latin_oracle(n)?;
        println!(
            "L({n}) = {}  (enumeration: {direct}, {} matrices, {:.2}s)",
            closed.value, closed.kernel_calls, closed.elapsed_s
        );
        assert_eq!(closed.value, direct);
    }
    Ok(())
}
