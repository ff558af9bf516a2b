//! How a count is assembled. Summing the permanent of the substituted
//! obstruction matrix over all 0/1 inputs with exactly i ones gives f(i); a
//! signed binomial combination of f(1..k) isolates the coefficients of the
//! terms that use exactly k distinct variables, g(k).
//!
//!     cargo run --release --example binomial_transform

use nqueens_closed::oracle::{g_direct, symbolic_permanent};
use nqueens_closed::transform::{binomial_inversion, f_value, forward_transform, g_from_profile, Kernel};
use nqueens_closed::{build_obstruction, BigInt, ProblemTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = build_obstruction(ProblemTag::Queens, 4)?;
    println!("obstruction matrix for 4-queens:");
    for i in 0..o.n() {
        let row: Vec<String> = (0..o.n()).map(|j| format!("{:>9}", o.entry(i, j).to_string())).collect();
        println!("  {}", row.join(" "));
    }

    let m = o.m();
    // f[0] is a placeholder; the combination starts at one.
    let mut f = vec![BigInt::from(0)];
    for i in 1..=m {
        f.push(f_value(&o, i, Kernel::Permanent)?);
    }
    println!("\nf(i), i = 1..{m}: {}", join(&f[1..]));

    let expanded = symbolic_permanent(&o)?;
    println!("\n{:>3} {:>12} {:>12}", "k", "from f", "expanded");
    for k in 1..=m {
        let closed = g_from_profile(&f, m, k);
        let direct = g_direct(&expanded, k);
        assert_eq!(closed, direct);
        println!("{k:>3} {closed:>12} {direct:>12}");
    }
    println!("g at k = 2n = 8 is the 4-queens count: {}", g_from_profile(&f, m, 8));

    // The transform pair used above, applied to an arbitrary sequence.
    let b: Vec<BigInt> = [3, -1, 4, 1, -5, 9].into_iter().map(BigInt::from).collect();
    let a = forward_transform(&b, 6, 1)?;
    let back = binomial_inversion(&a, 6, 1)?;
    println!("\nb = {}\na = {}\ninverted = {}", join(&b), join(&a), join(&back));
    assert_eq!(back, b);
    Ok(())
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
