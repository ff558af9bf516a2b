//! Rewrites the b-files under `data/` from the search oracles (and the ring
//! permanent for Schur's matrix, cross-checked against the determinant
//! bound). Run after any change to the oracles, then review the diff.
//!
//!     cargo run --release --example regenerate_reference

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use nqueens_closed::app::reference::{series_spec, SeriesSpec};
use nqueens_closed::oracle::{count_backtracking, transversal_oracle};
use nqueens_closed::{det_bound, schur_permanent, BigInt, CountOptions, ProblemTag};
use num_bigint::BigUint;
use num_traits::Signed;

const PLAN: [(&str, &str, i64, i64); 5] = [
    ("A000170", "Number of ways of placing n nonattacking queens on an n x n board.", 0, 12),
    ("A051906", "Nonattacking queens on an n x n toroidal board.", 1, 13),
    ("A099152", "Nonattacking semi-queens on an n x n board.", 1, 12),
    ("A006717", "Transversals of the cyclic Latin square of order 2n+1.", 0, 6),
    ("A003112", "Permanent of Schur's matrix of order 2n+1.", 0, 6),
];

fn value(spec: &SeriesSpec, index: i64) -> Result<BigInt, Box<dyn std::error::Error>> {
    let Some(n) = spec.board_order(index) else {
        return Ok(BigInt::from(1)); // empty board
    };
    Ok(match spec.problem {
        ProblemTag::ToroidalSemi => {
            let v = transversal_oracle(n)?;
            assert_eq!(v, count_backtracking(ProblemTag::ToroidalSemi, n)?);
            v
        }
        ProblemTag::Schur => {
            let opts = CountOptions {
                max_work: Some(BigUint::from(1u64) << 40),
                ..Default::default()
            };
            let v = schur_permanent(n, &opts)?.value;
            assert_eq!(v.abs(), det_bound(ProblemTag::ToroidalSemi, n, &opts)?.value);
            v
        }
        p => count_backtracking(p, n)?,
    })
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    fs::create_dir_all(&dir)?;
    for (id, title, lo, hi) in PLAN {
        let spec = series_spec(id).expect("known series");
        let mut text = format!("# {id}: {title}\n# Regenerated by `cargo run --release --example regenerate_reference`.\n");
        for index in lo..=hi {
            writeln!(text, "{index} {}", value(spec, index)?)?;
        }
        fs::write(dir.join(spec.file), &text)?;
        println!("wrote {} ({} terms)", spec.file, hi - lo + 1);
    }
    Ok(())
}
