//! Checks the bundled OEIS b-files under `data/` against computed values.
//! Small orders go through the closed form, larger ones through search.
//!
//!     cargo run --release --example reference_check

use std::path::PathBuf;

use nqueens_closed::app::commands::compare_reference;
use nqueens_closed::app::reference::{load_reference, KNOWN_SERIES};
use nqueens_closed::CountOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let opts = CountOptions::default();
    let mut failures = 0;
    for spec in KNOWN_SERIES {
        let series = load_reference(&dir.join(spec.file), Some(spec.id))?;
        let checks = compare_reference(&series, None, Some(7), &opts)?;
        let compared = checks.iter().filter(|c| c.computed.is_some()).count();
        let bad: Vec<_> = checks.iter().filter(|c| c.matches() == Some(false)).collect();
        failures += bad.len();
        println!(
            "{} ({}): {} entries, {compared} compared, {} mismatches",
            spec.id,
            spec.problem,
            series.entries.len(),
            bad.len()
        );
        for c in bad {
            println!("  n={} expected {} got {:?}", c.n, c.expected, c.computed);
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
    Ok(())
}
