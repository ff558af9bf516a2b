//! Exact counting of nonattacking queen placements and related problems via
//! permanents of (0,1) matrices.
//!
//! The board problems covered are n-queens, toroidal n-queens, semi-queens
//! and toroidal semi-queens (equivalently, transversals of the cyclic Latin
//! square), plus the number of Latin squares and the permanent of Schur's
//! matrix. Each count is produced by a closed form that sums permanents of
//! substituted obstruction matrices, and each closed form has an
//! independent backtracking oracle next to it.
//!
//! ```
//! use nqueens_closed::{count_closed, CountOptions, ProblemTag};
//!
//! let r = count_closed(ProblemTag::Queens, 5, &CountOptions::default()).unwrap();
//! assert_eq!(r.value, 10.into());
//! ```
//!
//! Runnable walkthroughs live under `examples/`; `cargo run --example
//! closed_forms` is a good starting point.

pub mod alloc_track;
pub mod app;
pub mod counters;
pub mod error;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod transform;

pub use counters::{
    count_closed, count_latin_closed, count_oracle, det_bound, schur_permanent, CountOptions, CountResult, Method,
};
pub use error::{Error, Result};
pub use model::{
    build_latin_block, build_obstruction, build_schur_exponents, circulant_from_first_row,
    diagonally_constant_from_diagonals, Assignment, BinaryMatrix, Monomial, ObstructionMatrix, ProblemTag,
};
pub use num_bigint::BigInt;

/// Version string recorded next to cached results.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
