//! Exact algorithms for finitely presented multiparameter persistence modules.
//!
//! Modules are given by graded presentations `<X | R>` over a prime field, with
//! grades in `Q^n` stored as exact rationals. On top of that representation the
//! crate provides
//!
//! * [`grade`]: the grading poset, push functions onto positively sloped lines,
//!   merge/unmerge maps and grid functions with their controlling constants;
//! * [`presentation`]: construction, minimization by cancellation, Betti data,
//!   pointwise dimensions and ranks of internal maps;
//! * [`functors`]: merge and simplification functors, the grid alignment
//!   pipeline, explicit interleaving witnesses and interpolation paths;
//! * [`fibered`]: restriction to lines and 1-parameter barcodes;
//! * [`metrics`]: bottleneck and sampled matching distances, interleaving
//!   verification, rank-based lower bounds and the local equivalence check;
//! * [`blocks`]: U-blocks from interlevel set persistence and their rectangle
//!   extensions.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blocks;
pub mod error;
pub mod fibered;
pub mod field;
pub mod functors;
pub mod grade;
pub mod linalg;
pub mod metrics;
pub mod presentation;
pub mod rational;
#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use grade::{Grade, GridFunction, LineSpec, MergeVariant};
pub use presentation::{BettiData, Generator, Presentation, Relation};
pub use rational::{ExtRational, Rational};
