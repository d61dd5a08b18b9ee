//! File formats, experiments and the command-line front end for
//! `multipers-core`.

pub mod commands;
pub mod experiments;
pub mod format;
pub mod parallel;
pub mod random;
pub mod report;

pub use commands::{main_with_args, run, Outcome, RunConfig};
pub use format::FormatError;
