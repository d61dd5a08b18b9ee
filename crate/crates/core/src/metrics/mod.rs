//! Distances between presentations and certificates for them.

pub mod bottleneck;
pub mod bounds;
pub mod experiment;
pub mod matching;
pub mod sampling;
pub mod verify;

use crate::functors::InterleavingWitness;
use crate::grade::LineSpec;
use crate::rational::ExtRational;

pub use bottleneck::{bottleneck, bottleneck_assignment, bottleneck_matching, Assignment};
pub use bounds::rank_lower_bound;
pub use experiment::{local_equivalence_experiment, ExperimentStatus, LocalEquivalenceReport};
pub use matching::{
    matching_distance, matching_distance_with, path_length_d0, path_length_d0_with, weighted_line_distance,
    LineEvaluator, Sequential,
};
pub use sampling::{LineSample, SamplingStrategy, DEFAULT_SLOPES};
pub use verify::{verify_interleaving, Side, Verification, VerificationFailure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Clone, Debug)]
pub struct DistanceReport {
    pub value: ExtRational,
    pub argmax_line: Option<LineSpec>,
    pub kind: BoundKind,
    pub certificate: Option<InterleavingWitness>,
    pub lines_evaluated: usize,
}
