use alloc::string::String;

use crate::rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("field mismatch: characteristic {left} vs {right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("relation {relation} refers to generator {index}, but there are only {count} generators")]
    GeneratorIndexOutOfRange {
        relation: usize,
        index: usize,
        count: usize,
    },

    #[error("relation {relation} has grade below generator {generator} in its support")]
    RelationBelowGenerator { relation: usize, generator: usize },

    #[error("line direction must be strictly positive in every coordinate")]
    NonPositiveDirection,

    #[error("merge radius {delta} must be non-negative and below half the controlling constant")]
    MergeRadiusTooLarge { delta: Rational },

    #[error("point is not on the grid hyperplanes")]
    NotOnGrid,

    #[error("corner set is not an antichain")]
    NotAnAntichain,

    #[error("staircase intervals need exactly two parameters")]
    StaircaseNeedsTwoParameters,

    #[error("parameter must be non-negative, got {0}")]
    NegativeParameter(Rational),

    #[error("interpolation time {0} is outside [0, 1]")]
    TimeOutOfRange(Rational),

    #[error("grid alignment needs controlling constant above 40 * {kappa_eps}")]
    GridHypothesis { kappa_eps: Rational },

    #[error("empty line sample")]
    EmptySample,

    #[error("need at least two modules on a path")]
    PathTooShort,

    #[error("kappa {0} is outside [0, 1/34)")]
    KappaOutOfRange(Rational),

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("witness shape mismatch: {0}")]
    WitnessShape(String),

    #[error("expected a 1-parameter presentation, found {0} parameters")]
    NotOneParameter(usize),

    #[error("invalid rectangle: {0}")]
    InvalidRectangle(String),
}
