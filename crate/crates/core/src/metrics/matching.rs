//! Sampled matching distance.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fibered::fibered_barcode;
use crate::grade::LineSpec;
use crate::metrics::bottleneck::bottleneck;
use crate::metrics::sampling::{LineSample, SamplingStrategy};
use crate::metrics::{BoundKind, DistanceReport};
use crate::presentation::Presentation;
use crate::rational::ExtRational;

/// Evaluates a function on a batch of lines, possibly in parallel.
pub trait LineEvaluator {
    fn evaluate(&self, lines: &[LineSpec], f: &(dyn Fn(&LineSpec) -> ExtRational + Sync)) -> Vec<ExtRational>;
}

/// Evaluates lines one after another.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl LineEvaluator for Sequential {
    fn evaluate(&self, lines: &[LineSpec], f: &(dyn Fn(&LineSpec) -> ExtRational + Sync)) -> Vec<ExtRational> {
        lines.iter().map(f).collect()
    }
}

pub(crate) fn check_compatible(p: &Presentation, q: &Presentation) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    if p.field() != q.field() {
        return Err(Error::FieldMismatch {
            left: p.field().characteristic(),
            right: q.field().characteristic(),
        });
    }
    Ok(())
}

/// `w(L) * d_B` between the restrictions of `p` and `q` to `line`.
pub fn weighted_line_distance(p: &Presentation, q: &Presentation, line: &LineSpec) -> Result<ExtRational> {
    check_compatible(p, q)?;
    let d = bottleneck(&fibered_barcode(p, line)?, &fibered_barcode(q, line)?);
    Ok(match d {
        ExtRational::Finite(v) => ExtRational::Finite(v * line.weight()),
        ExtRational::Infinite => ExtRational::Infinite,
    })
}

pub fn matching_distance(p: &Presentation, q: &Presentation, sample: &LineSample) -> Result<DistanceReport> {
    matching_distance_with(p, q, sample, &Sequential)
}

/// Maximum of `w(L) * d_B` over the sample. Adaptive samples are refined
/// around the running maximizer; the result never drops below the plain grid
/// value.
pub fn matching_distance_with(
    p: &Presentation,
    q: &Presentation,
    sample: &LineSample,
    evaluator: &dyn LineEvaluator,
) -> Result<DistanceReport> {
    check_compatible(p, q)?;
    if sample.lines.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: sample.dim(),
        });
    }
    let (pm, qm) = (p.minimize(), q.minimize());
    let eval = |l: &LineSpec| weighted_line_distance(&pm, &qm, l).expect("inputs validated");

    let values = evaluator.evaluate(&sample.lines, &eval);
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    let mut value = values[best].clone();
    let mut argmax = sample.lines[best].clone();
    let mut evaluated = sample.lines.len();

    if let SamplingStrategy::Adaptive { rounds } = sample.strategy {
        for round in 0..rounds {
            if !value.is_finite() {
                break;
            }
            let candidates = sample.refine_around(&argmax, round);
            let vals = evaluator.evaluate(&candidates, &eval);
            evaluated += candidates.len();
            for (l, v) in candidates.into_iter().zip(vals) {
                if v > value {
                    value = v;
                    argmax = l;
                }
            }
        }
    }

    Ok(DistanceReport {
        value,
        argmax_line: Some(argmax),
        kind: BoundKind::LowerBound,
        certificate: None,
        lines_evaluated: evaluated,
    })
}

/// Sum of sampled matching distances between consecutive modules: a lower
/// bound for the matching-distance length of any path through them.
pub fn path_length_d0(path: &[Presentation], sample: &LineSample) -> Result<ExtRational> {
    path_length_d0_with(path, sample, &Sequential)
}

pub fn path_length_d0_with(
    path: &[Presentation],
    sample: &LineSample,
    evaluator: &dyn LineEvaluator,
) -> Result<ExtRational> {
    if path.len() < 2 {
        return Err(Error::PathTooShort);
    }
    let mut total = ExtRational::zero();
    for w in path.windows(2) {
        let d = matching_distance_with(&w[0], &w[1], sample, evaluator)?.value;
        total = match (total, d) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinite,
        };
    }
    Ok(total)
}
