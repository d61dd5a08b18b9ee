//! Local equivalence of the matching and interleaving distances near a module.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::functors::{InterleavingWitness, GRID_ALIGN_BUDGET};
use crate::metrics::bounds::rank_lower_bound;
use crate::metrics::matching::{matching_distance_with, LineEvaluator};
use crate::metrics::sampling::LineSample;
use crate::metrics::verify::{verify_interleaving, Verification};
use crate::presentation::Presentation;
use crate::rational::{int, rat, ExtRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentStatus {
    /// Hypothesis holds and the sampled matching distance exceeds `kappa * eps`.
    Pass,
    /// Hypothesis holds but no sampled line exceeded `kappa * eps`. Sampling
    /// only bounds the matching distance from below, so this means "not found
    /// at this resolution".
    Fail,
    /// The certified `eps` is not below `c_M / (2 (34 kappa + 1))`; nothing
    /// is claimed for this pair.
    HypothesisUnmet,
    /// The certificate has `eps = 0`.
    Trivial,
    /// No accepted certificate, so the hypothesis cannot be checked.
    Uncertified,
}

#[derive(Clone, Debug)]
pub struct LocalEquivalenceReport {
    pub kappa: Rational,
    pub controlling_constant: ExtRational,
    /// `c_M / (2 (34 kappa + 1))`.
    pub threshold: ExtRational,
    /// Rank-based lower bound for the interleaving distance.
    pub lower: ExtRational,
    /// Epsilon of the accepted certificate, an upper bound.
    pub upper: Option<Rational>,
    pub verification: Option<Verification>,
    pub hypothesis_holds: bool,
    /// Sampled matching distance.
    pub d0: ExtRational,
    /// `d0 > kappa * upper`.
    pub strict: bool,
    /// `d0 >= kappa * upper`.
    pub non_strict: bool,
    pub status: ExperimentStatus,
}

impl LocalEquivalenceReport {
    /// Whether lower and upper bounds coincide.
    pub fn exact(&self) -> bool {
        matches!((&self.lower, &self.upper), (ExtRational::Finite(l), Some(u)) if l == u)
    }
}

/// Largest admissible `kappa` is just below `1 / 34`.
pub fn check_kappa(kappa: &Rational) -> Result<()> {
    if kappa.is_negative() || *kappa >= rat(1, GRID_ALIGN_BUDGET as i64) {
        return Err(Error::KappaOutOfRange(kappa.clone()));
    }
    Ok(())
}

/// Compares the sampled matching distance of `m` and `n` against
/// `kappa * eps`, where `eps` comes from `certificate` after verification.
pub fn local_equivalence_experiment(
    m: &Presentation,
    n: &Presentation,
    kappa: &Rational,
    certificate: Option<&InterleavingWitness>,
    sample: &LineSample,
    evaluator: &dyn LineEvaluator,
) -> Result<LocalEquivalenceReport> {
    check_kappa(kappa)?;
    let c = m.betti_and_grid().controlling_constant;
    let denom = int(2) * (int(GRID_ALIGN_BUDGET as i64) * kappa + Rational::one());
    let threshold = match &c {
        ExtRational::Finite(v) => ExtRational::Finite(v / &denom),
        ExtRational::Infinite => ExtRational::Infinite,
    };
    let lower = rank_lower_bound(m, n, &[])?.value;
    let verification = certificate.map(|w| verify_interleaving(m, n, w)).transpose()?;
    let upper = match (&verification, certificate) {
        (Some(v), Some(w)) if v.accepted() => Some(w.epsilon.clone()),
        _ => None,
    };
    let d0 = matching_distance_with(m, n, sample, evaluator)?.value;

    let (strict, non_strict) = match &upper {
        Some(u) => {
            let target = ExtRational::Finite(kappa * u);
            (d0 > target, d0 >= target)
        }
        None => (false, false),
    };
    let hypothesis_holds = match &upper {
        Some(u) => ExtRational::Finite(u.clone()) < threshold,
        None => false,
    };
    let status = match &upper {
        None => ExperimentStatus::Uncertified,
        Some(u) if u.is_zero() => ExperimentStatus::Trivial,
        Some(_) if !hypothesis_holds => ExperimentStatus::HypothesisUnmet,
        Some(_) if strict => ExperimentStatus::Pass,
        Some(_) => ExperimentStatus::Fail,
    };
    Ok(LocalEquivalenceReport {
        kappa: kappa.clone(),
        controlling_constant: c,
        threshold,
        lower,
        upper,
        verification,
        hypothesis_holds,
        d0,
        strict,
        non_strict,
        status,
    })
}
