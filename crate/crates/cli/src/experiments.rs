//! Experiment drivers shared by the CLI and the acceptance suite.

use multipers_core::blocks::{block_distance, block_matching_distance, block_matching_witness, block_presentation};
use multipers_core::functors::InterleavingWitness;
use multipers_core::metrics::{
    local_equivalence_experiment, matching_distance_with, rank_lower_bound, verify_interleaving, ExperimentStatus,
    LineEvaluator, LineSample, LocalEquivalenceReport, DEFAULT_SLOPES,
};
use multipers_core::{ExtRational, Presentation, PrimeField, Rational};

use crate::format::fpres::parse_fpres;
use crate::format::witness::parse_witness;
use crate::random;
use crate::report::Report;

pub const EXAMPLE31_N: &str = include_str!("../fixtures/example31_N.fpres");
pub const EXAMPLE31_O: &str = include_str!("../fixtures/example31_O.fpres");
pub const EXAMPLE31_WITNESS: &str = include_str!("../fixtures/example31_witness.txt");

/// Minimum number of lines in the example sample.
pub const EXAMPLE31_MIN_LINES: usize = 500;

pub fn example31_modules() -> (Presentation, Presentation, InterleavingWitness) {
    let n = parse_fpres(EXAMPLE31_N).expect("fixture parses");
    let o = parse_fpres(EXAMPLE31_O).expect("fixture parses");
    let w = parse_witness(EXAMPLE31_WITNESS, n.generators().len(), o.generators().len(), n.field())
        .expect("fixture parses");
    (n, o, w)
}

/// Grid sample over both modules with at least `min_lines` lines.
pub fn sample_at_least(modules: &[&Presentation], min_lines: usize) -> anyhow::Result<LineSample> {
    let mut slopes = DEFAULT_SLOPES;
    loop {
        let s = LineSample::for_modules(modules, slopes)?;
        if s.lines.len() >= min_lines || modules[0].dim() != 2 || slopes > 1 << 12 {
            return Ok(s);
        }
        slopes *= 2;
    }
}

pub struct Example31 {
    pub d0: ExtRational,
    pub lines: usize,
    pub lower: ExtRational,
    pub upper: Rational,
    pub accepted: bool,
}

impl Example31 {
    pub fn passed(&self) -> bool {
        self.d0 == ExtRational::zero()
            && self.lines >= EXAMPLE31_MIN_LINES
            && self.lower > ExtRational::zero()
            && self.accepted
            && self.upper == Rational::from_integer(1.into())
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("example31");
        r.push("lines", self.lines)
            .ext("d0_sampled", &self.d0)
            .ext("d_I_lower", &self.lower)
            .rational("d_I_upper", &self.upper)
            .push("witness", if self.accepted { "accepted" } else { "rejected" })
            .push("status", if self.passed() { "PASS" } else { "FAIL" });
        r
    }
}

pub fn example31(evaluator: &dyn LineEvaluator) -> anyhow::Result<Example31> {
    let (n, o, w) = example31_modules();
    let sample = sample_at_least(&[&n, &o], EXAMPLE31_MIN_LINES)?;
    let d0 = matching_distance_with(&n, &o, &sample, evaluator)?;
    let lower = rank_lower_bound(&n, &o, &[])?.value;
    let accepted = verify_interleaving(&n, &o, &w)?.accepted();
    Ok(Example31 {
        d0: d0.value,
        lines: d0.lines_evaluated,
        lower,
        upper: w.epsilon,
        accepted,
    })
}

pub fn local_equivalence_report(r: &LocalEquivalenceReport) -> Report {
    let mut out = Report::new("local-equiv");
    out.rational("kappa", &r.kappa)
        .ext("controlling_constant", &r.controlling_constant)
        .ext("threshold", &r.threshold)
        .ext("d_I_lower", &r.lower);
    match &r.upper {
        Some(u) => out.rational("d_I_upper", u),
        None => out.push("d_I_upper", "none"),
    };
    if let Some(v) = &r.verification {
        match &v.failure {
            None => out.push("certificate", "accepted"),
            Some(f) => out.push("certificate", format!("rejected: {}", f)),
        };
    }
    out.push("hypothesis", r.hypothesis_holds)
        .ext("d0_sampled", &r.d0)
        .push("strict", r.strict)
        .push("non_strict", r.non_strict)
        .push("status", status_name(r.status));
    out
}

pub fn status_name(s: ExperimentStatus) -> &'static str {
    match s {
        ExperimentStatus::Pass => "PASS",
        ExperimentStatus::Fail => "FAIL",
        ExperimentStatus::HypothesisUnmet => "HYPOTHESIS-UNMET",
        ExperimentStatus::Trivial => "TRIVIAL",
        ExperimentStatus::Uncertified => "UNCERTIFIED",
    }
}

pub fn local_equivalence(
    m: &Presentation,
    n: &Presentation,
    kappa: &Rational,
    certificate: Option<&InterleavingWitness>,
    evaluator: &dyn LineEvaluator,
) -> anyhow::Result<LocalEquivalenceReport> {
    let sample = LineSample::for_modules(&[m, n], DEFAULT_SLOPES)?;
    Ok(local_equivalence_experiment(m, n, kappa, certificate, &sample, evaluator)?)
}

/// One same-kind block pair of the sandwich experiment.
#[derive(Clone, Debug)]
pub struct SandwichCase {
    pub first: multipers_core::blocks::Block,
    pub second: multipers_core::blocks::Block,
    /// Unextended distance.
    pub d: ExtRational,
    /// Distance of the extensions.
    pub extended: ExtRational,
    /// The extended distance is certified by a verified witness.
    pub certified: bool,
    /// Rank lower bound for the extensions.
    pub lower: ExtRational,
}

impl SandwichCase {
    pub fn passed(&self) -> bool {
        let twice = match &self.d {
            ExtRational::Finite(v) => ExtRational::Finite(v + v),
            ExtRational::Infinite => ExtRational::Infinite,
        };
        self.d <= self.extended && self.extended <= twice && self.certified && self.lower <= self.extended
    }
}

/// Random same-kind block pairs compared before and after extension.
pub fn sandwich(seed: u64, count: usize) -> anyhow::Result<Vec<SandwichCase>> {
    let field = PrimeField::default();
    let mut rng = random::rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let kind = random::block_kind(&mut rng);
        let x = random::block(&mut rng, kind);
        let y = random::block(&mut rng, kind);
        let d = block_distance(&x, &y).expect("same kind");
        let pair = (std::slice::from_ref(&x), std::slice::from_ref(&y));
        let extended = block_matching_distance(pair.0, pair.1);
        let (px, py) = (block_presentation(pair.0, field), block_presentation(pair.1, field));
        let certified = match block_matching_witness(pair.0, pair.1) {
            Some(w) => verify_interleaving(&px, &py, &w)?.accepted(),
            None => false,
        };
        let lower = rank_lower_bound(&px, &py, &[])?.value;
        out.push(SandwichCase {
            first: x,
            second: y,
            d,
            extended,
            certified,
            lower,
        });
    }
    Ok(out)
}

pub fn sandwich_report(cases: &[SandwichCase]) -> Report {
    let mut r = Report::new("sandwich");
    for (i, c) in cases.iter().enumerate() {
        r.push(
            &format!("case{}", i),
            format!(
                "{} | {} | d={} extended={} lower={} {}",
                c.first,
                c.second,
                crate::format::rational::format_ext(&c.d),
                crate::format::rational::format_ext(&c.extended),
                crate::format::rational::format_ext(&c.lower),
                if c.passed() { "PASS" } else { "FAIL" }
            ),
        );
    }
    let failed = cases.iter().filter(|c| !c.passed()).count();
    r.push("cases", cases.len())
        .push("failed", failed)
        .push("status", if failed == 0 { "PASS" } else { "FAIL" });
    r
}
