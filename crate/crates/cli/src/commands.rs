//! Command-line surface.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use multipers_core::blocks::{
    block_matching, block_matching_witness, block_presentation, unextended_matching_distance,
};
use multipers_core::fibered::{barcode, fibered_barcode, restrict, simplify_barcode};
use multipers_core::functors::{
    grid_align, interpolate, merge_module, merge_module_raw, simplify, simplify_raw, JointPresentation,
    GRID_ALIGN_BUDGET,
};
use multipers_core::metrics::{
    bottleneck_matching, matching_distance_with, path_length_d0_with, rank_lower_bound, verify_interleaving,
    ExperimentStatus, LineSample, SamplingStrategy, DEFAULT_SLOPES,
};
use multipers_core::metrics::sampling::direction_for_slope;
use multipers_core::rational::rat;
use multipers_core::{Grade, GridFunction, LineSpec, MergeVariant, Presentation, Rational};
use rand::Rng;

use crate::experiments;
use crate::format::barcode::{parse_barcode, serialize_barcode};
use crate::format::blocks::{format_rectangle, parse_blocks};
use crate::format::fpres::{parse_fpres, serialize_fpres};
use crate::format::joint::parse_joint;
use crate::format::rational::{format_ext, format_rational, parse_rational};
use crate::format::witness::{parse_witness, serialize_witness};
use crate::parallel::Parallel;
use crate::report::{EmitFormat, Report};

/// Exit code for input errors.
pub const EXIT_INPUT: i32 = 1;
/// Exit code for a failed experiment or a rejected certificate.
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "multipers", version, about = "Exact tools for multiparameter persistence modules")]
pub struct RunConfig {
    /// Report layout.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: EmitFormat,
    /// Write the output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Sampling {
    /// Minimum number of slopes for 2-parameter samples.
    #[arg(long, default_value_t = DEFAULT_SLOPES)]
    pub lines: usize,
    /// Rounds of local refinement around the maximizing line.
    #[arg(long, default_value_t = 0)]
    pub adaptive: usize,
    /// Adds seeded random lines to the grid sample.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    /// Direction, comma separated, all components positive.
    #[arg(long)]
    pub direction: String,
    /// A point on the line, comma separated.
    #[arg(long)]
    pub base: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal presentation.
    Minimize { input: PathBuf },
    /// Betti grades, grid and controlling constant.
    Betti { input: PathBuf },
    /// Pointwise dimensions.
    Hilbert {
        input: PathBuf,
        /// Grade to evaluate at, comma separated; repeatable.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
    },
    /// Merge onto a Betti grid.
    Merge {
        input: PathBuf,
        #[arg(long)]
        delta: String,
        /// Take the grid from this module instead of the input.
        #[arg(long)]
        grid_from: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "two-sided")]
        variant: Variant,
        /// Skip minimization.
        #[arg(long)]
        raw: bool,
    },
    /// Image of the internal translation, shifted back.
    Simplify {
        input: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        raw: bool,
    },
    /// Simplify and merge onto a grid with budget 34 * kappa_eps.
    GridAlign {
        input: PathBuf,
        #[arg(long)]
        grid_from: PathBuf,
        #[arg(long)]
        kappa_eps: String,
        /// Write the composed witness here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Restriction to a line, as a 1-parameter presentation.
    Restrict {
        input: PathBuf,
        #[command(flatten)]
        line: LineArgs,
    },
    /// Barcode of a 1-parameter presentation, or along a line.
    Barcode {
        input: PathBuf,
        #[arg(long)]
        direction: Option<String>,
        #[arg(long)]
        base: Option<String>,
        /// Apply barcode simplification.
        #[arg(long)]
        simplify: Option<String>,
    },
    /// Sampled matching distance.
    MatchDist {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        /// Print the maximizing line.
        #[arg(long)]
        emit_argmax: bool,
    },
    /// Bottleneck distance of two barcode files.
    Bottleneck { first: PathBuf, second: PathBuf },
    /// Check an interleaving witness.
    Verify {
        first: PathBuf,
        second: PathBuf,
        witness: PathBuf,
    },
    /// Rank-based lower bound for the interleaving distance.
    LowerBound {
        first: PathBuf,
        second: PathBuf,
        /// Extra probe grade; repeatable.
        #[arg(long)]
        probe: Vec<String>,
    },
    /// Point of the interpolation path.
    Interpolate {
        /// Joint presentation file, or an FPRES file with --from-translate.
        input: PathBuf,
        #[arg(long)]
        t: String,
        /// Build the joint presentation of the input and its translate by this amount.
        #[arg(long)]
        from_translate: Option<String>,
    },
    /// Sampled matching-distance length of the interpolation path.
    PathLength {
        input: PathBuf,
        /// Waypoints in [0, 1], comma separated.
        #[arg(long, default_value = "0,1/2,1")]
        waypoints: String,
        #[arg(long)]
        from_translate: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SLOPES)]
        lines: usize,
    },
    /// Block decompositions.
    #[command(subcommand)]
    Blocks(BlocksCommand),
    /// Experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum Variant {
    TwoSided,
    Plus,
    Minus,
}

impl From<Variant> for MergeVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::TwoSided => MergeVariant::TwoSided,
            Variant::Plus => MergeVariant::Plus,
            Variant::Minus => MergeVariant::Minus,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum BlocksCommand {
    /// Extended rectangles; `--fpres` prints their direct sum instead.
    Extend {
        input: PathBuf,
        #[arg(long)]
        fpres: bool,
    },
    /// Matching distance of extensions, with the unextended distance.
    Dist { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Matching distance zero, interleaving distance positive.
    Example31,
    /// Compare the sampled matching distance with a certified interleaving.
    LocalEquiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        kappa: String,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Random block pairs before and after extension.
    Sandwich {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { code: 0, output }
    }

    fn report(r: &Report, format: EmitFormat, failed: bool) -> Self {
        Outcome {
            code: if failed { EXIT_FAIL } else { 0 },
            output: r.render(format),
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_fpres(path: &Path) -> anyhow::Result<Presentation> {
    parse_fpres(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn arg_rational(s: &str) -> anyhow::Result<Rational> {
    parse_rational(s.trim()).map_err(anyhow::Error::msg)
}

fn arg_list(s: &str) -> anyhow::Result<Vec<Rational>> {
    s.split(',').map(arg_rational).collect()
}

fn arg_grade(s: &str, dim: usize) -> anyhow::Result<Grade> {
    let g = Grade::new(arg_list(s)?);
    g.check_dim(dim)?;
    Ok(g)
}

pub fn format_grade(g: &Grade) -> String {
    let parts: Vec<String> = g.coords().iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn format_line(l: &LineSpec) -> String {
    let dir: Vec<String> = l.direction().iter().map(format_rational).collect();
    format!("direction ({}) base {}", dir.join(", "), format_grade(l.base()))
}

fn grade_list(gs: &[Grade]) -> String {
    if gs.is_empty() {
        return "none".into();
    }
    gs.iter().map(format_grade).collect::<Vec<_>>().join(" ")
}

fn load_joint(input: &Path, from_translate: &Option<String>) -> anyhow::Result<JointPresentation> {
    match from_translate {
        Some(eps) => Ok(JointPresentation::from_translate(&load_fpres(input)?, &arg_rational(eps)?)?),
        None => parse_joint(&read(input)?).with_context(|| format!("parsing {}", input.display())),
    }
}

/// Random 2-parameter lines spread over the sample's bounding box.
fn jitter_lines(sample: &LineSample, seed: u64, count: usize) -> anyhow::Result<Vec<LineSpec>> {
    let mut rng = crate::random::rng(seed);
    let n = sample.dim();
    let span = sample.upper.linf(&sample.lower);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let point: Vec<Rational> = (0..n)
            .map(|i| sample.lower.coord(i) + &span * rat(rng.gen_range(0..=1024), 1024))
            .collect();
        let direction = if n == 2 {
            direction_for_slope(&rat(rng.gen_range(1..=16), rng.gen_range(1..=16)))
        } else {
            let mut d: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(1..=16), 16)).collect();
            d[rng.gen_range(0..n)] = rat(1, 1);
            d
        };
        out.push(LineSpec::through(direction, &Grade::new(point))?);
    }
    Ok(out)
}

pub fn run(config: &RunConfig) -> anyhow::Result<Outcome> {
    let fmt = config.format;
    let outcome = match &config.command {
        Command::Minimize { input } => Outcome::ok(serialize_fpres(&load_fpres(input)?.minimize())),
        Command::Betti { input } => {
            let b = load_fpres(input)?.betti_and_grid();
            let mut r = Report::new("betti");
            r.push("xi0", grade_list(&b.xi0))
                .push("xi1", grade_list(&b.xi1))
                .push("partial_complexity", b.partial_complexity());
            for (i, axis) in b.grid.axes().iter().enumerate() {
                let coords: Vec<String> = axis.iter().map(format_rational).collect();
                r.push(&format!("grid_axis{}", i), coords.join(" "));
            }
            r.ext("controlling_constant", &b.controlling_constant);
            Outcome::report(&r, fmt, false)
        }
        Command::Hilbert { input, at } => {
            let p = load_fpres(input)?;
            let mut r = Report::new("hilbert");
            for s in at {
                let g = arg_grade(s, p.dim())?;
                r.push("dim", format!("{} {}", format_grade(&g), p.hilbert(&g)));
            }
            Outcome::report(&r, fmt, false)
        }
        Command::Merge {
            input,
            delta,
            grid_from,
            variant,
            raw,
        } => {
            let p = load_fpres(input)?;
            let grid = match grid_from {
                Some(g) => load_fpres(g)?.betti_and_grid().grid,
                None => p.betti_and_grid().grid,
            };
            let delta = arg_rational(delta)?;
            let q = if *raw {
                merge_module_raw(&p, &grid, &delta, (*variant).into())?
            } else {
                merge_module(&p, &grid, &delta, (*variant).into())?
            };
            Outcome::ok(serialize_fpres(&q))
        }
        Command::Simplify { input, eps, raw } => {
            let p = load_fpres(input)?;
            let eps = arg_rational(eps)?;
            let q = if *raw { simplify_raw(&p, &eps)? } else { simplify(&p, &eps)? };
            Outcome::ok(serialize_fpres(&q))
        }
        Command::GridAlign {
            input,
            grid_from,
            kappa_eps,
            witness_out,
        } => {
            let p = load_fpres(input)?;
            let grid: GridFunction = load_fpres(grid_from)?.betti_and_grid().grid;
            let a = grid_align(&p, &grid, &arg_rational(kappa_eps)?)?;
            if let Some(path) = witness_out {
                std::fs::write(path, serialize_witness(&a.witness))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Outcome::ok(serialize_fpres(&a.module))
        }
        Command::Restrict { input, line } => {
            let p = load_fpres(input)?;
            let l = LineSpec::through(arg_list(&line.direction)?, &arg_grade(&line.base, p.dim())?)?;
            Outcome::ok(serialize_fpres(&restrict(&p, &l)?))
        }
        Command::Barcode {
            input,
            direction,
            base,
            simplify,
        } => {
            let p = load_fpres(input)?;
            let mut b = match (direction, base) {
                (Some(d), Some(x)) => fibered_barcode(&p, &LineSpec::through(arg_list(d)?, &arg_grade(x, p.dim())?)?)?,
                (None, None) => barcode(&p)?,
                _ => bail!("--direction and --base go together"),
            };
            if let Some(eps) = simplify {
                b = simplify_barcode(&b, &arg_rational(eps)?);
            }
            Outcome::ok(serialize_barcode(&b))
        }
        Command::MatchDist {
            first,
            second,
            sampling,
            emit_argmax,
        } => {
            let (p, q) = (load_fpres(first)?, load_fpres(second)?);
            let mut sample = LineSample::for_modules(&[&p, &q], sampling.lines)?;
            if let Some(seed) = sampling.seed {
                let extra = jitter_lines(&sample, seed, sample.lines.len().div_ceil(8))?;
                sample.extend(extra);
            }
            if sampling.adaptive > 0 {
                sample = sample.with_strategy(SamplingStrategy::Adaptive {
                    rounds: sampling.adaptive,
                });
            }
            let d = matching_distance_with(&p, &q, &sample, &Parallel::from_env()?)?;
            let mut r = Report::new("match-dist");
            r.ext("value", &d.value).push("kind", "lower-bound").push("lines", d.lines_evaluated);
            if let Some(seed) = sampling.seed {
                r.push("seed", seed);
            }
            if *emit_argmax {
                if let Some(l) = &d.argmax_line {
                    r.push("argmax", format_line(l));
                }
            }
            Outcome::report(&r, fmt, false)
        }
        Command::Bottleneck { first, second } => {
            let a = parse_barcode(&read(first)?).with_context(|| format!("parsing {}", first.display()))?;
            let b = parse_barcode(&read(second)?).with_context(|| format!("parsing {}", second.display()))?;
            let m = bottleneck_matching(&a, &b);
            let mut r = Report::new("bottleneck");
            r.ext("value", &m.value);
            for (i, j) in &m.pairs {
                let (x, y) = (&a.bars()[*i], &b.bars()[*j]);
                r.push(
                    "pair",
                    format!(
                        "[{}, {}) ~ [{}, {})",
                        format_rational(&x.birth),
                        format_ext(&x.death),
                        format_rational(&y.birth),
                        format_ext(&y.death)
                    ),
                );
            }
            Outcome::report(&r, fmt, false)
        }
        Command::Verify { first, second, witness } => {
            let (p, q) = (load_fpres(first)?, load_fpres(second)?);
            let w = parse_witness(&read(witness)?, p.generators().len(), q.generators().len(), p.field())
                .with_context(|| format!("parsing {}", witness.display()))?;
            let v = verify_interleaving(&p, &q, &w)?;
            let mut r = Report::new("verify");
            r.rational("epsilon", &v.epsilon);
            match &v.failure {
                None => r.push("result", "accepted"),
                Some(f) => r.push("result", "rejected").push("reason", f),
            };
            Outcome::report(&r, fmt, !v.accepted())
        }
        Command::LowerBound { first, second, probe } => {
            let (p, q) = (load_fpres(first)?, load_fpres(second)?);
            let probes = probe.iter().map(|s| arg_grade(s, p.dim())).collect::<anyhow::Result<Vec<_>>>()?;
            let d = rank_lower_bound(&p, &q, &probes)?;
            let mut r = Report::new("lower-bound");
            r.ext("value", &d.value).push("kind", "lower-bound");
            Outcome::report(&r, fmt, false)
        }
        Command::Interpolate { input, t, from_translate } => {
            let j = load_joint(input, from_translate)?;
            Outcome::ok(serialize_fpres(&interpolate(&j, &arg_rational(t)?)?))
        }
        Command::PathLength {
            input,
            waypoints,
            from_translate,
            lines,
        } => {
            let j = load_joint(input, from_translate)?;
            let ts = arg_list(waypoints)?;
            let path = ts.iter().map(|t| interpolate(&j, t)).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&Presentation> = path.iter().collect();
            let sample = LineSample::for_modules(&refs, *lines)?;
            let len = path_length_d0_with(&path, &sample, &Parallel::from_env()?)?;
            let mut r = Report::new("path-length");
            r.ext("length", &len)
                .rational("epsilon", j.epsilon())
                .push("waypoints", ts.iter().map(format_rational).collect::<Vec<_>>().join(" "))
                .push("lines", sample.lines.len());
            Outcome::report(&r, fmt, false)
        }
        Command::Blocks(BlocksCommand::Extend { input, fpres }) => {
            let blocks = parse_blocks(&read(input)?).with_context(|| format!("parsing {}", input.display()))?;
            if *fpres {
                Outcome::ok(serialize_fpres(&block_presentation(&blocks, Default::default())))
            } else {
                let mut r = Report::new("blocks-extend");
                for b in &blocks {
                    let e = b.extend();
                    r.push("block", format!("{} -> {} radius {}", b, format_rectangle(&e), format_ext(&e.radius())));
                }
                Outcome::report(&r, fmt, false)
            }
        }
        Command::Blocks(BlocksCommand::Dist { first, second }) => {
            let a = parse_blocks(&read(first)?).with_context(|| format!("parsing {}", first.display()))?;
            let b = parse_blocks(&read(second)?).with_context(|| format!("parsing {}", second.display()))?;
            let m = block_matching(&a, &b);
            let mut r = Report::new("blocks-dist");
            r.ext("extended", &m.value)
                .ext("unextended", &unextended_matching_distance(&a, &b));
            for (i, j) in &m.pairs {
                r.push("pair", format!("{} ~ {}", a[*i], b[*j]));
            }
            let field = Default::default();
            if let Some(w) = block_matching_witness(&a, &b) {
                let v = verify_interleaving(&block_presentation(&a, field), &block_presentation(&b, field), &w)?;
                r.push("certificate", if v.accepted() { "accepted" } else { "rejected" });
            }
            Outcome::report(&r, fmt, false)
        }
        Command::Experiment(ExperimentCommand::Example31) => {
            let e = experiments::example31(&Parallel::from_env()?)?;
            Outcome::report(&e.report(), fmt, !e.passed())
        }
        Command::Experiment(ExperimentCommand::LocalEquiv {
            first,
            second,
            kappa,
            witness,
        }) => {
            let (m, n) = (load_fpres(first)?, load_fpres(second)?);
            let w = match witness {
                Some(path) => Some(
                    parse_witness(&read(path)?, m.generators().len(), n.generators().len(), m.field())
                        .with_context(|| format!("parsing {}", path.display()))?,
                ),
                None => None,
            };
            let rep = experiments::local_equivalence(&m, &n, &arg_rational(kappa)?, w.as_ref(), &Parallel::from_env()?)?;
            let mut r = experiments::local_equivalence_report(&rep);
            r.push("budget", GRID_ALIGN_BUDGET);
            let failed = rep.status == ExperimentStatus::Fail
                || (w.is_some() && rep.status == ExperimentStatus::Uncertified);
            Outcome::report(&r, fmt, failed)
        }
        Command::Experiment(ExperimentCommand::Sandwich { seed, count }) => {
            let cases = experiments::sandwich(*seed, *count)?;
            let r = experiments::sandwich_report(&cases);
            Outcome::report(&r, fmt, cases.iter().any(|c| !c.passed()))
        }
    };
    Ok(outcome)
}

/// Parses arguments, runs, writes output; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { 0 };
        }
    };
    match run(&config) {
        Ok(outcome) => {
            let written = match &config.output {
                Some(path) => std::fs::write(path, &outcome.output).with_context(|| format!("writing {}", path.display())),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(outcome.output.as_bytes()).context("writing output")
                }
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    eprintln!("error: {:#}", e);
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            EXIT_INPUT
        }
    }
}
