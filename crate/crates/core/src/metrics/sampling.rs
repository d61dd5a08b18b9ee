//! Finite samples of positively sloped lines.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grade::{Grade, GridFunction, LineSpec};
use crate::presentation::Presentation;
use crate::rational::{int, midpoint, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingStrategy {
    Grid,
    /// Grid sample followed by local refinement around the maximizing line.
    Adaptive { rounds: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSample {
    pub lines: Vec<LineSpec>,
    pub strategy: SamplingStrategy,
    /// Bounding box of the Betti grades, padded by its diameter.
    pub lower: Grade,
    pub upper: Grade,
}

/// Default number of slopes for 2-parameter samples.
pub const DEFAULT_SLOPES: usize = 64;

/// Slopes in `[1/16, 16]` obtained by repeated mediant insertion, at least
/// `min_count` of them (and at least the three seeds).
pub fn mediant_slopes(min_count: usize) -> Vec<Rational> {
    let mut slopes = alloc::vec![rat(1, 16), int(1), int(16)];
    while slopes.len() < min_count {
        let mut next = Vec::with_capacity(2 * slopes.len());
        for w in slopes.windows(2) {
            next.push(w[0].clone());
            let m = Rational::new(w[0].numer() + w[1].numer(), w[0].denom() + w[1].denom());
            next.push(m);
        }
        next.push(slopes.last().unwrap().clone());
        slopes = next;
    }
    slopes
}

/// Normalized direction of a 2-parameter line with slope `dy/dx = m`.
pub fn direction_for_slope(m: &Rational) -> Vec<Rational> {
    if *m >= Rational::one() {
        alloc::vec![Rational::one() / m, Rational::one()]
    } else {
        alloc::vec![Rational::one(), m.clone()]
    }
}

/// Directions for `n >= 3`: every vector over a fixed component set whose
/// largest component is 1.
fn directions_high_dim(n: usize) -> Vec<Vec<Rational>> {
    let comps = [int(1), rat(3, 4), rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 16)];
    let mut out: Vec<Vec<Rational>> = alloc::vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                comps.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|c| c.is_one()));
    out
}

impl LineSample {
    /// Lines through every point of the combined Betti grid of `modules`
    /// (plus offset midpoints when `n = 2`), over a fixed direction set.
    /// `slopes` is the minimum slope count for `n = 2`.
    pub fn for_modules(modules: &[&Presentation], slopes: usize) -> Result<Self> {
        let first = modules.first().ok_or(Error::EmptySample)?;
        let n = first.dim();
        let mut grid = GridFunction::from_grades(n, core::iter::empty())?;
        for m in modules {
            if m.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.dim(),
                });
            }
            grid = grid.union(&m.betti_and_grid().grid);
        }
        let mut points = grid.points();
        if points.is_empty() {
            points.push(Grade::zero(n));
        }
        let (lower, upper) = padded_bounds(&points);

        let mut lines = Vec::new();
        match n {
            1 => lines.push(LineSpec::slope_one_through(&Grade::zero(1))),
            2 => {
                for m in mediant_slopes(slopes) {
                    let d = direction_for_slope(&m);
                    let ratio = &d[0] / &d[1];
                    let offsets: BTreeSet<Rational> =
                        points.iter().map(|p| p.coord(0) - p.coord(1) * &ratio).collect();
                    let offsets: Vec<Rational> = offsets.into_iter().collect();
                    let mids: Vec<Rational> = offsets.windows(2).map(|w| midpoint(&w[0], &w[1])).collect();
                    for x in offsets.iter().chain(&mids) {
                        let base = Grade::new(alloc::vec![x.clone(), Rational::zero()]);
                        lines.push(LineSpec::through(d.clone(), &base)?);
                    }
                }
            }
            _ => {
                for d in directions_high_dim(n) {
                    let mut seen = BTreeSet::new();
                    for p in &points {
                        let l = LineSpec::through(d.clone(), p)?;
                        if seen.insert(l.base().clone()) {
                            lines.push(l);
                        }
                    }
                }
            }
        }
        Ok(LineSample {
            lines,
            strategy: SamplingStrategy::Grid,
            lower,
            upper,
        })
    }

    pub fn from_lines(lines: Vec<LineSpec>) -> Result<Self> {
        let first = lines.first().ok_or(Error::EmptySample)?;
        let n = first.dim();
        let bases: Vec<Grade> = lines.iter().map(|l| l.base().clone()).collect();
        let (lower, upper) = padded_bounds(&bases);
        if lines.iter().any(|l| l.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: lines.iter().map(LineSpec::dim).find(|&d| d != n).unwrap(),
            });
        }
        Ok(LineSample {
            lines,
            strategy: SamplingStrategy::Grid,
            lower,
            upper,
        })
    }

    pub fn with_strategy(mut self, strategy: SamplingStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn extend(&mut self, lines: impl IntoIterator<Item = LineSpec>) {
        self.lines.extend(lines);
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    /// Lines near `line` for refinement round `round` (0-based): directions
    /// scaled by `1 +- h` per coordinate and bases moved by `+- h * span / 4`
    /// with `h = 2^-(round + 1)`.
    pub fn refine_around(&self, line: &LineSpec, round: usize) -> Vec<LineSpec> {
        let n = line.dim();
        let h = Rational::new(1.into(), num_bigint::BigInt::from(1u32) << (round + 1));
        let span = self.upper.linf(&self.lower);
        let step = &h * &span / int(4);
        let up = Rational::one() + &h;

        let mut dirs: Vec<Vec<Rational>> = alloc::vec![line.direction().to_vec()];
        for i in 0..n {
            for scale in [up.clone(), Rational::one() / &up] {
                let mut d = line.direction().to_vec();
                d[i] = &d[i] * &scale;
                dirs.push(d);
            }
        }
        let mut bases: Vec<Grade> = alloc::vec![line.base().clone()];
        for i in 0..n.saturating_sub(1) {
            for s in [step.clone(), -step.clone()] {
                let mut c = line.base().coords().to_vec();
                c[i] = &c[i] + &s;
                bases.push(Grade::new(c));
            }
        }
        let mut out = Vec::new();
        for d in &dirs {
            for b in &bases {
                if let Ok(l) = LineSpec::through(d.clone(), b) {
                    if l != *line && !out.contains(&l) {
                        out.push(l);
                    }
                }
            }
        }
        out
    }
}

fn padded_bounds(points: &[Grade]) -> (Grade, Grade) {
    let n = points[0].dim();
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in points {
        lo = lo.meet(p);
        hi = hi.join(p);
    }
    let mut diam = hi.linf(&lo);
    if diam == Rational::zero() {
        diam = Rational::one();
    }
    debug_assert_eq!(lo.dim(), n);
    (lo.translate(&-&diam), hi.translate(&diam))
}
