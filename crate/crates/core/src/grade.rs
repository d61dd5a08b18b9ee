//! The grading poset `(Q^n, <=)`, lines through it and grid functions.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{abs_diff, int, ExtRational, Rational};

/// A point of `Q^n`.
///
/// `Ord` is the lexicographic order, which is a linear extension of the
/// product order; the product order itself is [`Grade::leq`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade {
    coords: Vec<Rational>,
}

impl Grade {
    pub fn new(coords: Vec<Rational>) -> Self {
        Grade { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Grade::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Grade::new(alloc::vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Product order.
    pub fn leq(&self, other: &Grade) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Grade) -> Grade {
        Grade::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    pub fn meet(&self, other: &Grade) -> Grade {
        Grade::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    pub fn linf(&self, other: &Grade) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| abs_diff(a, b))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// `self + delta * (1, ..., 1)`.
    pub fn translate(&self, delta: &Rational) -> Grade {
        Grade::new(self.coords.iter().map(|c| c + delta).collect())
    }

    pub fn add(&self, v: &[Rational]) -> Grade {
        Grade::new(self.coords.iter().zip(v).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, v: &[Rational]) -> Grade {
        Grade::new(self.coords.iter().zip(v).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(")")
    }
}

/// Positively sloped line `t -> base + t * direction` with `max direction = 1`
/// and `base` on the hyperplane `x_n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineSpec {
    direction: Vec<Rational>,
    base: Grade,
}

impl LineSpec {
    /// The line with the given direction passing through `point`.
    pub fn through(direction: Vec<Rational>, point: &Grade) -> Result<Self> {
        if direction.is_empty() {
            return Err(Error::ZeroDimension);
        }
        point.check_dim(direction.len())?;
        if direction.iter().any(|d| !d.is_positive()) {
            return Err(Error::NonPositiveDirection);
        }
        let max = direction.iter().max().cloned().unwrap();
        let direction: Vec<Rational> = direction.into_iter().map(|d| d / &max).collect();
        let n = direction.len();
        let t0 = point.coord(n - 1) / &direction[n - 1];
        let base = Grade::new(
            point
                .coords()
                .iter()
                .zip(&direction)
                .map(|(p, d)| p - &t0 * d)
                .collect(),
        );
        Ok(LineSpec { direction, base })
    }

    /// The diagonal line through `point`.
    pub fn slope_one_through(point: &Grade) -> Self {
        LineSpec::through(alloc::vec![Rational::one(); point.dim()], point)
            .expect("unit direction is positive")
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    pub fn direction(&self) -> &[Rational] {
        &self.direction
    }

    pub fn base(&self) -> &Grade {
        &self.base
    }

    pub fn point_at(&self, t: &Rational) -> Grade {
        Grade::new(
            self.base
                .coords()
                .iter()
                .zip(&self.direction)
                .map(|(b, d)| b + t * d)
                .collect(),
        )
    }

    /// Smallest `t` with `L(t) >= p`.
    pub fn push(&self, p: &Grade) -> Result<Rational> {
        p.check_dim(self.dim())?;
        Ok(self.push_unchecked(p))
    }

    pub(crate) fn push_unchecked(&self, p: &Grade) -> Rational {
        p.coords()
            .iter()
            .zip(self.base.coords())
            .zip(&self.direction)
            .map(|((pi, bi), di)| (pi - bi) / di)
            .max()
            .expect("lines have dimension at least 1")
    }

    /// `min_i d_i`; scales bottleneck distances along the line into a lower
    /// bound for the interleaving distance.
    pub fn weight(&self) -> Rational {
        self.direction.iter().min().cloned().unwrap()
    }
}

impl fmt::Display for LineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("direction (")?;
        for (i, c) in self.direction.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ") base {}", self.base)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MergeVariant {
    /// Snap `[g - delta, g + delta]` onto `g`.
    TwoSided,
    /// Snap `[g - delta, g]` onto `g`.
    Plus,
    /// Snap `[g, g + delta]` onto `g`.
    Minus,
}

/// Sorted coordinate lists per axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridFunction {
    axes: Vec<Vec<Rational>>,
}

impl GridFunction {
    pub fn new(axes: Vec<Vec<Rational>>) -> Self {
        let axes = axes
            .into_iter()
            .map(|mut a| {
                a.sort();
                a.dedup();
                a
            })
            .collect();
        GridFunction { axes }
    }

    /// Smallest product grid containing `points`.
    pub fn from_grades<'a>(n: usize, points: impl IntoIterator<Item = &'a Grade>) -> Result<Self> {
        let mut axes = alloc::vec![Vec::new(); n];
        for p in points {
            p.check_dim(n)?;
            for (axis, c) in axes.iter_mut().zip(p.coords()) {
                axis.push(c.clone());
            }
        }
        Ok(GridFunction::new(axes))
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<Rational>] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &[Rational] {
        &self.axes[i]
    }

    pub fn point_count(&self) -> usize {
        if self.axes.is_empty() {
            return 0;
        }
        self.axes.iter().map(Vec::len).product()
    }

    pub fn union(&self, other: &GridFunction) -> GridFunction {
        GridFunction::new(
            self.axes
                .iter()
                .zip(&other.axes)
                .map(|(a, b)| a.iter().chain(b).cloned().collect())
                .collect(),
        )
    }

    /// Every point of `Im G`, in lexicographic order.
    pub fn points(&self) -> Vec<Grade> {
        let mut out: Vec<Vec<Rational>> = alloc::vec![Vec::new()];
        for axis in &self.axes {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for c in axis {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        if self.axes.is_empty() {
            return Vec::new();
        }
        out.into_iter().map(Grade::new).collect()
    }

    /// Minimum l-inf distance between distinct points of `Im G`; infinite for
    /// at most one point.
    pub fn controlling_constant(&self) -> ExtRational {
        if self.axes.iter().any(Vec::is_empty) {
            return ExtRational::Infinite;
        }
        // Distinct points differ in some coordinate; the l-inf distance is at
        // least the gap on that axis, and the smallest gap is attained.
        self.axes
            .iter()
            .flat_map(|a| a.windows(2).map(|w| &w[1] - &w[0]))
            .min()
            .map(ExtRational::Finite)
            .unwrap_or(ExtRational::Infinite)
    }

    /// Whether some coordinate of `p` lies on an axis value.
    pub fn on_grid(&self, p: &Grade) -> bool {
        p.coords()
            .iter()
            .zip(&self.axes)
            .any(|(c, axis)| axis.binary_search(c).is_ok())
    }

    /// Distance from `x` to the nearest value on axis `i`.
    pub fn axis_distance(&self, i: usize, x: &Rational) -> Option<Rational> {
        self.nearest(i, x).map(|v| abs_diff(v, x))
    }

    fn nearest(&self, i: usize, x: &Rational) -> Option<&Rational> {
        let axis = &self.axes[i];
        let pos = match axis.binary_search(x) {
            Ok(pos) => return Some(&axis[pos]),
            Err(pos) => pos,
        };
        let below = pos.checked_sub(1).map(|j| &axis[j]);
        let above = axis.get(pos);
        match (below, above) {
            (Some(b), Some(a)) => {
                if (x - b) <= (a - x) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
            (Some(b), None) => Some(b),
            (None, a) => a,
        }
    }

    /// l-inf distance from `p` to the union of grid hyperplanes.
    pub fn distance_to_grid(&self, p: &Grade) -> ExtRational {
        (0..self.dim())
            .filter_map(|i| self.axis_distance(i, p.coord(i)))
            .min()
            .map(ExtRational::Finite)
            .unwrap_or(ExtRational::Infinite)
    }

    fn check_delta(&self, delta: &Rational) -> Result<()> {
        let ok = !delta.is_negative()
            && match self.controlling_constant() {
                ExtRational::Infinite => true,
                ExtRational::Finite(c) => delta * int(2) < c,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::MergeRadiusTooLarge {
                delta: delta.clone(),
            })
        }
    }

    fn merge_coord(&self, i: usize, delta: &Rational, x: &Rational, variant: MergeVariant) -> Rational {
        let Some(g) = self.nearest(i, x) else {
            return x.clone();
        };
        let diff = x - g;
        let snap = match variant {
            MergeVariant::TwoSided => diff.abs() <= *delta,
            MergeVariant::Plus => !diff.is_positive() && -&diff <= *delta,
            MergeVariant::Minus => !diff.is_negative() && diff <= *delta,
        };
        if snap {
            return g.clone();
        }
        // The nearest value may sit on the wrong side for a one-sided variant;
        // the other neighbour is then more than 2 delta away, so no snap.
        x.clone()
    }

    /// Merge function `M_delta^G` (or a one-sided variant), coordinatewise.
    pub fn merge_grade(&self, delta: &Rational, p: &Grade, variant: MergeVariant) -> Result<Grade> {
        p.check_dim(self.dim())?;
        self.check_delta(delta)?;
        Ok(self.merge_unchecked(delta, p, variant))
    }

    pub(crate) fn merge_unchecked(&self, delta: &Rational, p: &Grade, variant: MergeVariant) -> Grade {
        Grade::new(
            p.coords()
                .iter()
                .enumerate()
                .map(|(i, x)| self.merge_coord(i, delta, x, variant))
                .collect(),
        )
    }

    /// Largest point of the two-sided merge fiber through `p`.
    pub fn unmerge(&self, delta: &Rational, p: &Grade) -> Result<Grade> {
        p.check_dim(self.dim())?;
        self.check_delta(delta)?;
        if !self.on_grid(p) {
            return Err(Error::NotOnGrid);
        }
        let merged = self.merge_unchecked(delta, p, MergeVariant::TwoSided);
        Ok(Grade::new(
            merged
                .coords()
                .iter()
                .enumerate()
                .map(|(i, m)| match self.axis_distance(i, p.coord(i)) {
                    Some(d) if d <= *delta => m + delta,
                    _ => m.clone(),
                })
                .collect(),
        ))
    }
}
