//! Restriction to lines and barcodes of 1-parameter presentations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grade::{Grade, LineSpec};
use crate::linalg::Column;
use crate::presentation::{Generator, Presentation, Relation};
use crate::rational::{ExtRational, Rational};

/// Half-open interval `[birth, death)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bar {
    pub birth: Rational,
    pub death: ExtRational,
}

impl Bar {
    pub fn new(birth: Rational, death: ExtRational) -> Self {
        Bar { birth, death }
    }

    pub fn finite(birth: Rational, death: Rational) -> Self {
        Bar::new(birth, ExtRational::Finite(death))
    }

    pub fn infinite(birth: Rational) -> Self {
        Bar::new(birth, ExtRational::Infinite)
    }

    pub fn is_empty(&self) -> bool {
        match &self.death {
            ExtRational::Finite(d) => *d <= self.birth,
            ExtRational::Infinite => false,
        }
    }

    pub fn length(&self) -> ExtRational {
        match &self.death {
            ExtRational::Finite(d) => ExtRational::Finite(d - &self.birth),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.birth <= *t && ExtRational::Finite(t.clone()) < self.death
    }
}

/// A multiset of nonempty bars, kept sorted so that `==` is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(bars: impl IntoIterator<Item = Bar>) -> Self {
        let mut bars: Vec<Bar> = bars.into_iter().filter(|b| !b.is_empty()).collect();
        bars.sort();
        Barcode { bars }
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Bars grouped with multiplicities, in sorted order.
    pub fn with_multiplicity(&self) -> Vec<(&Bar, usize)> {
        let mut out: Vec<(&Bar, usize)> = Vec::new();
        for b in &self.bars {
            match out.last_mut() {
                Some((last, m)) if *last == b => *m += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    pub fn union(&self, other: &Barcode) -> Barcode {
        Barcode::new(self.bars.iter().chain(&other.bars).cloned())
    }

    /// Number of bars containing `t`.
    pub fn rank_at(&self, t: &Rational) -> usize {
        self.bars.iter().filter(|b| b.contains(t)).count()
    }
}

/// The 1-parameter presentation obtained by pushing every grade onto `line`.
pub fn restrict(p: &Presentation, line: &LineSpec) -> Result<Presentation> {
    if line.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: line.dim(),
        });
    }
    let push = |g: &Grade| Grade::new(alloc::vec![line.push_unchecked(g)]);
    let gens = p
        .generators()
        .iter()
        .map(|g| Generator::new(g.label.clone(), push(&g.grade)))
        .collect();
    let rels = p
        .relations()
        .iter()
        .map(|r| Relation::new(push(&r.grade), r.column.clone()))
        .collect();
    Presentation::new(1, p.field(), gens, rels)
}

/// Barcode of a 1-parameter presentation by column reduction.
pub fn barcode(q: &Presentation) -> Result<Barcode> {
    if q.dim() != 1 {
        return Err(Error::NotOneParameter(q.dim()));
    }
    let f = q.field();
    let mut rows: Vec<usize> = (0..q.generators().len()).collect();
    rows.sort_by(|&a, &b| q.generators()[a].grade.cmp(&q.generators()[b].grade));
    let mut position = alloc::vec![0; rows.len()];
    for (pos, &g) in rows.iter().enumerate() {
        position[g] = pos;
    }
    let mut cols: Vec<usize> = (0..q.relations().len()).collect();
    cols.sort_by(|&a, &b| q.relations()[a].grade.cmp(&q.relations()[b].grade));

    // Pivot row position -> reduced column.
    let mut reduced: BTreeMap<usize, Column> = BTreeMap::new();
    let mut paired = alloc::vec![false; rows.len()];
    let mut bars = Vec::new();
    for ci in cols {
        let r = &q.relations()[ci];
        let mut col = r.column.reindex(&f, |g| Some(position[g]));
        while let Some((low, c)) = col.pivot() {
            match reduced.get(&low) {
                Some(other) => {
                    let lead = other.pivot().unwrap().1;
                    col.add_scaled(&f, f.neg(f.div(c, lead)), other);
                }
                None => break,
            }
        }
        if let Some((low, _)) = col.pivot() {
            paired[low] = true;
            let birth = q.generators()[rows[low]].grade.coord(0).clone();
            bars.push(Bar::finite(birth, r.grade.coord(0).clone()));
            reduced.insert(low, col);
        }
    }
    for (pos, &g) in rows.iter().enumerate() {
        if !paired[pos] {
            bars.push(Bar::infinite(q.generators()[g].grade.coord(0).clone()));
        }
    }
    Ok(Barcode::new(bars))
}

/// Barcode of `p` restricted to `line`.
pub fn fibered_barcode(p: &Presentation, line: &LineSpec) -> Result<Barcode> {
    barcode(&restrict(p, line)?)
}

/// Shortens every finite bar by `eps` from the right, dropping bars of length
/// at most `eps`.
pub fn simplify_barcode(b: &Barcode, eps: &Rational) -> Barcode {
    Barcode::new(b.bars().iter().map(|bar| match &bar.death {
        ExtRational::Infinite => bar.clone(),
        ExtRational::Finite(d) => Bar::finite(bar.birth.clone(), d - eps),
    }))
}
