//! Sparse vectors over `F_p` and incremental echelon bases.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::PrimeField;

/// A sparse vector: `(index, coefficient)` pairs, sorted by index, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Column {
    entries: Vec<(usize, u64)>,
}

impl Column {
    pub fn zero() -> Self {
        Column { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> Self {
        Column {
            entries: alloc::vec![(index, 1)],
        }
    }

    /// Builds a column from arbitrary entries, reducing mod p and merging duplicates.
    pub fn from_entries(field: &PrimeField, entries: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut map: BTreeMap<usize, u64> = BTreeMap::new();
        for (idx, c) in entries {
            let c = field.reduce(c);
            let slot = map.entry(idx).or_insert(0);
            *slot = field.add(*slot, c);
        }
        Column {
            entries: map.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> u64 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    /// Largest index with a nonzero coefficient.
    pub fn pivot(&self) -> Option<(usize, u64)> {
        self.entries.last().copied()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(i, _)| i)
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, field: &PrimeField, scale: u64, other: &Column) {
        if scale == 0 || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, field.mul(scale, b[j].1)));
                j += 1;
            } else {
                let c = field.add(a[i].1, field.mul(scale, b[j].1));
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        self.entries = out;
    }

    pub fn scaled(&self, field: &PrimeField, scale: u64) -> Column {
        let mut out = Column::zero();
        out.add_scaled(field, scale, self);
        out
    }

    /// Applies an index map; indices sent to `None` are dropped.
    pub fn reindex(&self, field: &PrimeField, mut map: impl FnMut(usize) -> Option<usize>) -> Column {
        Column::from_entries(
            field,
            self.entries
                .iter()
                .filter_map(|&(i, c)| map(i).map(|j| (j, c as i64))),
        )
    }

    /// Applies a linear map given by the images of unit vectors.
    pub fn apply(&self, field: &PrimeField, images: &[Column]) -> Column {
        let mut out = Column::zero();
        for &(i, c) in &self.entries {
            out.add_scaled(field, c, &images[i]);
        }
        out
    }
}

/// Echelon basis keyed by pivot. Inserting reduces the new vector against it.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: PrimeField,
    rows: BTreeMap<usize, Column>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField) -> Self {
        EchelonBasis {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut col: Column) -> Column {
        while let Some((p, c)) = col.pivot() {
            match self.rows.get(&p) {
                Some(row) => {
                    let lead = row.pivot().expect("stored rows are nonzero").1;
                    let scale = self.field.neg(self.field.div(c, lead));
                    col.add_scaled(&self.field, scale, row);
                }
                None => break,
            }
        }
        col
    }

    /// Returns `true` if `col` was independent of the basis.
    pub fn insert(&mut self, col: Column) -> bool {
        let reduced = self.reduce(col);
        match reduced.pivot() {
            Some((p, _)) => {
                self.rows.insert(p, reduced);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, col: &Column) -> bool {
        self.reduce(col.clone()).is_zero()
    }

    pub fn vectors(&self) -> impl Iterator<Item = (usize, &Column)> {
        self.rows.iter().map(|(&p, c)| (p, c))
    }
}

pub fn rank<'a>(field: PrimeField, cols: impl IntoIterator<Item = &'a Column>) -> usize {
    let mut basis = EchelonBasis::new(field);
    for c in cols {
        basis.insert(c.clone());
    }
    basis.rank()
}

/// Basis of `span(cols)` intersected with the coordinate subspace on `support`.
pub fn intersect_with_coordinates<'a>(
    field: PrimeField,
    cols: impl IntoIterator<Item = &'a Column>,
    support: &[usize],
) -> Vec<Column> {
    // Reorder coordinates so that those outside `support` get the largest
    // indices; echelon vectors with pivot inside the support block then span
    // the intersection.
    let mut inside = support.to_vec();
    inside.sort_unstable();
    inside.dedup();
    let k = inside.len();
    let mut outside: BTreeMap<usize, usize> = BTreeMap::new();
    let mut back: BTreeMap<usize, usize> = BTreeMap::new();
    for (pos, &i) in inside.iter().enumerate() {
        back.insert(pos, i);
    }
    let mut basis = EchelonBasis::new(field);
    for col in cols {
        let mapped = col.reindex(&field, |i| match inside.binary_search(&i) {
            Ok(pos) => Some(pos),
            Err(_) => {
                let next = k + outside.len();
                let slot = *outside.entry(i).or_insert(next);
                Some(slot)
            }
        });
        basis.insert(mapped);
    }
    basis
        .vectors()
        .filter(|&(p, _)| p < k)
        .map(|(_, c)| c.reindex(&field, |pos| back.get(&pos).copied()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(f: &PrimeField, e: &[(usize, i64)]) -> Column {
        Column::from_entries(f, e.iter().copied())
    }

    #[test]
    fn add_scaled_cancels() {
        let f = PrimeField::new(3).unwrap();
        let mut a = col(&f, &[(0, 1), (2, 2)]);
        let b = col(&f, &[(0, 2), (1, 1), (2, 1)]);
        a.add_scaled(&f, 1, &b);
        assert_eq!(a, col(&f, &[(1, 1)]));
    }

    #[test]
    fn rank_over_f2() {
        let f = PrimeField::default();
        let cols = [
            col(&f, &[(0, 1), (1, 1)]),
            col(&f, &[(1, 1), (2, 1)]),
            col(&f, &[(0, 1), (2, 1)]),
        ];
        assert_eq!(rank(f, &cols), 2);
        let f3 = PrimeField::new(3).unwrap();
        let cols3 = [
            col(&f3, &[(0, 1), (1, 1)]),
            col(&f3, &[(1, 1), (2, 1)]),
            col(&f3, &[(0, 1), (2, 1)]),
        ];
        assert_eq!(rank(f3, &cols3), 3);
    }

    #[test]
    fn coordinate_intersection() {
        let f = PrimeField::default();
        // span{e0+e1, e1+e2} meets span{e0, e2} in span{e0+e2}.
        let cols = [col(&f, &[(0, 1), (1, 1)]), col(&f, &[(1, 1), (2, 1)])];
        let inter = intersect_with_coordinates(f, &cols, &[0, 2]);
        assert_eq!(inter, alloc::vec![col(&f, &[(0, 1), (2, 1)])]);
        assert!(intersect_with_coordinates(f, &cols, &[0]).is_empty());
    }
}
