//! Graded presentations `<X | R>` over a prime field.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::grade::{Grade, GridFunction};
use crate::linalg::{Column, EchelonBasis};
use crate::rational::{ExtRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub grade: Grade,
}

impl Generator {
    pub fn new(label: impl Into<String>, grade: Grade) -> Self {
        Generator {
            label: label.into(),
            grade,
        }
    }
}

/// A relation: a grade and a column over the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub grade: Grade,
    pub column: Column,
}

impl Relation {
    pub fn new(grade: Grade, column: Column) -> Self {
        Relation { grade, column }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    dim: usize,
    field: PrimeField,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

/// Betti grades of a minimal presentation and the grid they span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiData {
    pub xi0: Vec<Grade>,
    pub xi1: Vec<Grade>,
    pub grid: GridFunction,
    pub controlling_constant: ExtRational,
}

impl BettiData {
    /// `|xi0| + |xi1|`. Higher syzygies are not computed, so this is only part
    /// of the complexity of a free resolution.
    pub fn partial_complexity(&self) -> usize {
        self.xi0.len() + self.xi1.len()
    }
}

impl Presentation {
    /// Validates dimensions, column indices, coefficients and homogeneity.
    pub fn new(
        dim: usize,
        field: PrimeField,
        generators: Vec<Generator>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for g in &generators {
            g.grade.check_dim(dim)?;
        }
        for (ri, r) in relations.iter().enumerate() {
            r.grade.check_dim(dim)?;
            for &(gi, c) in r.column.entries() {
                if gi >= generators.len() {
                    return Err(Error::GeneratorIndexOutOfRange {
                        relation: ri,
                        index: gi,
                        count: generators.len(),
                    });
                }
                if c == 0 || c >= field.characteristic() {
                    return Err(Error::FieldMismatch {
                        left: field.characteristic(),
                        right: c,
                    });
                }
                if !generators[gi].grade.leq(&r.grade) {
                    return Err(Error::RelationBelowGenerator {
                        relation: ri,
                        generator: gi,
                    });
                }
            }
        }
        Ok(Presentation {
            dim,
            field,
            generators,
            relations,
        })
    }

    pub fn zero(dim: usize, field: PrimeField) -> Result<Self> {
        Presentation::new(dim, field, Vec::new(), Vec::new())
    }

    /// Free module with one generator per grade.
    pub fn free(dim: usize, field: PrimeField, grades: &[Grade]) -> Result<Self> {
        let gens = grades
            .iter()
            .enumerate()
            .map(|(i, g)| Generator::new(format!("x{}", i), g.clone()))
            .collect();
        Presentation::new(dim, field, gens, Vec::new())
    }

    /// Indicator module of the box `[lower, upper)`; infinite sides are open.
    pub fn rectangle(field: PrimeField, lower: &Grade, upper: &[ExtRational]) -> Result<Self> {
        let n = lower.dim();
        if upper.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: upper.len(),
            });
        }
        let mut rels = Vec::new();
        for (i, u) in upper.iter().enumerate() {
            if let ExtRational::Finite(u) = u {
                if u <= lower.coord(i) {
                    return Err(Error::InvalidRectangle(format!(
                        "side {} is empty: {} >= {}",
                        i,
                        lower.coord(i),
                        u
                    )));
                }
                let mut c = lower.coords().to_vec();
                c[i] = u.clone();
                rels.push(Relation::new(Grade::new(c), Column::unit(0)));
            }
        }
        Presentation::new(n, field, alloc::vec![Generator::new("x0", lower.clone())], rels)
    }

    /// Indicator module of the 2-parameter interval `up(births) \ up(deaths)`.
    ///
    /// Generators sit at the births, consecutive births are glued at their
    /// joins and each minimal element of `{d v b}` carries a death relation.
    pub fn staircase_interval(field: PrimeField, births: &[Grade], deaths: &[Grade]) -> Result<Self> {
        for p in births.iter().chain(deaths) {
            if p.dim() != 2 {
                return Err(Error::StaircaseNeedsTwoParameters);
            }
        }
        if !is_antichain(births) || !is_antichain(deaths) {
            return Err(Error::NotAnAntichain);
        }
        let mut bs = births.to_vec();
        bs.sort();
        let gens: Vec<Generator> = bs
            .iter()
            .enumerate()
            .map(|(i, b)| Generator::new(format!("x{}", i), b.clone()))
            .collect();
        let one = field.neg(1);
        let mut rels: Vec<Relation> = (1..bs.len())
            .map(|i| {
                let col = Column::from_entries(&field, [(i - 1, 1), (i, one as i64)]);
                Relation::new(bs[i - 1].join(&bs[i]), col)
            })
            .collect();
        let mut meets: Vec<Grade> = Vec::new();
        for d in deaths {
            for b in &bs {
                meets.push(d.join(b));
            }
        }
        meets.sort();
        meets.dedup();
        let minimal: Vec<Grade> = meets
            .iter()
            .filter(|m| !meets.iter().any(|o| o != *m && o.leq(m)))
            .cloned()
            .collect();
        for m in minimal {
            let gi = bs.iter().position(|b| b.leq(&m)).expect("m dominates a birth");
            rels.push(Relation::new(m, Column::unit(gi)));
        }
        Presentation::new(2, field, gens, rels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_zero_presentation(&self) -> bool {
        self.generators.is_empty()
    }

    /// Applies `f` to every generator and relation grade and revalidates.
    pub fn regrade(&self, mut f: impl FnMut(&Grade) -> Grade) -> Result<Presentation> {
        let gens = self
            .generators
            .iter()
            .map(|g| Generator::new(g.label.clone(), f(&g.grade)))
            .collect();
        let rels = self
            .relations
            .iter()
            .map(|r| Relation::new(f(&r.grade), r.column.clone()))
            .collect();
        Presentation::new(self.dim, self.field, gens, rels)
    }

    /// Translates every grade by `v`.
    pub fn shift(&self, v: &[Rational]) -> Result<Presentation> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        self.regrade(|g| g.add(v))
    }

    /// Translates every grade by `delta * (1, ..., 1)`.
    pub fn translate(&self, delta: &Rational) -> Presentation {
        self.regrade(|g| g.translate(delta))
            .expect("uniform translation preserves homogeneity")
    }

    pub fn direct_sum(&self, other: &Presentation) -> Result<Presentation> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        let offset = self.generators.len();
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| {
            Relation::new(
                r.grade.clone(),
                r.column.reindex(&self.field, |i| Some(i + offset)),
            )
        }));
        Presentation::new(self.dim, self.field, gens, rels)
    }

    fn generators_below(&self, a: &Grade) -> impl Iterator<Item = usize> + '_ {
        let a = a.clone();
        self.generators
            .iter()
            .enumerate()
            .filter(move |(_, g)| g.grade.leq(&a))
            .map(|(i, _)| i)
    }

    fn relation_basis_below(&self, a: &Grade) -> EchelonBasis {
        let mut basis = EchelonBasis::new(self.field);
        for r in &self.relations {
            if r.grade.leq(a) {
                basis.insert(r.column.clone());
            }
        }
        basis
    }

    /// `dim M_a`.
    pub fn hilbert(&self, a: &Grade) -> usize {
        let gens = self.generators_below(a).count();
        gens - self.relation_basis_below(a).rank()
    }

    /// Rank of the internal map `M_a -> M_b`; zero unless `a <= b`.
    pub fn map_rank(&self, a: &Grade, b: &Grade) -> usize {
        self.image_dim(core::slice::from_ref(a), b)
    }

    /// Dimension of the sum of the images of `M_s -> M_t` over sources `s <= t`.
    pub fn image_dim(&self, sources: &[Grade], t: &Grade) -> usize {
        let mut basis = self.relation_basis_below(t);
        let base = basis.rank();
        for (i, g) in self.generators.iter().enumerate() {
            if sources.iter().any(|s| s.leq(t) && g.grade.leq(s)) {
                basis.insert(Column::unit(i));
            }
        }
        basis.rank() - base
    }

    /// A minimal presentation of the same module.
    ///
    /// Relations are visited in lexicographic grade order, ties by input
    /// index. First every relation with a nonzero coefficient on a generator
    /// of equal grade is cancelled against it; then relations lying in the
    /// span of kept relations of smaller or equal grade are dropped.
    pub fn minimize(&self) -> Presentation {
        let f = self.field;
        let mut alive = alloc::vec![true; self.generators.len()];
        let mut rels: Vec<(Grade, Column)> = self
            .relations
            .iter()
            .map(|r| (r.grade.clone(), r.column.clone()))
            .collect();
        // Stable sort keeps input order among equal grades.
        rels.sort_by(|a, b| a.0.cmp(&b.0));

        loop {
            let mut found = None;
            'search: for (ri, (grade, col)) in rels.iter().enumerate() {
                for &(gi, c) in col.entries() {
                    if self.generators[gi].grade == *grade {
                        found = Some((ri, gi, c));
                        break 'search;
                    }
                }
            }
            let Some((ri, gi, c)) = found else { break };
            let (_, pivot) = rels.remove(ri);
            let inv = f.inv(c);
            for (_, col) in rels.iter_mut() {
                let other = col.get(gi);
                if other != 0 {
                    let scale = f.neg(f.mul(other, inv));
                    col.add_scaled(&f, scale, &pivot);
                }
            }
            alive[gi] = false;
        }

        let mut kept: Vec<(Grade, Column)> = Vec::new();
        for (grade, col) in rels {
            if col.is_zero() {
                continue;
            }
            let mut basis = EchelonBasis::new(f);
            for (g, c) in &kept {
                if g.leq(&grade) {
                    basis.insert(c.clone());
                }
            }
            if !basis.contains(&col) {
                kept.push((grade, col));
            }
        }

        let mut new_index = alloc::vec![None; self.generators.len()];
        let mut gens = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if alive[i] {
                new_index[i] = Some(gens.len());
                gens.push(g.clone());
            }
        }
        let rels = kept
            .into_iter()
            .map(|(g, c)| {
                let col = c.reindex(&f, |i| new_index[i]);
                debug_assert_eq!(col.len(), c.len(), "cancelled generators are unused");
                Relation::new(g, col)
            })
            .collect();
        Presentation::new(self.dim, f, gens, rels).expect("minimization preserves validity")
    }

    /// Drops relations spanned by relations of smaller or equal grade,
    /// keeping every generator.
    pub fn prune_relations(&self) -> Presentation {
        let mut order: Vec<usize> = (0..self.relations.len()).collect();
        order.sort_by(|&a, &b| self.relations[a].grade.cmp(&self.relations[b].grade));
        let mut kept: Vec<usize> = Vec::new();
        for ri in order {
            let r = &self.relations[ri];
            if r.column.is_zero() {
                continue;
            }
            let mut basis = EchelonBasis::new(self.field);
            for &k in &kept {
                if self.relations[k].grade.leq(&r.grade) {
                    basis.insert(self.relations[k].column.clone());
                }
            }
            if !basis.contains(&r.column) {
                kept.push(ri);
            }
        }
        Presentation {
            dim: self.dim,
            field: self.field,
            generators: self.generators.clone(),
            relations: kept.into_iter().map(|k| self.relations[k].clone()).collect(),
        }
    }

    /// Betti grades of the minimized presentation, sorted, with their grid.
    pub fn betti_and_grid(&self) -> BettiData {
        let m = self.minimize();
        let mut xi0: Vec<Grade> = m.generators.iter().map(|g| g.grade.clone()).collect();
        let mut xi1: Vec<Grade> = m.relations.iter().map(|r| r.grade.clone()).collect();
        xi0.sort();
        xi1.sort();
        let grid = GridFunction::from_grades(self.dim, xi0.iter().chain(&xi1))
            .expect("grades share the dimension");
        let controlling_constant = grid.controlling_constant();
        BettiData {
            xi0,
            xi1,
            grid,
            controlling_constant,
        }
    }

    /// Every grade appearing in the presentation.
    pub fn grades(&self) -> impl Iterator<Item = &Grade> {
        self.generators
            .iter()
            .map(|g| &g.grade)
            .chain(self.relations.iter().map(|r| &r.grade))
    }
}

fn is_antichain(points: &[Grade]) -> bool {
    points
        .iter()
        .enumerate()
        .all(|(i, a)| points.iter().skip(i + 1).all(|b| !a.leq(b) && !b.leq(a)))
}
