//! Merge and simplification functors, grid alignment, interleaving witnesses
//! and interpolation between interleaved modules.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::grade::{Grade, GridFunction, MergeVariant};
use crate::linalg::{intersect_with_coordinates, Column, EchelonBasis};
use crate::presentation::{Generator, Presentation, Relation};
use crate::rational::{int, ExtRational, Rational};

/// Step radii of the grid alignment pipeline, in units of `kappa * eps`,
/// in application order: simplify, merge, simplify, merge.
pub const GRID_ALIGN_STEPS: [u32; 4] = [2, 2, 10, 20];

/// Interleaving budget of the grid alignment pipeline, in units of `kappa * eps`.
pub const GRID_ALIGN_BUDGET: u32 = 34;

/// Candidate interleaving between the modules presented by `P` and `Q`.
///
/// `forward[i]` is the image of the `i`-th generator of `P`, a column over the
/// generators of `Q`; every entry stands for the monomial that raises the
/// source grade plus `epsilon` to the target grade. `backward` is the same
/// for `Q -> P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingWitness {
    pub epsilon: Rational,
    pub forward: Vec<Column>,
    pub backward: Vec<Column>,
}

impl InterleavingWitness {
    /// Identity-coefficient bijection on `count` generators.
    pub fn identity(count: usize, epsilon: Rational) -> Self {
        let ids: Vec<Column> = (0..count).map(Column::unit).collect();
        InterleavingWitness {
            epsilon,
            forward: ids.clone(),
            backward: ids,
        }
    }

    /// The witness for `P -> R` from `self: P -> Q` and `next: Q -> R`.
    pub fn compose(&self, next: &InterleavingWitness, field: &PrimeField) -> Result<Self> {
        if self.backward.len() != next.forward.len() {
            return Err(Error::WitnessShape(format!(
                "middle module has {} generators on one side and {} on the other",
                self.backward.len(),
                next.forward.len()
            )));
        }
        Ok(InterleavingWitness {
            epsilon: &self.epsilon + &next.epsilon,
            forward: self.forward.iter().map(|c| c.apply(field, &next.forward)).collect(),
            backward: next.backward.iter().map(|c| c.apply(field, &self.backward)).collect(),
        })
    }

    /// Block-diagonal witness between direct sums. Both witnesses must share
    /// `epsilon`.
    pub fn direct_sum(&self, other: &InterleavingWitness, field: &PrimeField) -> Result<Self> {
        if self.epsilon != other.epsilon {
            return Err(Error::WitnessShape(format!(
                "epsilon {} differs from {}",
                self.epsilon, other.epsilon
            )));
        }
        let (p_off, q_off) = (self.forward.len(), self.backward.len());
        let mut forward = self.forward.clone();
        forward.extend(other.forward.iter().map(|c| c.reindex(field, |j| Some(j + q_off))));
        let mut backward = self.backward.clone();
        backward.extend(other.backward.iter().map(|c| c.reindex(field, |j| Some(j + p_off))));
        Ok(InterleavingWitness {
            epsilon: self.epsilon.clone(),
            forward,
            backward,
        })
    }
}

fn check_nonnegative(x: &Rational) -> Result<()> {
    if x.is_negative() {
        return Err(Error::NegativeParameter(x.clone()));
    }
    Ok(())
}

/// Regrades every generator and relation by the merge function, without
/// minimizing. Generators keep their indices.
pub fn merge_module_raw(
    p: &Presentation,
    grid: &GridFunction,
    delta: &Rational,
    variant: MergeVariant,
) -> Result<Presentation> {
    if grid.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: grid.dim(),
        });
    }
    // Validates delta against the controlling constant.
    grid.merge_grade(delta, &Grade::zero(p.dim()), variant)?;
    p.regrade(|g| grid.merge_unchecked(delta, g, variant))
}

pub fn merge_module(
    p: &Presentation,
    grid: &GridFunction,
    delta: &Rational,
    variant: MergeVariant,
) -> Result<Presentation> {
    Ok(merge_module_raw(p, grid, delta, variant)?.minimize())
}

/// Every join of a nonempty subset of `points`.
fn join_closure(points: impl IntoIterator<Item = Grade>) -> BTreeSet<Grade> {
    let mut closure: BTreeSet<Grade> = BTreeSet::new();
    for p in points {
        if closure.contains(&p) {
            continue;
        }
        let joins: Vec<Grade> = closure.iter().map(|c| c.join(&p)).collect();
        closure.insert(p);
        closure.extend(joins);
    }
    closure
}

/// Presentation of the image of the internal translation `M -> M(eps)`,
/// without minimizing.
///
/// Generators sit at `gr(b) + eps`. The relation module at grade `s` is the
/// set of combinations of generators with `gr(b) + eps <= s` that vanish in
/// `M_s`; new relation generators can only appear at joins of shifted
/// generator grades and relation grades.
pub fn translate_image_raw(p: &Presentation, eps: &Rational) -> Result<Presentation> {
    check_nonnegative(eps)?;
    let f = p.field();
    let gens: Vec<Generator> = p
        .generators()
        .iter()
        .map(|g| Generator::new(g.label.clone(), g.grade.translate(eps)))
        .collect();
    let candidates = join_closure(
        gens.iter()
            .map(|g| g.grade.clone())
            .chain(p.relations().iter().map(|r| r.grade.clone())),
    );
    let mut found: Vec<Relation> = Vec::new();
    for s in candidates {
        let cols: Vec<&Column> = p
            .relations()
            .iter()
            .filter(|r| r.grade.leq(&s))
            .map(|r| &r.column)
            .collect();
        if cols.is_empty() {
            continue;
        }
        let support: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].grade.leq(&s)).collect();
        let kernel = intersect_with_coordinates(f, cols, &support);
        if kernel.is_empty() {
            continue;
        }
        let mut lower = EchelonBasis::new(f);
        for r in &found {
            if r.grade.leq(&s) {
                lower.insert(r.column.clone());
            }
        }
        for v in kernel {
            if lower.insert(v.clone()) {
                found.push(Relation::new(s.clone(), v));
            }
        }
    }
    Presentation::new(p.dim(), f, gens, found)
}

pub fn translate_image(p: &Presentation, eps: &Rational) -> Result<Presentation> {
    Ok(translate_image_raw(p, eps)?.minimize())
}

/// The simplification `S_eps`: the translation image moved back by `eps`.
/// Generators keep their grades and indices.
pub fn simplify_raw(p: &Presentation, eps: &Rational) -> Result<Presentation> {
    let image = translate_image_raw(p, eps)?;
    Ok(image.translate(&-eps))
}

pub fn simplify(p: &Presentation, eps: &Rational) -> Result<Presentation> {
    Ok(simplify_raw(p, eps)?.minimize())
}

/// A transformation with a known interleaving bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `P -> P + delta * (1, ..., 1)` with `delta >= 0`.
    Shift(Rational),
    Merge {
        grid: GridFunction,
        delta: Rational,
        variant: MergeVariant,
    },
    Simplify(Rational),
}

/// Applies the transformation and returns the un-minimized output together
/// with an identity-coefficient witness against the input.
pub fn interleaving_witness(p: &Presentation, kind: &WitnessKind) -> Result<(Presentation, InterleavingWitness)> {
    let (q, eps) = match kind {
        WitnessKind::Shift(delta) => {
            check_nonnegative(delta)?;
            (p.translate(delta), delta.clone())
        }
        WitnessKind::Merge { grid, delta, variant } => {
            (merge_module_raw(p, grid, delta, *variant)?, delta.clone())
        }
        WitnessKind::Simplify(eps) => (simplify_raw(p, eps)?, eps.clone()),
    };
    let w = InterleavingWitness::identity(p.generators().len(), eps);
    Ok((q, w))
}

/// Output of the grid alignment pipeline.
#[derive(Clone, Debug)]
pub struct GridAlignment {
    /// Minimized result.
    pub module: Presentation,
    /// Un-minimized result; generators correspond one to one with the input.
    pub raw: Presentation,
    /// Witness between the input and `raw`, at `34 * kappa_eps`.
    pub witness: InterleavingWitness,
}

/// Merge(20ke) . Simplify(10ke) . Merge(2ke) . Simplify(2ke), with `ke = kap_eps`.
/// Requires the controlling constant of `grid` to exceed `40 * kap_eps`.
pub fn grid_align(p: &Presentation, grid: &GridFunction, kap_eps: &Rational) -> Result<GridAlignment> {
    check_nonnegative(kap_eps)?;
    let bound = ExtRational::Finite(kap_eps * int(40));
    if grid.controlling_constant() <= bound {
        return Err(Error::GridHypothesis {
            kappa_eps: kap_eps.clone(),
        });
    }
    let f = p.field();
    let radius = |k: u32| kap_eps * int(k as i64);
    let steps = [
        WitnessKind::Simplify(radius(GRID_ALIGN_STEPS[0])),
        WitnessKind::Merge {
            grid: grid.clone(),
            delta: radius(GRID_ALIGN_STEPS[1]),
            variant: MergeVariant::TwoSided,
        },
        WitnessKind::Simplify(radius(GRID_ALIGN_STEPS[2])),
        WitnessKind::Merge {
            grid: grid.clone(),
            delta: radius(GRID_ALIGN_STEPS[3]),
            variant: MergeVariant::TwoSided,
        },
    ];
    let mut current = p.clone();
    let mut witness = InterleavingWitness::identity(p.generators().len(), Rational::zero());
    for step in &steps {
        let (next, w) = interleaving_witness(&current, step)?;
        witness = witness.compose(&w, &f)?;
        current = next;
    }
    Ok(GridAlignment {
        module: current.minimize(),
        raw: current,
        witness,
    })
}

/// Joint presentation of two `epsilon`-interleaved modules `M` and `N`.
///
/// Generators and relations are stored at their own grades. Columns index
/// the concatenation `X_M ++ X_N`. Relations in `R_M` must be homogeneous
/// when `X_N` is raised by `epsilon`; relations in `R_N` when `X_M` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointPresentation {
    dim: usize,
    field: PrimeField,
    epsilon: Rational,
    m_generators: Vec<Generator>,
    n_generators: Vec<Generator>,
    m_relations: Vec<Relation>,
    n_relations: Vec<Relation>,
}

impl JointPresentation {
    pub fn new(
        dim: usize,
        field: PrimeField,
        epsilon: Rational,
        m_generators: Vec<Generator>,
        n_generators: Vec<Generator>,
        m_relations: Vec<Relation>,
        n_relations: Vec<Relation>,
    ) -> Result<Self> {
        check_nonnegative(&epsilon)?;
        let j = JointPresentation {
            dim,
            field,
            epsilon,
            m_generators,
            n_generators,
            m_relations,
            n_relations,
        };
        j.at(&Rational::zero())?;
        j.at(&Rational::one())?;
        Ok(j)
    }

    /// Joint presentation of `P` and `P + eps * (1, ..., 1)`, glued by
    /// identifying each generator with its translate.
    pub fn from_translate(p: &Presentation, eps: &Rational) -> Result<Self> {
        let f = p.field();
        let k = p.generators().len();
        let n_generators: Vec<Generator> = p
            .generators()
            .iter()
            .map(|g| Generator::new(g.label.clone(), g.grade.translate(eps)))
            .collect();
        let mut n_relations: Vec<Relation> = p
            .relations()
            .iter()
            .map(|r| {
                Relation::new(
                    r.grade.translate(eps),
                    r.column.reindex(&f, |i| Some(i + k)),
                )
            })
            .collect();
        let minus_one = f.neg(1) as i64;
        for (i, g) in n_generators.iter().enumerate() {
            n_relations.push(Relation::new(
                g.grade.clone(),
                Column::from_entries(&f, [(i, minus_one), (i + k, 1)]),
            ));
        }
        JointPresentation::new(
            p.dim(),
            f,
            eps.clone(),
            p.generators().to_vec(),
            n_generators,
            p.relations().to_vec(),
            n_relations,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn m_generators(&self) -> &[Generator] {
        &self.m_generators
    }

    pub fn n_generators(&self) -> &[Generator] {
        &self.n_generators
    }

    pub fn m_relations(&self) -> &[Relation] {
        &self.m_relations
    }

    pub fn n_relations(&self) -> &[Relation] {
        &self.n_relations
    }

    /// The path point `gamma(t)`: `M` side raised by `t * eps`, `N` side by
    /// `(1 - t) * eps`. `gamma(0)` presents `M` and `gamma(1)` presents `N`.
    pub fn at(&self, t: &Rational) -> Result<Presentation> {
        if t.is_negative() || *t > Rational::one() {
            return Err(Error::TimeOutOfRange(t.clone()));
        }
        let up_m = t * &self.epsilon;
        let up_n = (Rational::one() - t) * &self.epsilon;
        let gens = self
            .m_generators
            .iter()
            .map(|g| Generator::new(g.label.clone(), g.grade.translate(&up_m)))
            .chain(
                self.n_generators
                    .iter()
                    .map(|g| Generator::new(g.label.clone(), g.grade.translate(&up_n))),
            )
            .collect();
        let rels = self
            .m_relations
            .iter()
            .map(|r| Relation::new(r.grade.translate(&up_m), r.column.clone()))
            .chain(
                self.n_relations
                    .iter()
                    .map(|r| Relation::new(r.grade.translate(&up_n), r.column.clone())),
            )
            .collect();
        Presentation::new(self.dim, self.field, gens, rels)
    }
}

/// `gamma(t)` of the joint presentation.
pub fn interpolate(j: &JointPresentation, t: &Rational) -> Result<Presentation> {
    j.at(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibered::{fibered_barcode, simplify_barcode};
    use crate::grade::LineSpec;
    use crate::rational::rat;

    fn f2() -> PrimeField {
        PrimeField::default()
    }

    fn gi(c: &[i64]) -> Grade {
        Grade::from_ints(c)
    }

    fn gq(c: &[(i64, i64)]) -> Grade {
        Grade::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn bar_1d(b: i64, d: i64) -> Presentation {
        Presentation::new(
            1,
            f2(),
            alloc::vec![Generator::new("x", gi(&[b]))],
            alloc::vec![Relation::new(gi(&[d]), Column::unit(0))],
        )
        .unwrap()
    }

    /// `dim Im(M_t -> M_{t+eps})`, the defining property of simplification.
    fn simplified_dim(p: &Presentation, t: &Grade, eps: &Rational) -> usize {
        p.map_rank(t, &t.translate(eps))
    }

    #[test]
    fn translate_image_examples() {
        let b = bar_1d(0, 3);
        assert_eq!(translate_image(&b, &int(0)).unwrap(), b);
        let t1 = translate_image(&b, &int(1)).unwrap();
        assert_eq!(t1.generators()[0].grade, gi(&[1]));
        assert_eq!(t1.relations()[0].grade, gi(&[3]));
        let t4 = translate_image(&b, &int(4)).unwrap();
        assert!(t4.generators().is_empty());
    }

    #[test]
    fn simplify_examples() {
        let p = Presentation::new(
            2,
            f2(),
            alloc::vec![Generator::new("b", gi(&[0, 0]))],
            alloc::vec![Relation::new(gi(&[3, 1]), Column::unit(0))],
        )
        .unwrap();
        let s = simplify(&p, &int(2)).unwrap();
        assert_eq!(s.relations()[0].grade, gi(&[1, 0]));
        assert_eq!(simplify(&p, &int(0)).unwrap(), p);
        let rect = Presentation::rectangle(
            f2(),
            &gi(&[0, 0]),
            &[ExtRational::Finite(int(2)), ExtRational::Finite(int(2))],
        )
        .unwrap();
        assert!(simplify(&rect, &int(3)).unwrap().generators().is_empty());
    }

    #[test]
    fn simplify_matches_image_dimensions() {
        // Two generators whose relations interact: the closed-form regrading
        // of single relations overestimates the image here.
        let f = f2();
        let p = Presentation::new(
            2,
            f,
            alloc::vec![Generator::new("b1", gi(&[0, 0])), Generator::new("b2", gi(&[0, 3]))],
            alloc::vec![
                Relation::new(gi(&[1, 3]), Column::from_entries(&f, [(0, 1), (1, 1)])),
                Relation::new(gi(&[2, 3]), Column::unit(1)),
            ],
        )
        .unwrap();
        let eps = rat(1, 2);
        let s = simplify(&p, &eps).unwrap();
        for x in -2..10 {
            for y in -2..10 {
                let t = gq(&[(x, 2), (y, 2)]);
                assert_eq!(s.hilbert(&t), simplified_dim(&p, &t, &eps), "at {}", t);
            }
        }
        assert_eq!(s.hilbert(&gi(&[2, 3])), 0);
    }

    #[test]
    fn merge_cancels() {
        let f = f2();
        let p = Presentation::new(
            2,
            f,
            alloc::vec![Generator::new("b", gq(&[(0, 1), (1, 8)]))],
            alloc::vec![Relation::new(gq(&[(1, 8), (1, 8)]), Column::unit(0))],
        )
        .unwrap();
        let grid = GridFunction::new(alloc::vec![alloc::vec![int(0)], alloc::vec![int(0)]]);
        let m = merge_module(&p, &grid, &rat(1, 4), MergeVariant::TwoSided).unwrap();
        assert!(m.generators().is_empty());
        let q = Presentation::free(2, f, &[gq(&[(1, 10), (0, 1)])]).unwrap();
        let g01 = GridFunction::new(alloc::vec![alloc::vec![int(0), int(1)], alloc::vec![int(0), int(1)]]);
        let mq = merge_module(&q, &g01, &rat(1, 5), MergeVariant::TwoSided).unwrap();
        assert_eq!(mq.generators()[0].grade, gi(&[0, 0]));
        assert!(merge_module(&q, &g01, &rat(1, 2), MergeVariant::TwoSided).is_err());
    }

    #[test]
    fn slope_one_commutation() {
        let f = f2();
        let p = Presentation::new(
            2,
            f,
            alloc::vec![Generator::new("b1", gi(&[0, 0])), Generator::new("b2", gi(&[0, 3]))],
            alloc::vec![
                Relation::new(gi(&[1, 3]), Column::from_entries(&f, [(0, 1), (1, 1)])),
                Relation::new(gi(&[2, 3]), Column::unit(1)),
                Relation::new(gi(&[5, 0]), Column::unit(0)),
            ],
        )
        .unwrap();
        for eps in [rat(1, 2), int(1), rat(3, 2)] {
            let s = simplify(&p, &eps).unwrap();
            for k in -6..6 {
                let line = LineSpec::slope_one_through(&gq(&[(k, 2), (0, 1)]));
                let lhs = fibered_barcode(&s, &line).unwrap();
                let rhs = simplify_barcode(&fibered_barcode(&p, &line).unwrap(), &eps);
                assert_eq!(lhs, rhs, "eps {} line {}", eps, line);
            }
        }
    }

    #[test]
    fn grid_align_zero_is_minimize() {
        let f = f2();
        let p = Presentation::new(
            2,
            f,
            alloc::vec![Generator::new("a", gi(&[0, 0])), Generator::new("b", gi(&[0, 0]))],
            alloc::vec![Relation::new(gi(&[0, 0]), Column::from_entries(&f, [(0, 1), (1, 1)]))],
        )
        .unwrap();
        let grid = p.betti_and_grid().grid;
        let out = grid_align(&p, &grid, &int(0)).unwrap();
        assert_eq!(out.module, p.minimize());
        assert_eq!(out.witness.epsilon, int(0));
    }

    #[test]
    fn grid_align_hypothesis() {
        let grid = GridFunction::new(alloc::vec![alloc::vec![int(0), int(4)], alloc::vec![int(0)]]);
        let p = Presentation::free(2, f2(), &[gi(&[0, 0])]).unwrap();
        assert!(grid_align(&p, &grid, &rat(1, 10)).is_err());
        let ok = grid_align(&p, &grid, &rat(1, 20)).unwrap();
        assert_eq!(ok.witness.epsilon, rat(34, 20));
    }

    #[test]
    fn interpolation_endpoints() {
        let p = bar_1d(0, 3);
        let j = JointPresentation::from_translate(&p, &int(1)).unwrap();
        let start = interpolate(&j, &int(0)).unwrap().minimize();
        let end = interpolate(&j, &int(1)).unwrap().minimize();
        for k in -2..10 {
            let t = gi(&[k]);
            assert_eq!(start.hilbert(&t), p.hilbert(&t));
            assert_eq!(end.hilbert(&t), p.translate(&int(1)).hilbert(&t));
        }
        assert!(interpolate(&j, &int(2)).is_err());
    }

    #[test]
    fn witness_composition() {
        let f = f2();
        let w1 = InterleavingWitness::identity(2, int(1));
        let w2 = InterleavingWitness {
            epsilon: int(2),
            forward: alloc::vec![Column::unit(1), Column::unit(0)],
            backward: alloc::vec![Column::unit(1), Column::unit(0)],
        };
        let c = w1.compose(&w2, &f).unwrap();
        assert_eq!(c.epsilon, int(3));
        assert_eq!(c.forward, w2.forward);
        let bad = InterleavingWitness::identity(3, int(0));
        assert!(w1.compose(&bad, &f).is_err());
    }
}
