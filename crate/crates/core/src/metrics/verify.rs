//! Checking candidate interleavings between presentations.

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};
use crate::functors::InterleavingWitness;
use crate::grade::Grade;
use crate::linalg::{Column, EchelonBasis};
use crate::metrics::matching::check_compatible;
use crate::presentation::Presentation;
use crate::rational::Rational;

use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The map `f` from the first module, or a check on the first module.
    First,
    /// The map `g` from the second module, or a check on the second module.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerificationFailure {
    /// A nonzero entry maps `source` to a generator above `gr(source) + eps`.
    GradeIncompatible { map: Side, source: usize, target: usize },
    /// The image of `relation` is not a relation of the target module.
    RelationNotPreserved { map: Side, relation: usize },
    /// The round trip through the other module differs from the `2 eps`
    /// internal translation on `generator`.
    Incoherent { module: Side, generator: usize },
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |s: &Side| match s {
            Side::First => "f",
            Side::Second => "g",
        };
        let module = |s: &Side| match s {
            Side::First => "first",
            Side::Second => "second",
        };
        match self {
            VerificationFailure::GradeIncompatible { map, source, target } => write!(
                f,
                "{} sends generator {} to generator {} above its shifted grade",
                name(map),
                source,
                target
            ),
            VerificationFailure::RelationNotPreserved { map, relation } => write!(
                f,
                "{} does not send relation {} into the relations of the {} module",
                name(map),
                relation,
                match map {
                    Side::First => "second",
                    Side::Second => "first",
                }
            ),
            VerificationFailure::Incoherent { module: m, generator } => write!(
                f,
                "round trip on generator {} of the {} module is not the 2-epsilon translation",
                generator,
                module(m)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub epsilon: Rational,
    pub failure: Option<VerificationFailure>,
}

impl Verification {
    pub fn accepted(&self) -> bool {
        self.failure.is_none()
    }
}

fn check_shape(map: &[Column], sources: usize, targets: usize, field: u64, what: &str) -> Result<()> {
    if map.len() != sources {
        return Err(Error::WitnessShape(format!(
            "{} has {} columns for {} generators",
            what,
            map.len(),
            sources
        )));
    }
    for (i, c) in map.iter().enumerate() {
        for &(j, v) in c.entries() {
            if j >= targets || v == 0 || v >= field {
                return Err(Error::WitnessShape(format!(
                    "{} column {} has invalid entry {}:{}",
                    what, i, v, j
                )));
            }
        }
    }
    Ok(())
}

fn relations_below(p: &Presentation, bound: &Grade) -> EchelonBasis {
    let mut b = EchelonBasis::new(p.field());
    for r in p.relations() {
        if r.grade.leq(bound) {
            b.insert(r.column.clone());
        }
    }
    b
}

fn check_map(
    src: &Presentation,
    dst: &Presentation,
    map: &[Column],
    eps: &Rational,
    side: Side,
) -> Option<VerificationFailure> {
    for (i, c) in map.iter().enumerate() {
        let lifted = src.generators()[i].grade.translate(eps);
        for j in c.indices() {
            if !dst.generators()[j].grade.leq(&lifted) {
                return Some(VerificationFailure::GradeIncompatible {
                    map: side,
                    source: i,
                    target: j,
                });
            }
        }
    }
    let f = src.field();
    for (ri, r) in src.relations().iter().enumerate() {
        let image = r.column.apply(&f, map);
        if !relations_below(dst, &r.grade.translate(eps)).contains(&image) {
            return Some(VerificationFailure::RelationNotPreserved { map: side, relation: ri });
        }
    }
    None
}

fn check_round_trip(
    p: &Presentation,
    there: &[Column],
    back: &[Column],
    eps: &Rational,
    module: Side,
) -> Option<VerificationFailure> {
    let f = p.field();
    let two_eps = eps + eps;
    for (i, image) in there.iter().enumerate().take(p.generators().len()) {
        let mut v = image.apply(&f, back);
        v.add_scaled(&f, f.neg(1), &Column::unit(i));
        if v.is_zero() {
            continue;
        }
        let bound = p.generators()[i].grade.translate(&two_eps);
        if !relations_below(p, &bound).contains(&v) {
            return Some(VerificationFailure::Incoherent { module, generator: i });
        }
    }
    None
}

/// Checks that `w` is an `eps`-interleaving between the modules presented by
/// `p` and `q`: entries respect grades, relations go to relations, and both
/// round trips agree with the `2 eps` translation modulo relations.
pub fn verify_interleaving(p: &Presentation, q: &Presentation, w: &InterleavingWitness) -> Result<Verification> {
    check_compatible(p, q)?;
    let ch = p.field().characteristic();
    let (np, nq) = (p.generators().len(), q.generators().len());
    check_shape(&w.forward, np, nq, ch, "f")?;
    check_shape(&w.backward, nq, np, ch, "g")?;
    if w.epsilon < Rational::zero() {
        return Err(Error::NegativeParameter(w.epsilon.clone()));
    }
    let eps = &w.epsilon;
    let failure = check_map(p, q, &w.forward, eps, Side::First)
        .or_else(|| check_map(q, p, &w.backward, eps, Side::Second))
        .or_else(|| check_round_trip(p, &w.forward, &w.backward, eps, Side::First))
        .or_else(|| check_round_trip(q, &w.backward, &w.forward, eps, Side::Second));
    Ok(Verification {
        epsilon: eps.clone(),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{interleaving_witness, WitnessKind};
    use crate::grade::{GridFunction, MergeVariant};
    use crate::field::PrimeField;
    use crate::presentation::{Generator, Relation};
    use crate::rational::{int, rat};
    use crate::testing::{example31_n, example31_o, example31_witness};

    #[test]
    fn identity_on_itself() {
        let n = example31_n();
        let w = InterleavingWitness::identity(2, int(0));
        assert!(verify_interleaving(&n, &n, &w).unwrap().accepted());
    }

    #[test]
    fn translates() {
        let n = example31_n();
        let (q, w) = interleaving_witness(&n, &WitnessKind::Shift(rat(1, 2))).unwrap();
        assert!(verify_interleaving(&n, &q, &w).unwrap().accepted());
        // Too small an epsilon breaks grade compatibility.
        let short = InterleavingWitness::identity(2, rat(1, 4));
        let v = verify_interleaving(&n, &q, &short).unwrap();
        assert_eq!(
            v.failure,
            Some(VerificationFailure::GradeIncompatible {
                map: Side::First,
                source: 0,
                target: 0
            })
        );
    }

    #[test]
    fn example31_witness_accepted() {
        let v = verify_interleaving(&example31_n(), &example31_o(), &example31_witness()).unwrap();
        assert!(v.accepted(), "{:?}", v.failure);
    }

    #[test]
    fn example31_identity_rejected() {
        let w = InterleavingWitness {
            epsilon: rat(1, 2),
            forward: alloc::vec![Column::unit(0), Column::unit(1)],
            backward: alloc::vec![Column::unit(0), Column::unit(1), Column::zero()],
        };
        let v = verify_interleaving(&example31_n(), &example31_o(), &w).unwrap();
        assert!(!v.accepted());
        // g sends the gluing relation a + b of O to a + b in N, which is
        // not a relation there.
        assert_eq!(
            v.failure,
            Some(VerificationFailure::RelationNotPreserved {
                map: Side::Second,
                relation: 4
            })
        );
    }

    #[test]
    fn merge_and_simplify_witnesses() {
        let f = PrimeField::default();
        let p = Presentation::new(
            2,
            f,
            alloc::vec![Generator::new("b", Grade::new(alloc::vec![int(0), rat(1, 8)]))],
            alloc::vec![Relation::new(Grade::new(alloc::vec![rat(1, 8), rat(1, 8)]), Column::unit(0))],
        )
        .unwrap();
        let grid = GridFunction::new(alloc::vec![alloc::vec![int(0)], alloc::vec![int(0)]]);
        let kind = WitnessKind::Merge {
            grid,
            delta: rat(1, 4),
            variant: MergeVariant::TwoSided,
        };
        let (q, w) = interleaving_witness(&p, &kind).unwrap();
        assert!(verify_interleaving(&p, &q, &w).unwrap().accepted());

        let bar = Presentation::new(
            1,
            f,
            alloc::vec![Generator::new("x", Grade::from_ints(&[0]))],
            alloc::vec![Relation::new(Grade::from_ints(&[3]), Column::unit(0))],
        )
        .unwrap();
        let (s, w) = interleaving_witness(&bar, &WitnessKind::Simplify(int(1))).unwrap();
        assert!(verify_interleaving(&bar, &s, &w).unwrap().accepted());
    }

    #[test]
    fn shape_errors() {
        let n = example31_n();
        let w = InterleavingWitness::identity(3, int(0));
        assert!(verify_interleaving(&n, &n, &w).is_err());
    }
}
