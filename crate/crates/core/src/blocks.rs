//! U-blocks from interlevel set persistence and their rectangle extensions.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::functors::InterleavingWitness;
use crate::grade::Grade;
use crate::linalg::Column;
use crate::metrics::bottleneck::bottleneck_assignment;
use crate::presentation::Presentation;
use crate::rational::{abs_diff, int, ExtRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    /// `(a, b)`
    OpenOpen,
    /// `[a, b)`
    ClosedOpen,
    /// `(a, b]`
    OpenClosed,
    /// `[a, b]`
    ClosedClosed,
}

impl BlockKind {
    pub fn tag(&self) -> &'static str {
        match self {
            BlockKind::OpenOpen => "oo",
            BlockKind::ClosedOpen => "co",
            BlockKind::OpenClosed => "oc",
            BlockKind::ClosedClosed => "cc",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "oo" => BlockKind::OpenOpen,
            "co" => BlockKind::ClosedOpen,
            "oc" => BlockKind::OpenClosed,
            "cc" => BlockKind::ClosedClosed,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    kind: BlockKind,
    a: Rational,
    b: Rational,
}

impl Block {
    /// Checks the endpoints against the kind. Infinite endpoints are
    /// rejected: their extensions are not finitely presented.
    pub fn new(kind: BlockKind, a: Rational, b: ExtRational) -> Result<Self> {
        let ExtRational::Finite(b) = b else {
            return Err(Error::InvalidBlock(format!(
                "{} block with infinite endpoint has no finitely presented extension",
                kind.tag()
            )));
        };
        let ok = match kind {
            BlockKind::OpenOpen | BlockKind::ClosedOpen => a < b,
            BlockKind::OpenClosed => a < b && (&a + &b).is_positive(),
            BlockKind::ClosedClosed => a <= b,
        };
        if !ok {
            return Err(Error::InvalidBlock(format!("{} block with endpoints {} and {}", kind.tag(), a, b)));
        }
        Ok(Block { kind, a, b })
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The rectangle interval in the plane extending this block.
    pub fn extend(&self) -> ExtendedRectangle {
        let (a, b) = (&self.a, &self.b);
        let fin = |x: Rational| ExtRational::Finite(x);
        let (lower, upper) = match self.kind {
            BlockKind::OpenOpen => ([-b, a.clone()], [fin(-a), fin(b.clone())]),
            BlockKind::ClosedOpen => ([-b, a.clone()], [ExtRational::Infinite, fin(b.clone())]),
            BlockKind::OpenClosed => ([-b, a.clone()], [fin(a.clone()), ExtRational::Infinite]),
            BlockKind::ClosedClosed => ([-b, a.clone()], [ExtRational::Infinite, ExtRational::Infinite]),
        };
        ExtendedRectangle {
            lower: Grade::new(lower.to_vec()),
            upper,
        }
    }

    /// Radius of the unextended block: the interleaving distance to zero.
    pub fn radius(&self) -> ExtRational {
        let len = &self.b - &self.a;
        match self.kind {
            BlockKind::OpenOpen => ExtRational::Finite(len / int(4)),
            BlockKind::ClosedOpen => ExtRational::Finite(len / int(2)),
            BlockKind::OpenClosed => ExtRational::Finite((&self.a + &self.b) / int(2)),
            BlockKind::ClosedClosed => ExtRational::Infinite,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind.tag(), self.a, self.b)
    }
}

/// `[l1, u1) x [l2, u2)` with possibly infinite upper sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedRectangle {
    pub lower: Grade,
    pub upper: [ExtRational; 2],
}

impl ExtendedRectangle {
    pub fn presentation(&self, field: PrimeField) -> Presentation {
        Presentation::rectangle(field, &self.lower, &self.upper).expect("extensions are nonempty rectangles")
    }

    /// Half the shortest finite side; infinite when both sides are infinite.
    pub fn radius(&self) -> ExtRational {
        self.upper
            .iter()
            .zip(self.lower.coords())
            .filter_map(|(u, l)| u.finite().map(|u| ExtRational::Finite((u - l) / int(2))))
            .min()
            .unwrap_or(ExtRational::Infinite)
    }

    /// l-inf distance of lower corners and of upper corners, the larger one.
    pub fn corner_distance(&self, other: &ExtendedRectangle) -> ExtRational {
        let lower = ExtRational::Finite(self.lower.linf(&other.lower));
        let upper = self.upper[0]
            .distance(&other.upper[0])
            .max(self.upper[1].distance(&other.upper[1]));
        lower.max(upper)
    }

    /// Interleaving distance between the two rectangle modules.
    pub fn distance(&self, other: &ExtendedRectangle) -> ExtRational {
        self.corner_distance(other).min(self.radius().max(other.radius()))
    }
}

/// Interleaving distance of two unextended blocks of the same kind.
pub fn block_distance(x: &Block, y: &Block) -> Option<ExtRational> {
    if x.kind != y.kind {
        return None;
    }
    let corners = ExtRational::Finite(core::cmp::max(abs_diff(&x.a, &y.a), abs_diff(&x.b, &y.b)));
    Some(corners.min(x.radius().max(y.radius())))
}

/// Direct sum of the extended rectangles.
pub fn block_presentation(blocks: &[Block], field: PrimeField) -> Presentation {
    let mut p = Presentation::zero(2, field).expect("dimension 2");
    for b in blocks {
        p = p
            .direct_sum(&b.extend().presentation(field))
            .expect("same dimension and field");
    }
    p
}

/// Bottleneck matching of extended rectangles; only blocks of the same kind
/// may be matched and unmatched blocks pay their extended radius.
pub fn block_matching(a: &[Block], b: &[Block]) -> crate::metrics::Assignment {
    let ea: Vec<ExtendedRectangle> = a.iter().map(Block::extend).collect();
    let eb: Vec<ExtendedRectangle> = b.iter().map(Block::extend).collect();
    bottleneck_assignment(
        a.len(),
        b.len(),
        |i, j| (a[i].kind == b[j].kind).then(|| ea[i].distance(&eb[j])),
        |i| ea[i].radius(),
        |j| eb[j].radius(),
    )
}

pub fn block_matching_distance(a: &[Block], b: &[Block]) -> ExtRational {
    block_matching(a, b).value
}

/// The same matching problem with unextended block costs.
pub fn unextended_matching_distance(a: &[Block], b: &[Block]) -> ExtRational {
    bottleneck_assignment(
        a.len(),
        b.len(),
        |i, j| block_distance(&a[i], &b[j]),
        |i| a[i].radius(),
        |j| b[j].radius(),
    )
    .value
}

/// Witness between the extended modules at the block matching distance:
/// matched pairs within corner distance map generator to generator, all
/// other generators go to zero. `None` when the distance is infinite.
pub fn block_matching_witness(a: &[Block], b: &[Block]) -> Option<InterleavingWitness> {
    let assignment = block_matching(a, b);
    let ExtRational::Finite(eps) = assignment.value.clone() else {
        return None;
    };
    let mut forward = alloc::vec![Column::zero(); a.len()];
    let mut backward = alloc::vec![Column::zero(); b.len()];
    for &(i, j) in &assignment.pairs {
        if a[i].extend().corner_distance(&b[j].extend()) <= ExtRational::Finite(eps.clone()) {
            forward[i] = Column::unit(j);
            backward[j] = Column::unit(i);
        }
    }
    Some(InterleavingWitness {
        epsilon: eps,
        forward,
        backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::verify::verify_interleaving;

    fn blk(kind: BlockKind, a: i64, b: i64) -> Block {
        Block::new(kind, int(a), ExtRational::Finite(int(b))).unwrap()
    }

    #[test]
    fn extensions() {
        let r = blk(BlockKind::OpenOpen, 1, 3).extend();
        assert_eq!(r.lower, Grade::from_ints(&[-3, 1]));
        assert_eq!(r.upper, [ExtRational::Finite(int(-1)), ExtRational::Finite(int(3))]);
        let free = blk(BlockKind::ClosedClosed, 0, 0).extend();
        assert_eq!(free.lower, Grade::from_ints(&[0, 0]));
        assert_eq!(free.upper, [ExtRational::Infinite, ExtRational::Infinite]);
        let co = blk(BlockKind::ClosedOpen, 2, 5).extend();
        assert_eq!(co.lower, Grade::from_ints(&[-5, 2]));
        assert_eq!(co.upper, [ExtRational::Infinite, ExtRational::Finite(int(5))]);
    }

    #[test]
    fn invalid_blocks() {
        assert!(Block::new(BlockKind::OpenOpen, int(2), ExtRational::Finite(int(2))).is_err());
        assert!(Block::new(BlockKind::OpenClosed, int(-3), ExtRational::Finite(int(1))).is_err());
        assert!(Block::new(BlockKind::ClosedOpen, int(0), ExtRational::Infinite).is_err());
    }

    #[test]
    fn presentations() {
        let f = PrimeField::default();
        let p = block_presentation(&[blk(BlockKind::OpenOpen, 1, 3)], f);
        assert_eq!(p.generators()[0].grade, Grade::from_ints(&[-3, 1]));
        let mut rels: Vec<Grade> = p.relations().iter().map(|r| r.grade.clone()).collect();
        rels.sort();
        assert_eq!(rels, alloc::vec![Grade::from_ints(&[-3, 3]), Grade::from_ints(&[-1, 1])]);
        for x in -4..0 {
            for y in 0..4 {
                let inside = (-3..-1).contains(&x) && (1..3).contains(&y);
                assert_eq!(p.hilbert(&Grade::from_ints(&[x, y])), inside as usize);
            }
        }
        let two = block_presentation(&[blk(BlockKind::OpenOpen, 1, 3), blk(BlockKind::ClosedOpen, 2, 5)], f);
        assert_eq!(two.generators().len(), 2);
        assert_eq!(two.relations().len(), 3);
        assert_eq!(block_presentation(&[blk(BlockKind::ClosedClosed, 0, 0)], f).relations().len(), 0);
    }

    #[test]
    fn matching_examples() {
        let a = [blk(BlockKind::OpenOpen, 0, 2)];
        assert_eq!(block_matching_distance(&a, &a), ExtRational::zero());
        assert_eq!(block_matching_distance(&a, &[]), ExtRational::Finite(int(1)));
        let c0 = [blk(BlockKind::ClosedClosed, 0, 0)];
        let c1 = [blk(BlockKind::ClosedClosed, 1, 1)];
        assert_eq!(block_matching_distance(&c0, &c1), ExtRational::Finite(int(1)));
        // Different kinds never match.
        let co = [blk(BlockKind::ClosedOpen, 0, 2)];
        assert_eq!(block_matching_distance(&a, &co), ExtRational::Finite(int(1)));
    }

    #[test]
    fn witnesses_verify() {
        let f = PrimeField::default();
        let cases: [(&[Block], &[Block]); 4] = [
            (&[blk(BlockKind::OpenOpen, 0, 2)], &[]),
            (&[blk(BlockKind::ClosedClosed, 0, 0)], &[blk(BlockKind::ClosedClosed, 1, 1)]),
            (&[blk(BlockKind::OpenOpen, 0, 4)], &[blk(BlockKind::OpenOpen, 1, 4)]),
            (
                &[blk(BlockKind::ClosedOpen, 0, 3), blk(BlockKind::OpenClosed, 1, 2)],
                &[blk(BlockKind::ClosedOpen, 1, 3)],
            ),
        ];
        for (a, b) in cases {
            let w = block_matching_witness(a, b).unwrap();
            let (pa, pb) = (block_presentation(a, f), block_presentation(b, f));
            let v = verify_interleaving(&pa, &pb, &w).unwrap();
            assert!(v.accepted(), "{:?} vs {:?}: {:?}", a, b, v.failure);
            let lower = crate::metrics::rank_lower_bound(&pa, &pb, &[]).unwrap().value;
            assert!(lower <= ExtRational::Finite(w.epsilon.clone()));
        }
    }

    #[test]
    fn sandwich() {
        let x = blk(BlockKind::OpenOpen, 0, 4);
        let y = blk(BlockKind::OpenOpen, 1, 3);
        let d = block_distance(&x, &y).unwrap();
        let dbar = x.extend().distance(&y.extend());
        assert_eq!(d, ExtRational::Finite(int(1)));
        assert!(d <= dbar && dbar <= ExtRational::Finite(int(2)));
    }
}
