//! Shared fixtures for unit tests.

use alloc::vec::Vec;

use crate::field::PrimeField;
use crate::functors::InterleavingWitness;
use crate::grade::Grade;
use crate::linalg::Column;
use crate::presentation::{Generator, Presentation, Relation};
use crate::rational::int;

fn rel(f: &PrimeField, g: &[i64], entries: &[(usize, i64)]) -> Relation {
    Relation::new(Grade::from_ints(g), Column::from_entries(f, entries.iter().copied()))
}

/// Two rectangles born at (1,0) and (0,1), dying at 10 in both directions.
pub fn example31_n() -> Presentation {
    let f = PrimeField::default();
    Presentation::new(
        2,
        f,
        alloc::vec![
            Generator::new("a", Grade::from_ints(&[1, 0])),
            Generator::new("b", Grade::from_ints(&[0, 1])),
        ],
        alloc::vec![
            rel(&f, &[10, 0], &[(0, 1)]),
            rel(&f, &[0, 10], &[(1, 1)]),
            rel(&f, &[1, 10], &[(0, 1)]),
            rel(&f, &[10, 1], &[(1, 1)]),
        ],
    )
    .unwrap()
}

/// `N` with the two rectangles glued at (1,1) and an extra square born there.
pub fn example31_o() -> Presentation {
    let f = PrimeField::default();
    let n = example31_n();
    let mut gens: Vec<Generator> = n.generators().to_vec();
    gens.push(Generator::new("c", Grade::from_ints(&[1, 1])));
    let mut rels: Vec<Relation> = n.relations().to_vec();
    rels.push(rel(&f, &[1, 1], &[(0, 1), (1, 1)]));
    rels.push(rel(&f, &[10, 1], &[(2, 1)]));
    rels.push(rel(&f, &[1, 10], &[(2, 1)]));
    Presentation::new(2, f, gens, rels).unwrap()
}

/// A 1-interleaving between `N` and `O`.
pub fn example31_witness() -> InterleavingWitness {
    InterleavingWitness {
        epsilon: int(1),
        forward: alloc::vec![Column::unit(0), Column::unit(2)],
        backward: alloc::vec![Column::unit(0), Column::unit(0), Column::unit(1)],
    }
}
