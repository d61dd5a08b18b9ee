//! Seeded generators for experiment inputs.

use multipers_core::blocks::{Block, BlockKind};
use multipers_core::fibered::{Bar, Barcode};
use multipers_core::linalg::Column;
use multipers_core::rational::rat;
use multipers_core::{ExtRational, Generator, Grade, Presentation, PrimeField, Rational, Relation};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Interval module of a staircase: one to three births forming an antichain
/// on the grid `step * Z` inside `[0, 10 * step]`, deaths at least
/// `2 * step` past the largest birth coordinate.
pub fn staircase(rng: &mut impl Rng, field: PrimeField, step: &Rational) -> Presentation {
    let k = rng.gen_range(1..=3);
    let mut xs: Vec<usize> = sample(rng, 11, k).into_vec();
    let mut ys: Vec<usize> = sample(rng, 11, k).into_vec();
    xs.sort_unstable();
    ys.sort_unstable_by(|a, b| b.cmp(a));
    let at = |i: usize| step * Rational::from_integer((i as i64).into());
    let births: Vec<Grade> = xs.iter().zip(&ys).map(|(&x, &y)| Grade::new(vec![at(x), at(y)])).collect();
    let top = xs.iter().chain(&ys).copied().max().unwrap() + 2;
    let j = rng.gen_range(1..=2);
    let mut dx: Vec<usize> = sample(rng, 4, j).into_vec();
    let mut dy: Vec<usize> = sample(rng, 4, j).into_vec();
    dx.sort_unstable();
    dy.sort_unstable_by(|a, b| b.cmp(a));
    let deaths: Vec<Grade> = dx
        .iter()
        .zip(&dy)
        .map(|(&x, &y)| Grade::new(vec![at(top + x), at(top + y)]))
        .collect();
    Presentation::staircase_interval(field, &births, &deaths).expect("births and deaths are antichains")
}

/// Moves generators down and relations up by multiples of `unit` in
/// `[0, max]` per coordinate; homogeneity is preserved.
pub fn jitter(rng: &mut impl Rng, p: &Presentation, unit: &Rational, steps: u32) -> Presentation {
    let mut offset = |sign: i64| -> Vec<Rational> {
        (0..p.dim())
            .map(|_| unit * Rational::from_integer((sign * rng.gen_range(0..=steps as i64)).into()))
            .collect()
    };
    let gens = p
        .generators()
        .iter()
        .map(|g| Generator::new(g.label.clone(), g.grade.add(&offset(-1))))
        .collect();
    let rels = p
        .relations()
        .iter()
        .map(|r| Relation::new(r.grade.add(&offset(1)), r.column.clone()))
        .collect();
    Presentation::new(p.dim(), p.field(), gens, rels).expect("jitter keeps relations above generators")
}

/// Generators at multiples of 1/2 in `[0, 6]^n`; each relation sits at the
/// join of its support plus a nonnegative offset.
pub fn presentation(
    rng: &mut impl Rng,
    n: usize,
    max_gens: usize,
    max_rels: usize,
    field: PrimeField,
) -> Presentation {
    let k = rng.gen_range(1..=max_gens);
    let mut half = |lo: i64, hi: i64| rat(rng.gen_range(lo..=hi), 2);
    let grades: Vec<Grade> = (0..k).map(|_| Grade::new((0..n).map(|_| half(0, 12)).collect())).collect();
    let generators = grades
        .iter()
        .enumerate()
        .map(|(i, g)| Generator::new(format!("x{}", i), g.clone()))
        .collect();
    let m = rng.gen_range(0..=max_rels);
    let p = field.characteristic();
    let relations = (0..m)
        .map(|_| {
            let support = rng.gen_range(1..=3.min(k));
            let idx = sample(rng, k, support).into_vec();
            let entries: Vec<(usize, i64)> = idx.iter().map(|&i| (i, rng.gen_range(1..p) as i64)).collect();
            let mut g = grades[idx[0]].clone();
            for &i in &idx {
                g = g.join(&grades[i]);
            }
            let off: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..=6), 2)).collect();
            Relation::new(g.add(&off), Column::from_entries(&field, entries))
        })
        .collect();
    Presentation::new(n, field, generators, relations).expect("relations sit above their support")
}

/// A 1-parameter presentation with up to `max_gens` generators on `[0, 10]`.
pub fn one_parameter(rng: &mut impl Rng, max_gens: usize, field: PrimeField) -> Presentation {
    let k = rng.gen_range(1..=max_gens);
    let grades: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(0..=20), 2)).collect();
    let generators = grades
        .iter()
        .enumerate()
        .map(|(i, g)| Generator::new(format!("x{}", i), Grade::new(vec![g.clone()])))
        .collect();
    let m = rng.gen_range(0..=k + 4);
    let p = field.characteristic();
    let relations = (0..m)
        .map(|_| {
            let support = rng.gen_range(1..=3.min(k));
            let idx = sample(rng, k, support).into_vec();
            let top = idx.iter().map(|&i| grades[i].clone()).max().unwrap();
            let entries: Vec<(usize, i64)> = idx.iter().map(|&i| (i, rng.gen_range(1..p) as i64)).collect();
            let grade = top + rat(rng.gen_range(0..=8), 2);
            Relation::new(Grade::new(vec![grade]), Column::from_entries(&field, entries))
        })
        .collect();
    Presentation::new(1, field, generators, relations).expect("relations sit above their support")
}

pub fn bar(rng: &mut impl Rng) -> Bar {
    let b = rng.gen_range(0..=16);
    if rng.gen_range(0..5) == 0 {
        Bar::infinite(rat(b, 2))
    } else {
        Bar::finite(rat(b, 2), rat(b + rng.gen_range(1..=12), 2))
    }
}

pub fn barcode(rng: &mut impl Rng, max_bars: usize) -> Barcode {
    let k = rng.gen_range(0..=max_bars);
    Barcode::new((0..k).map(|_| bar(rng)))
}

pub fn block(rng: &mut impl Rng, kind: BlockKind) -> Block {
    loop {
        let a = rat(rng.gen_range(-8..=12), 2);
        let b = &a + rat(rng.gen_range(0..=12), 2);
        if let Ok(blk) = Block::new(kind, a, ExtRational::Finite(b)) {
            return blk;
        }
    }
}

pub fn block_kind(rng: &mut impl Rng) -> BlockKind {
    [
        BlockKind::OpenOpen,
        BlockKind::ClosedOpen,
        BlockKind::OpenClosed,
        BlockKind::ClosedClosed,
    ][rng.gen_range(0..4)]
}
