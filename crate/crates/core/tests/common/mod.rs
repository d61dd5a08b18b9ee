#![allow(dead_code)]

use multipers_core::linalg::Column;
use multipers_core::rational::rat;
use multipers_core::{Generator, Grade, PrimeField, Presentation, Rational, Relation};
use num_traits::Signed;
use proptest::prelude::*;

/// Multiples of 1/2 in [lo/2, hi/2].
pub fn half(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi).prop_map(|k| rat(k, 2))
}

pub fn grade2(lo: i64, hi: i64) -> impl Strategy<Value = Grade> {
    (half(lo, hi), half(lo, hi)).prop_map(|(x, y)| Grade::new(vec![x, y]))
}

/// Random valid presentation with `n` parameters: each relation sits at the
/// join of its support plus a random offset.
pub fn presentation(n: usize, max_gens: usize, max_rels: usize, p: u64) -> impl Strategy<Value = Presentation> {
    let grade = proptest::collection::vec(0i64..=12, n).prop_map(|c| Grade::new(c.into_iter().map(|k| rat(k, 2)).collect()));
    let gens = proptest::collection::vec(grade, 1..=max_gens);
    gens.prop_flat_map(move |gens| {
        let k = gens.len();
        let rel = (
            proptest::collection::vec((0..k, 1..p as i64), 1..=3),
            proptest::collection::vec(0i64..=6, n),
        );
        (Just(gens), proptest::collection::vec(rel, 0..=max_rels))
    })
    .prop_map(move |(gens, rels)| {
        let f = PrimeField::new(p).unwrap();
        let generators: Vec<Generator> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| Generator::new(format!("x{}", i), g.clone()))
            .collect();
        let relations = rels
            .into_iter()
            .map(|(entries, offset)| {
                let mut g = gens[entries[0].0].clone();
                for &(i, _) in &entries {
                    g = g.join(&gens[i]);
                }
                let off: Vec<Rational> = offset.into_iter().map(|k| rat(k, 2)).collect();
                Relation::new(g.add(&off), Column::from_entries(&f, entries))
            })
            .collect();
        Presentation::new(n, f, generators, relations).unwrap()
    })
}

/// Grades on the product of all coordinates appearing in `p`, their
/// midpoints, and one step beyond each end.
pub fn refined_grid(p: &Presentation) -> Vec<Grade> {
    let n = p.dim();
    let mut axes: Vec<Vec<Rational>> = vec![Vec::new(); n];
    for g in p.grades() {
        for (i, c) in g.coords().iter().enumerate() {
            axes[i].push(c.clone());
        }
    }
    for axis in axes.iter_mut() {
        axis.sort();
        axis.dedup();
        let mut extra: Vec<Rational> = axis.windows(2).map(|w| (&w[0] + &w[1]) / rat(2, 1)).collect();
        if let (Some(first), Some(last)) = (axis.first().cloned(), axis.last().cloned()) {
            extra.push(first - rat(1, 1));
            extra.push(last + rat(1, 1));
        }
        axis.extend(extra);
        axis.sort();
    }
    multipers_core::GridFunction::new(axes).points()
}

use multipers_core::fibered::{Bar, Barcode};
use multipers_core::ExtRational;

pub fn bar_strategy() -> impl Strategy<Value = Bar> {
    (0i64..=16, 1i64..=12, 0u8..5).prop_map(|(b, len, inf)| {
        if inf == 0 {
            Bar::infinite(rat(b, 2))
        } else {
            Bar::finite(rat(b, 2), rat(b + len, 2))
        }
    })
}

pub fn barcode_strategy(max: usize) -> impl Strategy<Value = Barcode> {
    proptest::collection::vec(bar_strategy(), 0..=max).prop_map(Barcode::new)
}

fn cost(a: &Bar, b: &Bar) -> ExtRational {
    let db = ExtRational::Finite((&a.birth - &b.birth).abs());
    match (&a.death, &b.death) {
        (ExtRational::Infinite, ExtRational::Infinite) => db,
        (ExtRational::Finite(x), ExtRational::Finite(y)) => db.max(ExtRational::Finite((x - y).abs())),
        _ => ExtRational::Infinite,
    }
}

fn half_length(a: &Bar) -> ExtRational {
    match &a.death {
        ExtRational::Finite(d) => ExtRational::Finite((d - &a.birth) / rat(2, 1)),
        ExtRational::Infinite => ExtRational::Infinite,
    }
}

/// Minimum over all partial matchings, by exhaustive recursion.
pub fn brute_bottleneck(x: &[Bar], y: &[Bar]) -> ExtRational {
    fn go(x: &[Bar], y: &[Bar], used: &mut Vec<bool>, i: usize) -> ExtRational {
        if i == x.len() {
            return y
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(b, _)| half_length(b))
                .max()
                .unwrap_or_else(ExtRational::zero);
        }
        let mut best = half_length(&x[i]).max(go(x, y, used, i + 1));
        for j in 0..y.len() {
            if !used[j] {
                used[j] = true;
                let c = cost(&x[i], &y[j]).max(go(x, y, used, i + 1));
                used[j] = false;
                best = best.min(c);
            }
        }
        best
    }
    go(x, y, &mut vec![false; y.len()], 0)
}
