//! Bottleneck matchings by threshold search and bipartite augmenting paths.

use alloc::vec::Vec;

use crate::fibered::{Bar, Barcode};
use crate::rational::ExtRational;

/// Optimal partial matching between two finite families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub value: ExtRational,
    /// Matched `(left, right)` pairs; everything else is unmatched.
    pub pairs: Vec<(usize, usize)>,
}

/// Minimizes the largest cost over partial matchings of `left` items against
/// `right` items. `cost` returns `None` for pairs that may not be matched;
/// unmatched items pay their deletion cost.
pub fn bottleneck_assignment(
    left: usize,
    right: usize,
    cost: impl Fn(usize, usize) -> Option<ExtRational>,
    delete_left: impl Fn(usize) -> ExtRational,
    delete_right: impl Fn(usize) -> ExtRational,
) -> Assignment {
    let pair_cost: Vec<Vec<Option<ExtRational>>> =
        (0..left).map(|i| (0..right).map(|j| cost(i, j)).collect()).collect();
    let del_l: Vec<ExtRational> = (0..left).map(&delete_left).collect();
    let del_r: Vec<ExtRational> = (0..right).map(&delete_right).collect();

    let mut candidates: Vec<ExtRational> = pair_cost
        .iter()
        .flatten()
        .flatten()
        .chain(&del_l)
        .chain(&del_r)
        .cloned()
        .collect();
    candidates.push(ExtRational::zero());
    candidates.sort();
    candidates.dedup();

    let solve = |tau: &ExtRational| -> Option<Vec<(usize, usize)>> {
        // Left vertices: items 0..left, then diagonal copies of right items.
        // Right vertices: items 0..right, then diagonal copies of left items.
        let n = left + right;
        let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for i in 0..left {
            for (j, cost) in pair_cost[i].iter().enumerate() {
                if matches!(cost, Some(c) if c <= tau) {
                    adj[i].push(j);
                }
            }
            if del_l[i] <= *tau {
                adj[i].push(right + i);
            }
        }
        for j in 0..right {
            if del_r[j] <= *tau {
                adj[left + j].push(j);
            }
            adj[left + j].extend(right..right + left);
        }
        let matched = perfect_matching(n, &adj)?;
        Some(
            (0..left)
                .filter_map(|i| (matched[i] < right).then_some((i, matched[i])))
                .collect(),
        )
    };

    let (mut lo, mut hi) = (0usize, candidates.len());
    // Invariant: candidates[hi] feasible if hi < len; everything below lo infeasible.
    let mut best = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match solve(&candidates[mid]) {
            Some(pairs) => {
                best = Some((candidates[mid].clone(), pairs));
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    match best {
        Some((value, pairs)) => Assignment { value, pairs },
        None => Assignment {
            value: ExtRational::Infinite,
            pairs: Vec::new(),
        },
    }
}

/// Kuhn's algorithm; returns the partner of every left vertex when a
/// perfect matching exists.
fn perfect_matching(n: usize, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut match_right: Vec<Option<usize>> = alloc::vec![None; n];
    for u in 0..n {
        let mut seen = alloc::vec![false; n];
        if !augment(u, adj, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut match_left = alloc::vec![0; n];
    for (v, u) in match_right.iter().enumerate() {
        if let Some(u) = u {
            match_left[*u] = v;
        }
    }
    Some(match_left)
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(w) => augment(w, adj, seen, match_right),
        };
        if free {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Cost of matching two bars: l-inf distance of endpoints, infinite when
/// exactly one bar is infinite.
pub fn bar_cost(a: &Bar, b: &Bar) -> ExtRational {
    let births = ExtRational::Finite(crate::rational::abs_diff(&a.birth, &b.birth));
    match (&a.death, &b.death) {
        (ExtRational::Finite(_), ExtRational::Finite(_)) => births.max(a.death.distance(&b.death)),
        (ExtRational::Infinite, ExtRational::Infinite) => births,
        _ => ExtRational::Infinite,
    }
}

/// Cost of leaving a bar unmatched: half its length.
pub fn bar_deletion(a: &Bar) -> ExtRational {
    a.length().half()
}

pub fn bottleneck(b1: &Barcode, b2: &Barcode) -> ExtRational {
    if b1 == b2 {
        return ExtRational::zero();
    }
    bottleneck_matching(b1, b2).value
}

pub fn bottleneck_matching(b1: &Barcode, b2: &Barcode) -> Assignment {
    let (x, y) = (b1.bars(), b2.bars());
    bottleneck_assignment(
        x.len(),
        y.len(),
        |i, j| Some(bar_cost(&x[i], &y[j])),
        |i| bar_deletion(&x[i]),
        |j| bar_deletion(&y[j]),
    )
}
