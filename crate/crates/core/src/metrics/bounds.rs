//! Lower bounds for the interleaving distance from ranks of internal maps.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::grade::Grade;
use crate::metrics::matching::check_compatible;
use crate::metrics::{BoundKind, DistanceReport};
use crate::presentation::Presentation;
use crate::rational::{int, midpoint, ExtRational, Rational};

/// Necessary conditions for an `eps`-interleaving of `a` into `b`:
///
/// * `rank(A_x -> A_{x + 2 eps}) <= dim B_{x + eps}` for probes `x`;
/// * for two generator grades `s1, s2` of `a` and `t = s1 v s2 + 2 eps`, the
///   images of `A_{s1}, A_{s2}` in `A_t` span at most as much as the images
///   of `B_{s1 + eps}, B_{s2 + eps}` in `B_{t - eps}`.
///
/// Both follow from `A_s -> A_t` factoring through `B_{s+eps} -> B_{t-eps}`.
fn one_sided(a: &Presentation, b: &Presentation, axes: &[Vec<Rational>], extra: &[Grade], eps: &Rational) -> bool {
    let two = eps + eps;
    let shifted: Vec<Vec<Rational>> = axes
        .iter()
        .map(|axis| {
            let set: BTreeSet<Rational> = axis
                .iter()
                .flat_map(|x| [x.clone(), x - eps, x - &two])
                .collect();
            set.into_iter().collect()
        })
        .collect();
    let lowest: Vec<&Grade> = a.generators().iter().map(|g| &g.grade).collect();
    let check = |x: &Grade| -> bool {
        if !lowest.iter().any(|g| g.leq(x)) {
            return true;
        }
        a.map_rank(x, &x.translate(&two)) <= b.hilbert(&x.translate(eps))
    };
    if !extra.iter().all(check) {
        return false;
    }
    // Odometer over the product of the shifted axes.
    let n = shifted.len();
    if shifted.iter().any(Vec::is_empty) {
        return true;
    }
    let mut idx = alloc::vec![0usize; n];
    loop {
        let x = Grade::new((0..n).map(|i| shifted[i][idx[i]].clone()).collect());
        if !check(&x) {
            return false;
        }
        let mut k = 0;
        loop {
            if k == n {
                break;
            }
            idx[k] += 1;
            if idx[k] < shifted[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }

    let mut sources: Vec<Grade> = a.generators().iter().map(|g| g.grade.clone()).collect();
    sources.sort();
    sources.dedup();
    for i in 0..sources.len() {
        for j in i + 1..sources.len() {
            let pair = [sources[i].clone(), sources[j].clone()];
            let t = pair[0].join(&pair[1]).translate(&two);
            let lhs = a.image_dim(&pair, &t);
            let lifted = [pair[0].translate(eps), pair[1].translate(eps)];
            let rhs = b.image_dim(&lifted, &t.translate(&-eps));
            if lhs > rhs {
                return false;
            }
        }
    }
    true
}

/// Largest `eps0` such that the rank conditions fail for every `eps < eps0`;
/// a lower bound for the interleaving distance.
///
/// The conditions only change when `eps` or `2 eps` crosses a difference of
/// grid coordinates on some axis, so each stratum between consecutive
/// breakpoints is tested once, in increasing order. `probes` are checked in
/// addition to the grid-derived probes.
pub fn rank_lower_bound(p: &Presentation, q: &Presentation, probes: &[Grade]) -> Result<DistanceReport> {
    check_compatible(p, q)?;
    for pr in probes {
        pr.check_dim(p.dim())?;
    }
    let (pm, qm) = (p.minimize(), q.minimize());
    let grid = pm.betti_and_grid().grid.union(&qm.betti_and_grid().grid);
    let mut axes: Vec<Vec<Rational>> = grid.axes().to_vec();
    for pr in probes {
        for (axis, c) in axes.iter_mut().zip(pr.coords()) {
            axis.push(c.clone());
        }
    }
    for axis in axes.iter_mut() {
        axis.sort();
        axis.dedup();
    }

    let mut breaks: BTreeSet<Rational> = BTreeSet::new();
    breaks.insert(Rational::zero());
    for axis in &axes {
        for (i, x) in axis.iter().enumerate() {
            for y in &axis[..i] {
                let d = x - y;
                if d.is_positive() {
                    breaks.insert(&d / int(2));
                    breaks.insert(d);
                }
            }
        }
    }
    let breaks: Vec<Rational> = breaks.into_iter().collect();

    let holds = |eps: &Rational| {
        one_sided(&pm, &qm, &axes, probes, eps) && one_sided(&qm, &pm, &axes, probes, eps)
    };
    let mut value = ExtRational::Infinite;
    for (j, c) in breaks.iter().enumerate() {
        let above = match breaks.get(j + 1) {
            Some(next) => midpoint(c, next),
            None => c + Rational::one(),
        };
        if holds(c) || holds(&above) {
            value = ExtRational::Finite(c.clone());
            break;
        }
    }
    Ok(DistanceReport {
        value,
        argmax_line: None,
        kind: BoundKind::LowerBound,
        certificate: None,
        lines_evaluated: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::rational::rat;
    use crate::testing::{example31_n, example31_o};

    fn f2() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn self_distance_zero() {
        let n = example31_n();
        assert_eq!(rank_lower_bound(&n, &n, &[]).unwrap().value, ExtRational::zero());
    }

    #[test]
    fn free_vs_zero_is_infinite() {
        let p = Presentation::free(2, f2(), &[Grade::from_ints(&[0, 0])]).unwrap();
        let z = Presentation::zero(2, f2()).unwrap();
        assert_eq!(rank_lower_bound(&p, &z, &[]).unwrap().value, ExtRational::Infinite);
    }

    #[test]
    fn square_vs_zero() {
        let p = Presentation::rectangle(
            f2(),
            &Grade::from_ints(&[0, 0]),
            &[ExtRational::Finite(int(2)), ExtRational::Finite(int(2))],
        )
        .unwrap();
        let z = Presentation::zero(2, f2()).unwrap();
        assert_eq!(rank_lower_bound(&p, &z, &[]).unwrap().value, ExtRational::Finite(int(1)));
    }

    #[test]
    fn translate_bound() {
        let p = Presentation::rectangle(
            f2(),
            &Grade::from_ints(&[0, 0]),
            &[ExtRational::Finite(int(3)), ExtRational::Finite(int(4))],
        )
        .unwrap();
        let q = p.translate(&rat(1, 2));
        assert_eq!(rank_lower_bound(&p, &q, &[]).unwrap().value, ExtRational::Finite(rat(1, 2)));
    }

    #[test]
    fn example31_positive() {
        let v = rank_lower_bound(&example31_n(), &example31_o(), &[]).unwrap().value;
        assert!(v > ExtRational::zero(), "bound {}", v);
        assert!(v <= ExtRational::Finite(int(1)));
    }
}
