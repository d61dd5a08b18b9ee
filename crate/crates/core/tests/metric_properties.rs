mod common;

use common::{barcode_strategy, brute_bottleneck, presentation};
use multipers_core::metrics::{bottleneck, matching_distance, LineSample};
use multipers_core::ExtRational;
use proptest::prelude::*;

fn add(a: ExtRational, b: ExtRational) -> ExtRational {
    match (a, b) {
        (ExtRational::Finite(x), ExtRational::Finite(y)) => ExtRational::Finite(x + y),
        _ => ExtRational::Infinite,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bottleneck_matches_brute_force(a in barcode_strategy(6), b in barcode_strategy(6)) {
        prop_assert_eq!(bottleneck(&a, &b), brute_bottleneck(a.bars(), b.bars()));
    }

    #[test]
    fn bottleneck_is_a_metric(a in barcode_strategy(5), b in barcode_strategy(5), c in barcode_strategy(5)) {
        prop_assert_eq!(bottleneck(&a, &a), ExtRational::zero());
        prop_assert_eq!(bottleneck(&a, &b), bottleneck(&b, &a));
        prop_assert!(bottleneck(&a, &c) <= add(bottleneck(&a, &b), bottleneck(&b, &c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn matching_distance_is_monotone_in_the_sample(p in presentation(2, 4, 5, 2), q in presentation(2, 4, 5, 2), cut in 1usize..40) {
        let full = LineSample::for_modules(&[&p, &q], 8).unwrap();
        let mut part = full.clone();
        part.lines.truncate(cut.min(full.lines.len()));
        let small = matching_distance(&p, &q, &part).unwrap().value;
        let big = matching_distance(&p, &q, &full).unwrap().value;
        prop_assert!(small <= big);
        prop_assert_eq!(matching_distance(&p, &p, &full).unwrap().value, ExtRational::zero());
    }
}
