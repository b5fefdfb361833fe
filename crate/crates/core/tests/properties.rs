use std::collections::BTreeSet;

use evenodd_gg::bijections::{backward, forward, TransformCase};
use evenodd_gg::classes::{Class, FamilyIndex};
use evenodd_gg::partition::{enumerate_partitions, split_even_odd, EnumConstraints, Partition};
use evenodd_gg::recurrence::{h_recurrence, CountKey, CountTable};
use proptest::prelude::*;

fn constraints() -> impl Strategy<Value = EnumConstraints> {
    (1u32..5, proptest::option::of(0u32..8), proptest::option::of(0usize..6)).prop_map(
        |(min, extra, len)| EnumConstraints::new(min, extra.map(|e| min + e), len).unwrap(),
    )
}

fn partition() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u32..30, 0..8).prop_map(|v| Partition::from_multiset(v).unwrap())
}

proptest! {
    #[test]
    fn enumeration_is_sorted_distinct_and_admitted(n in 0u32..22, c in constraints()) {
        let all: Vec<Partition> = enumerate_partitions(n, c).collect();
        let distinct: BTreeSet<&Partition> = all.iter().collect();
        prop_assert_eq!(distinct.len(), all.len());
        for p in &all {
            prop_assert_eq!(p.weight(), n);
            prop_assert!(c.admits(p));
        }
        for w in all.windows(2) {
            prop_assert!(w[0].parts() > w[1].parts());
        }
        // Nothing admitted is missed.
        let unconstrained = enumerate_partitions(n, EnumConstraints::default())
            .filter(|p| c.admits(p))
            .count();
        prop_assert_eq!(unconstrained, all.len());
    }

    #[test]
    fn split_then_merge_is_identity(p in partition()) {
        let split = split_even_odd(&p);
        prop_assert_eq!(split.r() + split.s(), p.len());
        prop_assert!(split.evens.iter().all(|x| x % 2 == 0));
        prop_assert!(split.odds.iter().all(|x| x % 2 == 1));
        prop_assert_eq!(split.merge(), p);
    }

    #[test]
    fn predicates_ignore_input_order(mut parts in proptest::collection::vec(1u32..30, 0..8)) {
        let sorted = Partition::from_multiset(parts.clone()).unwrap();
        parts.reverse();
        let reversed = Partition::from_multiset(parts).unwrap();
        for class in Class::ALL {
            for i in FamilyIndex::ALL {
                prop_assert_eq!(class.contains(&sorted, i), class.contains(&reversed, i));
            }
        }
    }

    #[test]
    fn forward_images_invert_and_carry_weight(p in partition()) {
        let split = split_even_odd(&p);
        let (r, s, n) = (split.r() as i64, split.s() as i64, i64::from(p.weight()));
        for case in TransformCase::ALL {
            if let Ok(mu) = forward(case, &p) {
                let target = case.target_key(r, s, n);
                prop_assert_eq!(i64::from(mu.weight()), target.n);
                let mu_split = split_even_odd(&mu);
                prop_assert_eq!((mu_split.r() as i64, mu_split.s() as i64), (target.r, target.s));
                prop_assert!(case.family.contains(&mu, FamilyIndex::One));
                prop_assert_eq!(backward(case, &mu, r, s).unwrap(), p.clone());
            }
        }
    }

    #[test]
    fn recurrence_vanishing_tail_and_monotone_difference(r in 0i64..8, s in 0i64..8, n in 0i64..40) {
        let mut memo = CountTable::new();
        let h1 = h_recurrence(CountKey::new(FamilyIndex::One, r, s, n), &mut memo).unwrap();
        let h2 = h_recurrence(CountKey::new(FamilyIndex::Two, r, s, n), &mut memo).unwrap();
        prop_assert!(h1 >= h2);
        if r + s > n {
            prop_assert_eq!(h1, 0);
            prop_assert_eq!(h2, 0);
        }
    }
}
