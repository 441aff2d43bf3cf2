mod common;

use common::*;
use proptest::prelude::*;
use supertropical::catalog::{minimal, plane, twin};
use supertropical::oracle::*;
use supertropical::partition::Partition;
use supertropical::relations::ghost_kernel;

#[test]
fn restricted_growth_strings_count_partitions() {
    let counts: Vec<usize> = (0..7)
        .map(|k| {
            let mut n = 0;
            for_each_rgs(k, |_| n += 1);
            n
        })
        .collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    assert!(matches!(PartitionEnumerator::new(9, 7), Err(OracleError::TooLarge { size: 9, cap: 7 })));
}

#[test]
fn refinements_respect_the_cap() {
    let p = Partition::full(5);
    assert_eq!(refinements(&p, 100).unwrap().len(), 52);
    assert_eq!(refinements(&p, 10), Err(OracleError::TooManyCandidates(52)));
    assert_eq!(refinements(&Partition::discrete(4), 1).unwrap(), vec![Partition::discrete(4)]);
}

#[test]
fn closure_examples() {
    let u = twin();
    assert_eq!(closure_mfce(&u, &[]).unwrap(), Partition::discrete(u.size()));
    let c = closure_mfce(&u, &[(el(&u, "x1"), el(&u, "x2"))]).unwrap();
    assert_eq!(class_names(&u, &c), vec![vec!["x1", "x2"]]);
    assert!(matches!(
        closure_mfce(&u, &[(el(&u, "x1"), el(&u, "e"))]),
        Err(OracleError::FiberIncompatibleSeed(..))
    ));

    let u = plane();
    let c = closure_mfce(&u, &[(el(&u, "x2"), el(&u, "xy"))]).unwrap();
    assert!(c.same(el(&u, "x2"), el(&u, "xy")));
    assert!(c.same(el(&u, "x3"), el(&u, "x2y")));
    assert!(!c.same(el(&u, "x"), el(&u, "y")));
}

#[test]
fn enumeration_examples() {
    let u = minimal();
    let all = enumerate_mfce(&u).unwrap();
    assert_eq!(all.len(), 2);
    assert!(all.contains(&Partition::discrete(u.size())));

    let u = twin();
    let all = enumerate_mfce(&u).unwrap();
    assert!(all.contains(&merge(&u, &[&["x1", "x2"]])));
    assert!(all.contains(&merge(&u, &[&["x1", "c"]])));
    assert!(!all.contains(&merge(&u, &[&["e", "c"]])));
    assert!(all.iter().all(|p| p.is_finer(&ghost_kernel(&u))));
}

#[test]
fn finest_with_examples() {
    let u = twin();
    assert_eq!(finest_with(&u, |_| true).unwrap(), Finest::Unique(Partition::discrete(u.size())));
    let x1 = el(&u, "x1");
    let c = el(&u, "c");
    assert_eq!(
        finest_with(&u, |p| p.same(x1, c)).unwrap(),
        Finest::Unique(merge(&u, &[&["x1", "c"]]))
    );
    let e = u.e();
    assert_eq!(finest_with(&u, |p| p.same(x1, e)).unwrap(), Finest::None);
}

#[test]
fn ghost_separating_within_examples() {
    let u = twin();
    let full = merge(&u, &[&["x1", "x2", "c"]]);
    let inner = coarsest_ghost_separating_within(&u, &full).unwrap();
    assert_eq!(inner, Some(merge(&u, &[&["x1", "x2"]])));
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn enumeration_agrees_with_exhaustive_search(u in arb_monoid(6)) {
        let mut fast = enumerate_mfce(&u).unwrap();
        let mut slow = enumerate_mfce_exhaustive(&u, 7).unwrap();
        fast.sort_by(|a, b| a.labels().cmp(b.labels()));
        slow.sort_by(|a, b| a.labels().cmp(b.labels()));
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn closure_is_the_least_relation_containing_its_seeds(u in arb_monoid(6), picks in prop::collection::vec((0usize..64, 0usize..64), 0..3)) {
        let n = u.size();
        let seeds: Vec<_> = picks
            .iter()
            .map(|&(a, b)| (supertropical::ElementId(a % n), supertropical::ElementId(b % n)))
            .filter(|&(a, b)| u.ghost(a) == u.ghost(b))
            .collect();
        let c = closure_mfce(&u, &seeds).unwrap();
        let containing: Vec<Partition> = enumerate_mfce(&u)
            .unwrap()
            .into_iter()
            .filter(|p| seeds.iter().all(|&(a, b)| p.same(a, b)))
            .collect();
        if containing.is_empty() {
            prop_assert!(!brute_mfce(&u, &c));
        } else {
            prop_assert!(brute_mfce(&u, &c));
            prop_assert!(containing.contains(&c));
            prop_assert!(containing.iter().all(|p| c.is_finer(p)));
        }
    }
}
