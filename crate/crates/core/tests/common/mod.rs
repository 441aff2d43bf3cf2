#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use supertropical::monoid::{ElementId, MonoidRef, SupertropicalMonoid};
use supertropical::partition::Partition;
use supertropical::random::{random_monoid, rng_for};

pub fn el(u: &SupertropicalMonoid, name: &str) -> ElementId {
    u.lookup(name).unwrap_or_else(|_| panic!("{name} not in {}", u.name()))
}

pub fn set(u: &SupertropicalMonoid, names: &[&str]) -> BTreeSet<ElementId> {
    names.iter().map(|n| el(u, n)).collect()
}

/// Partition whose nontrivial classes are the given groups.
pub fn merge(u: &SupertropicalMonoid, groups: &[&[&str]]) -> Partition {
    let classes: Vec<Vec<ElementId>> =
        groups.iter().map(|g| g.iter().map(|n| el(u, n)).collect()).collect();
    Partition::from_classes(u.size(), &classes).expect("disjoint groups")
}

pub fn names(u: &SupertropicalMonoid, xs: impl IntoIterator<Item = ElementId>) -> Vec<String> {
    xs.into_iter().map(|x| u.element_name(x).to_string()).collect()
}

/// Nontrivial classes by name, sorted.
pub fn class_names(u: &SupertropicalMonoid, p: &Partition) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = p
        .classes()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let mut n = names(u, c);
            n.sort();
            n
        })
        .collect();
    out.sort();
    out
}

pub fn random(seed: u64, size: usize) -> MonoidRef {
    Arc::new(random_monoid(&mut rng_for(seed), size, &format!("r{seed}")))
}

/// Random monoids of size 4 to `max`.
pub fn arb_monoid(max: usize) -> impl Strategy<Value = MonoidRef> {
    (any::<u64>(), 2..=max).prop_map(|(seed, size)| random(seed, size))
}

/// Brute-force check that a partition is multiplicative, fiber-conserving and
/// satisfies the zero condition.
pub fn brute_mfce(u: &SupertropicalMonoid, p: &Partition) -> bool {
    let all: Vec<ElementId> = u.elements().collect();
    for &x in &all {
        if p.same(u.ghost(x), u.zero()) && !p.same(x, u.zero()) {
            return false;
        }
        for &y in &all {
            if !p.same(x, y) {
                continue;
            }
            if u.ghost(x) != u.ghost(y) {
                return false;
            }
            if all.iter().any(|&z| !p.same(u.mul(x, z), u.mul(y, z))) {
                return false;
            }
        }
    }
    true
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
