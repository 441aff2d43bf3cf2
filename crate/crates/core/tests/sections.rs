mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use supertropical::catalog::{collapse, minimal, plane, twin};
use supertropical::monoid::{ElementId, SupertropicalMonoid};
use supertropical::oracle::{enumerate_ig_sections, enumerate_mfce};
use supertropical::partition::Partition;
use supertropical::reflection::hat;
use supertropical::relations::{classify, quotient};
use supertropical::sections::*;
use supertropical::transmission::Transmission;

/// Every map `M → U` over the identity on ghosts whose image with `M` is an ideal.
fn brute_sections(u: &SupertropicalMonoid) -> BTreeSet<Vec<ElementId>> {
    let ghosts = u.ghost_order().to_vec();
    let mut out = BTreeSet::new();
    let mut values = ghosts.clone();
    fn rec(u: &SupertropicalMonoid, i: usize, ghosts: &[ElementId], values: &mut Vec<ElementId>, out: &mut BTreeSet<Vec<ElementId>>) {
        if i == ghosts.len() {
            let ideal: BTreeSet<ElementId> = ghosts.iter().chain(values.iter()).copied().collect();
            let closed = ideal.iter().all(|&x| u.elements().all(|y| ideal.contains(&u.mul(x, y))));
            if closed {
                out.insert(values.clone());
            }
            return;
        }
        for x in u.elements().filter(|&x| u.ghost(x) == ghosts[i]) {
            values[i] = x;
            rec(u, i + 1, ghosts, values, out);
        }
    }
    rec(u, 0, &ghosts, &mut values, &mut out);
    out
}

fn section(u: &SupertropicalMonoid, pairs: &[(&str, &str)]) -> Result<IgSection, SectionError> {
    let p: Vec<(ElementId, ElementId)> = pairs.iter().map(|(a, x)| (el(u, a), el(u, x))).collect();
    IgSection::from_pairs(u, &p)
}

#[test]
fn validation_examples() {
    for u in [minimal(), twin(), plane(), collapse()] {
        let t = IgSection::trivial(&u);
        assert!(validate_ig_section(&u, t.values()).is_ok());
        assert!(t.is_trivial());
    }
    let u = collapse();
    let s = section(&u, &[("c", "x1")]).unwrap();
    assert_eq!(s.apply(el(&u, "e")), el(&u, "e"));
    assert!(section(&twin(), &[("c", "x1")]).is_ok());
    assert!(matches!(section(&u, &[("c", "1")]), Err(SectionError::SC1Violated { .. })));
    assert!(matches!(section(&u, &[("c", "x2")]), Err(SectionError::SC2Violated { .. })));
    assert!(matches!(
        section(&supertropical::catalog::swap(), &[("c", "x1")]),
        Err(SectionError::SC2Violated { .. })
    ));
}

#[test]
fn relation_correspondence_examples() {
    let u = twin();
    assert!(relation_of_section(&u, &IgSection::trivial(&u)).is_discrete());

    let u = collapse();
    let s = section(&u, &[("c", "x1")]).unwrap();
    let e = relation_of_section(&u, &s);
    assert_eq!(class_names(&u, &e), vec![vec!["c", "x1"]]);
    assert!(classify(&u, &e).unwrap().is_mixing);
    assert_eq!(section_of_relation(&u, &e).unwrap(), s);

    let u = twin();
    assert!(matches!(
        section_of_relation(&u, &merge(&u, &[&["x1", "x2"]])),
        Err(SectionError::ClassWithTwoTangibles(..))
    ));
}

#[test]
fn poset_examples() {
    let u = twin();
    let s = section(&u, &[("c", "x1")]).unwrap();
    let t = section(&u, &[("c", "x2")]).unwrap();
    let triv = IgSection::trivial(&u);
    assert_eq!(igs_meet(&u, &s, &triv), triv);
    assert_eq!(igs_join(&u, &s, &s).unwrap(), s);
    assert_eq!(igs_join(&u, &s, &t), Err(SectionError::NoUpperBound));
    assert_eq!(igs_meet(&u, &s, &t), triv);
    assert!(triv.is_below(&s) && !s.is_below(&t));
    assert_eq!(igs_sup_family(&u, &[s.clone(), t]), Err(SectionError::NoUpperBound));
}

#[test]
fn son_examples() {
    let u = plane();
    let over: BTreeSet<_> = sons_over(&u, el(&u, "x"), el(&u, "c2")).unwrap().into_iter().collect();
    assert_eq!(over, set(&u, &["x2", "xy"]));
    assert!(!is_tyrant(&u, el(&u, "x")).unwrap());
    assert!(matches!(sons(&u, el(&u, "c")), Err(SectionError::NotTangible(_))));

    let u = collapse();
    assert_eq!(sons(&u, el(&u, "x1")).unwrap().sons, vec![el(&u, "x1")]);
    assert!(is_tyrant(&u, el(&u, "x1")).unwrap());
    let sx = section_of_tyrant(&u, el(&u, "x1")).unwrap();
    assert_eq!(sx.apply(el(&u, "c")), el(&u, "x1"));
    assert_eq!(sx.apply(el(&u, "e")), el(&u, "e"));

    let u = minimal();
    assert!(is_tyrant(&u, u.one()).unwrap());
    assert!(matches!(section_of_tyrant(&plane(), el(&plane(), "x")), Err(SectionError::NotATyrant(_))));
}

#[test]
fn primitive_examples() {
    let u = twin();
    assert!(primitive_sections_below(&u, &IgSection::trivial(&u)).is_empty());

    let u = collapse();
    let s = section(&u, &[("c", "x1")]).unwrap();
    let prims = primitive_sections_below(&u, &s);
    assert_eq!(prims, vec![section_of_tyrant(&u, el(&u, "x1")).unwrap()]);
    assert_eq!(igs_sup_family(&u, &prims).unwrap(), s);
    assert_eq!(primitive_generator(&u, &s), Some(el(&u, "x1")));

    let (u, wide) = (0..500)
        .map(|seed| random(seed, 6))
        .find_map(|u| {
            let s = enumerate_ig_sections(&u).into_iter().find(|s| s.tangible_values().len() >= 2)?;
            Some((u, s))
        })
        .expect("some instance has a section with two tangible values");
    let prims = primitive_sections_below(&u, &wide);
    assert!(prims.len() >= 2);
    assert_eq!(igs_sup_family(&u, &prims).unwrap(), wide);
}

#[test]
fn pushforward_examples() {
    let u = collapse();
    let s = section(&u, &[("c", "x1")]).unwrap();
    assert_eq!(pushforward(&Transmission::identity(&u), &s).unwrap(), s);
    let (sigma, h) = hat(&u);
    assert_eq!(pushforward(&sigma, &s).unwrap(), IgSection::trivial(&h));

    let u = twin();
    let s = section(&u, &[("c", "x1")]).unwrap();
    let pi = quotient(&u, &merge(&u, &[&["x1", "x2"]])).unwrap().projection;
    let pushed = pushforward(&pi, &s).unwrap();
    assert_eq!(pushed.apply(pi.apply(el(&u, "c"))), pi.apply(el(&u, "x1")));

    let nu = supertropical::transmission::ghost_map(&u);
    assert!(pushforward(&nu, &s).is_ok());
    let inc = Transmission::new(minimal(), u.clone(), vec![el(&u, "0"), el(&u, "1"), el(&u, "e")]).unwrap();
    assert_eq!(pushforward(&inc, &IgSection::trivial(&minimal())), Err(SectionError::NotFiberContraction));
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn enumeration_matches_brute_force(u in arb_monoid(7)) {
        let found: BTreeSet<Vec<ElementId>> = enumerate_ig_sections(&u).into_iter().map(|s| s.values().to_vec()).collect();
        prop_assert_eq!(found, brute_sections(&u));
    }

    #[test]
    fn sections_and_relations_correspond(u in arb_monoid(6)) {
        for s in enumerate_ig_sections(&u) {
            let e = relation_of_section(&u, &s);
            prop_assert!(classify(&u, &e).unwrap().is_mixing);
            prop_assert_eq!(section_of_relation(&u, &e).unwrap(), s);
        }
        for e in enumerate_mfce(&u).unwrap() {
            if let Ok(s) = section_of_relation(&u, &e) {
                let back: Partition = relation_of_section(&u, &s);
                if back == e {
                    continue;
                }
                prop_assert!(back.is_finer(&e));
            }
        }
    }

    #[test]
    fn section_values_are_tyrants_below(u in arb_monoid(7)) {
        for s in enumerate_ig_sections(&u) {
            for x in s.tangible_values() {
                prop_assert!(is_tyrant(&u, x).unwrap());
                let sx = section_of_tyrant(&u, x).unwrap();
                prop_assert!(sx.is_below(&s));
            }
            prop_assert_eq!(igs_sup_family(&u, &primitive_sections_below(&u, &s)).unwrap(), s);
        }
    }

    #[test]
    fn tyrants_are_exactly_section_values(u in arb_monoid(7)) {
        let all = enumerate_ig_sections(&u);
        let m = u.ghost_ideal();
        for x in u.tangibles() {
            let tyrant = is_tyrant(&u, x).unwrap();
            prop_assert_eq!(tyrant, all.iter().any(|s| s.image().contains(&x)));
            let generated: BTreeSet<ElementId> = m.iter().copied().chain(u.multiples(x)).collect();
            let generates = all.iter().any(|s| m.iter().copied().chain(s.image()).collect::<BTreeSet<_>>() == generated);
            prop_assert_eq!(tyrant, generates);
            if tyrant {
                for z in sons(&u, x).unwrap().sons {
                    prop_assert!(is_tyrant(&u, z).unwrap());
                }
            }
        }
    }
}
