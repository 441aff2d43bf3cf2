mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use supertropical::catalog::{collapse, minimal, plane, swap, twin};
use supertropical::construct::{str_construct, ConstructError, MonoidWithZero, OrderedGhostSemiring};
use supertropical::monoid::{spec_from_fn, validate_monoid, ElementId, Kind, MonoidError, SupertropicalMonoid};
use supertropical::oracle::isomorphisms;
use supertropical::reflection::{hat, ideal_compression};
use supertropical::unfold::unfold;

/// `z(x+y) = zx+zy` for all triples, with addition computed from ranks.
fn brute_semiring(u: &SupertropicalMonoid) -> bool {
    let rank = |x: ElementId| u.rank(u.ghost(x)).unwrap();
    let add = |x: ElementId, y: ElementId| match rank(x).cmp(&rank(y)) {
        std::cmp::Ordering::Greater => x,
        std::cmp::Ordering::Less => y,
        std::cmp::Ordering::Equal => u.ghost(x),
    };
    u.elements().all(|z| {
        u.elements().all(|x| u.elements().all(|y| u.mul(z, add(x, y)) == add(u.mul(z, x), u.mul(z, y))))
    })
}

#[test]
fn fixtures_validate() {
    for u in [minimal(), twin(), plane(), collapse(), swap()] {
        assert!(validate_monoid(u.to_spec()).is_ok(), "{}", u.name());
    }
    assert_eq!(plane().size(), 15);
}

#[test]
fn twin_with_reversed_ghosts_is_still_compatible() {
    let mut spec = twin().to_spec();
    spec.ghost_order.swap(1, 2);
    let u = validate_monoid(spec).unwrap();
    assert_eq!(u.cmp_ghosts(el(&u, "c"), el(&u, "e")), std::cmp::Ordering::Less);
}

#[test]
fn incompatible_order_is_rejected() {
    let product = |a: &str, b: &str| -> String {
        match (a, b) {
            ("0", _) | (_, "0") => "0".into(),
            ("1", o) | (o, "1") => o.into(),
            ("e", o) | (o, "e") => if o == "e" { "e" } else { o }.into(),
            _ => "d".into(),
        }
    };
    let names = ["0", "1", "e", "c", "d"];
    let good = spec_from_fn("chain", &names, "0", "1", "e", &["0", "e", "c", "d"], product).unwrap();
    assert!(validate_monoid(good).is_ok());
    let bad = spec_from_fn("chain", &names, "0", "1", "e", &["0", "e", "d", "c"], product).unwrap();
    assert!(matches!(validate_monoid(bad), Err(MonoidError::OrderIncompatible { .. })));
}

#[test]
fn malformed_tables_are_rejected() {
    let mut spec = twin().to_spec();
    spec.table[4 * 6 + 5] = ElementId(3);
    spec.table[5 * 6 + 4] = ElementId(4);
    assert!(matches!(validate_monoid(spec), Err(MonoidError::NonCommutative { .. })));

    let mut spec = minimal().to_spec();
    spec.ghost_order = vec![ElementId(0)];
    assert!(matches!(validate_monoid(spec), Err(MonoidError::GhostNotClosed(_))));
}

#[test]
fn kinds_and_fibers() {
    let u = minimal();
    assert_eq!(u.kind(el(&u, "1")), Kind::Tangible);
    assert_eq!(u.ghost(el(&u, "1")), el(&u, "e"));
    assert_eq!(u.kind(el(&u, "0")), Kind::Zero);
    assert_eq!(u.kind(el(&u, "e")), Kind::Ghost);

    let u = twin();
    let fiber: BTreeSet<_> = u.fiber(el(&u, "c")).unwrap().into_iter().collect();
    assert_eq!(fiber, set(&u, &["c", "x1", "x2"]));
    assert!(matches!(u.fiber(el(&u, "x1")), Err(MonoidError::NotGhost(_))));

    let u = plane();
    let fiber: BTreeSet<_> = u.fiber(el(&u, "c2")).unwrap().into_iter().collect();
    assert_eq!(fiber, set(&u, &["c2", "x2", "xy", "y2"]));
}

fn minimal_parts() -> (MonoidWithZero, OrderedGhostSemiring) {
    let n = MonoidWithZero::new(
        vec!["0".into(), "1".into()],
        vec![ElementId(0), ElementId(0), ElementId(0), ElementId(1)],
        ElementId(0),
        ElementId(1),
    )
    .unwrap();
    let m = OrderedGhostSemiring::new(
        "M",
        vec!["0".into(), "e".into()],
        vec![ElementId(0), ElementId(0), ElementId(0), ElementId(1)],
        ElementId(0),
        ElementId(1),
        vec![ElementId(0), ElementId(1)],
    )
    .unwrap();
    (n, m)
}

#[test]
fn construct_minimal() {
    let (n, m) = minimal_parts();
    let built = str_construct("built", &n, &m, &[ElementId(0), ElementId(1)]).unwrap();
    let built = Arc::new(built.monoid);
    assert!(built.is_unfolded());
    assert_eq!(isomorphisms(&built, &minimal()).len(), 1);
}

#[test]
fn construct_rejects_unit_mismatch() {
    let (n, m) = minimal_parts();
    let err = str_construct("bad", &n, &m, &[ElementId(0), ElementId(0)]).unwrap_err();
    assert_eq!(err, ConstructError::RhoUnitMismatch);
    let err = str_construct("bad", &n, &m, &[ElementId(0)]).unwrap_err();
    assert_eq!(err, ConstructError::RhoShape);
}

/// Monomials of degree at most 3 plus an absorbing top, glued to the ghost
/// chain by degree, agree with the unfolding of the plane at the same support.
#[test]
fn construct_plane_unfolding() {
    let u = plane();
    let monos: Vec<(usize, usize)> =
        (0..=3).flat_map(|d| (0..=d).rev().map(move |i| (i, d - i))).collect();
    let mut n_names = vec!["0".to_string(), "top".to_string()];
    n_names.extend(monos.iter().map(|&(i, j)| supertropical::catalog::monomial_name(i, j)));
    let idx = |name: &str| ElementId(n_names.iter().position(|n| n == name).unwrap());
    let deg = |k: usize| -> Option<(usize, usize)> { (k >= 2).then(|| monos[k - 2]) };
    let size = n_names.len();
    let mut table = Vec::new();
    for a in 0..size {
        for b in 0..size {
            let r = match (a, b) {
                (0, _) | (_, 0) => "0".to_string(),
                (1, _) | (_, 1) => "top".to_string(),
                _ => {
                    let ((i, j), (k, l)) = (deg(a).unwrap(), deg(b).unwrap());
                    if i + j + k + l <= 3 {
                        supertropical::catalog::monomial_name(i + k, j + l)
                    } else {
                        "top".to_string()
                    }
                }
            };
            table.push(idx(&r));
        }
    }
    let n = MonoidWithZero::new(n_names.clone(), table, ElementId(0), idx("1")).unwrap();
    let gm = u.ghost_semiring().0;
    let level = |k: usize| gm.order()[k + 1];
    let rho: Vec<ElementId> = (0..size)
        .map(|k| match k {
            0 => gm.zero(),
            1 => level(3),
            _ => {
                let (i, j) = deg(k).unwrap();
                level(i + j)
            }
        })
        .collect();
    let built = Arc::new(str_construct("built", &n, &gm, &rho).unwrap().monoid);
    let mut support: BTreeSet<ElementId> = u.tangibles().into_iter().collect();
    support.extend([u.zero(), el(&u, "c3")]);
    let unfolded = unfold(&u, &support).unwrap();
    assert!(built.is_unfolded());
    assert!(!isomorphisms(&built, &unfolded.monoid).is_empty());
}

#[test]
fn unfoldedness() {
    assert!(minimal().is_unfolded());
    assert!(!twin().is_unfolded());
    assert!(!plane().is_unfolded());
    let u = plane();
    assert_eq!(u.mul(el(&u, "x2"), el(&u, "x2")), el(&u, "c3"));
}

#[test]
fn semiring_test() {
    assert!(minimal().is_semiring());
    assert!(twin().is_semiring());
    let u = collapse();
    assert!(!u.is_semiring());
    assert_eq!(u.distributivity_witness(), Some((el(&u, "x1"), el(&u, "x1"), el(&u, "1"))));
    for u in [minimal(), twin(), plane(), collapse(), swap()] {
        assert_eq!(u.is_semiring(), brute_semiring(&u), "{}", u.name());
    }
}

#[test]
fn nc_products_of_fixtures() {
    assert!(minimal().tangible_nc_products().is_empty());
    assert!(twin().tangible_nc_products().is_empty());
    let u = collapse();
    assert_eq!(u.tangible_nc_products(), set(&u, &["x1"]));
}

#[test]
fn compressions() {
    let u = twin();
    let (e, q) = ideal_compression(&u, &u.ghost_ideal()).unwrap();
    assert!(e.is_discrete());
    assert_eq!(q.monoid.size(), u.size());

    let all: BTreeSet<_> = u.elements().collect();
    let (_, q) = ideal_compression(&u, &all).unwrap();
    assert_eq!(q.monoid.size(), 3);
    assert!(q.monoid.tangibles().is_empty());

    let u = collapse();
    let (_, q) = ideal_compression(&u, &set(&u, &["0", "e", "c", "x1"])).unwrap();
    let v = &q.monoid;
    assert_eq!(names(v, v.tangibles()), vec!["1", "x2"]);
    let x2 = q.projection.apply(el(&u, "x2"));
    assert_eq!(v.element_name(v.mul(x2, x2)), "c");

    assert!(ideal_compression(&u, &set(&u, &["0", "e", "c", "x2"])).is_err());
}

#[test]
fn reflections() {
    let (sigma, h) = hat(&minimal());
    assert!(sigma.is_injective());
    assert_eq!(*h, *minimal());

    let (sigma, h) = hat(&twin());
    assert!(sigma.is_injective());
    assert_eq!(h.size(), twin().size());

    let u = collapse();
    let (sigma, h) = hat(&u);
    assert_eq!(names(&h, h.tangibles()), vec!["1", "x2"]);
    assert_eq!(h.element_name(sigma.apply(el(&u, "x1"))), "c");
    assert!(h.is_semiring());
}

#[test]
fn divisibility() {
    let u = minimal();
    assert_eq!(names(&u, u.quotient_set(el(&u, "e"), el(&u, "1"))), vec!["e"]);
    let u = twin();
    let q: BTreeSet<_> = u.quotient_set(el(&u, "c"), el(&u, "x1")).into_iter().collect();
    assert_eq!(q, set(&u, &["e", "c", "x1", "x2"]));
    assert!(u.divides(el(&u, "x1"), el(&u, "c")));
    assert!(!u.divides(el(&u, "x1"), el(&u, "x2")));
    let u = swap();
    assert_eq!(names(&u, u.quotient_set(el(&u, "x2"), el(&u, "x1"))), vec!["u"]);
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ghost_map_is_idempotent_and_multiplicative(u in arb_monoid(7)) {
        for x in u.elements() {
            prop_assert_eq!(u.ghost(u.ghost(x)), u.ghost(x));
            prop_assert!(u.in_ghost_ideal(u.ghost(x)));
            for y in u.elements() {
                prop_assert_eq!(u.ghost(u.mul(x, y)), u.mul(u.ghost(x), u.ghost(y)));
            }
        }
    }

    #[test]
    fn kinds_partition(u in arb_monoid(7)) {
        let zero = u.elements().filter(|&x| u.kind(x) == Kind::Zero).count();
        let t = u.elements().filter(|&x| u.kind(x) == Kind::Tangible).count();
        let g = u.elements().filter(|&x| u.kind(x) == Kind::Ghost).count();
        prop_assert_eq!(zero, 1);
        prop_assert_eq!(t, u.tangibles().len());
        prop_assert_eq!(zero + t + g, u.size());
        prop_assert_eq!(zero + g, u.ghost_ideal().len());
    }

    #[test]
    fn semiring_matches_brute_force(u in arb_monoid(7)) {
        prop_assert_eq!(u.is_semiring(), brute_semiring(&u));
    }

    #[test]
    fn unfolding_is_unfolded(u in arb_monoid(6)) {
        let mut support: BTreeSet<ElementId> = u.tangibles().into_iter().collect();
        support.extend([u.zero(), u.one()]);
        loop {
            let grown: BTreeSet<ElementId> =
                support.iter().flat_map(|&x| support.iter().map(move |&y| (x, y))).map(|(x, y)| u.mul(x, y)).collect();
            if grown.is_subset(&support) {
                break;
            }
            support.extend(grown);
        }
        let unfolded = unfold(&u, &support).unwrap();
        prop_assert!(unfolded.monoid.is_unfolded());
        prop_assert!(unfolded.projection.is_surjective());
    }

    #[test]
    fn hat_is_an_idempotent_reflection(u in arb_monoid(7)) {
        let (_, h) = hat(&u);
        prop_assert!(h.is_semiring());
        let (sigma, hh) = hat(&h);
        prop_assert!(sigma.is_injective());
        prop_assert_eq!(hh.size(), h.size());
    }

    #[test]
    fn compressing_the_ghost_ideal_is_trivial(u in arb_monoid(7)) {
        let (e, _) = ideal_compression(&u, &u.ghost_ideal()).unwrap();
        prop_assert!(e.is_discrete());
    }
}
