mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use supertropical::catalog::{collapse, minimal, plane, twin};
use supertropical::monoid::{spec_from_fn, validate_monoid, ElementId, MonoidRef};
use supertropical::oracle::{enumerate_mfce, enumerate_transmissions, isomorphisms};
use supertropical::partition::Partition;
use supertropical::relations::{ghost_separating_refinement, is_ghost_separating_direct, quotient};
use supertropical::transmission::*;
use supertropical::unfold::{tangible_lift_of_transmission, tangible_unfolding, unfold, UnfoldError};
use supertropical::verify::random_composable_pair;

fn projection(u: &MonoidRef, groups: &[&[&str]]) -> Transmission {
    quotient(u, &merge(u, groups)).unwrap().projection
}

/// `{0, 1, x, e}` with `x² = x` and `ex = e`.
fn tiny() -> MonoidRef {
    let spec = spec_from_fn("tiny", &["0", "1", "x", "e"], "0", "1", "e", &["0", "e"], |a, b| {
        match (a, b) {
            ("0", _) | (_, "0") => "0".into(),
            ("1", o) | (o, "1") => o.into(),
            ("x", "x") => "x".into(),
            _ => "e".into(),
        }
    })
    .unwrap();
    Arc::new(validate_monoid(spec).unwrap())
}

fn same_factorization(a: &TmFactorization, b: &TmFactorization) -> bool {
    a.composite() == b.composite() && middle_isomorphism(a, b).is_some()
}

#[test]
fn validation_examples() {
    let u = twin();
    assert!(Transmission::new(u.clone(), u.clone(), u.elements().collect()).is_ok());
    let pi = projection(&u, &[&["x1", "x2"]]);
    assert!(validate_transmission(pi.source(), pi.target(), pi.map()).is_ok());

    let u = minimal();
    let (z, one, e) = (el(&u, "0"), el(&u, "1"), el(&u, "e"));
    assert!(matches!(
        Transmission::new(u.clone(), u.clone(), vec![z, e, e]),
        Err(TransmissionError::UnitMismatch { .. })
    ));
    assert!(Transmission::new(u.clone(), u.clone(), vec![z, one, one]).is_err());
    assert_eq!(Transmission::new(u.clone(), u.clone(), vec![z, one]), Err(TransmissionError::Shape));
}

#[test]
fn flag_examples() {
    let u = twin();
    let id = Transmission::identity(&u);
    assert!(id.is_tangible() && id.is_mixing());

    let pi = projection(&u, &[&["x1", "x2"]]);
    assert!(pi.is_tangible());
    assert_eq!(
        pi.mixing_witness(),
        Some(MixingFailure::Unseparated(el(&u, "x1"), el(&u, "x2")))
    );

    let full = projection(&u, &[&["x1", "x2", "c"]]);
    assert_eq!(full.tangible_witness(), Some(el(&u, "x1")));
    assert_eq!(
        full.mixing_witness(),
        Some(MixingFailure::Unseparated(el(&u, "x1"), el(&u, "x2")))
    );
    let one = projection(&u, &[&["x1", "c"]]);
    assert!(!one.is_tangible() && one.is_mixing());
}

#[test]
fn factorization_of_identity_is_trivial() {
    let u = plane();
    let f = tm_factorization(&Transmission::identity(&u)).unwrap();
    assert!(f.tangible_part.is_injective() && f.mixing_part.is_injective());
    let g = tm_factorization_general(&Transmission::identity(&u)).unwrap();
    assert!(same_factorization(&f, &g));
}

#[test]
fn factorization_of_twin_ghost_map() {
    let u = twin();
    let nu = ghost_map(&u);
    let f = tm_factorization(&nu).unwrap();
    assert_eq!(class_names(&u, &f.tangible_part.kernel()), vec![vec!["x1", "x2"]]);
    assert_eq!(f.middle.tangibles().len(), 2);
    assert!(f.tangible_part.is_tangible());
    assert!(f.mixing_part.is_mixing());
    assert_eq!(f.composite(), nu);
}

/// Every factorization into a tangible surjection and a mixing map has a
/// middle isomorphic to the canonical one.
#[test]
fn factorization_of_collapse_ghost_map_is_unique() {
    let u = collapse();
    let nu = ghost_map(&u);
    let f = tm_factorization(&nu).unwrap();
    assert_eq!(f.composite(), nu);
    let mut alternatives = 0;
    for e in enumerate_mfce(&u).unwrap() {
        let q = quotient(&u, &e).unwrap();
        if !q.projection.is_tangible() || !e.is_finer(&nu.kernel()) {
            continue;
        }
        let fixed: Vec<Option<ElementId>> = q
            .monoid
            .elements()
            .map(|c| u.elements().find(|&x| q.projection.apply(x) == c).map(|x| nu.apply(x)))
            .collect();
        for mu in enumerate_transmissions(&q.monoid, nu.target(), &fixed) {
            if mu.is_mixing() {
                alternatives += 1;
                assert!(!isomorphisms(&q.monoid, &f.middle).is_empty());
            }
        }
    }
    assert_eq!(alternatives, 1);
}

#[test]
fn general_factorization_of_an_inclusion() {
    let (s, t) = (minimal(), twin());
    let inc = Transmission::new(s.clone(), t.clone(), vec![el(&t, "0"), el(&t, "1"), el(&t, "e")]).unwrap();
    assert!(tm_factorization(&inc).is_err());
    let f = tm_factorization_general(&inc).unwrap();
    assert!(f.tangible_part.is_injective());
    assert_eq!(f.composite(), inc);
    assert!(f.mixing_part.is_mixing());

    let u = plane();
    let nu = ghost_map(&u);
    let a = tm_factorization(&nu).unwrap();
    let b = tm_factorization_general(&nu).unwrap();
    assert!(same_factorization(&a, &b));
}

#[test]
fn composite_factorization_examples() {
    let u = twin();
    let alpha = projection(&u, &[&["x1", "x2"]]);
    let id = Transmission::identity(alpha.target());
    let direct = tm_factorization(&alpha).unwrap();
    assert!(same_factorization(&compose_tm(&alpha, &id).unwrap(), &direct));

    let v = alpha.target().clone();
    let t = alpha.apply(el(&u, "x1"));
    let beta = quotient(&v, &Partition::from_pairs(v.size(), [(t, v.ghost(t))])).unwrap().projection;
    let composite = alpha.then(&beta).unwrap();
    let direct = tm_factorization_general(&composite).unwrap();
    assert!(same_factorization(&compose_tm(&alpha, &beta).unwrap(), &direct));
}

/// Two mixing maps whose composite is not mixing: `x ↦ e`, then `1 ↦ e`.
/// No multiplier separates `1` from `x` in kind, so the composite fails,
/// and the assembled factorization has a larger middle than the direct one.
#[test]
fn mixing_is_not_closed_under_composition() {
    let u = tiny();
    let alpha = projection(&u, &[&["x", "e"]]);
    let v = alpha.target().clone();
    let beta = quotient(&v, &Partition::from_pairs(v.size(), [(v.one(), v.e())])).unwrap().projection;
    assert!(alpha.is_mixing() && beta.is_mixing());
    let composite = alpha.then(&beta).unwrap();
    assert_eq!(
        composite.mixing_witness(),
        Some(MixingFailure::Unseparated(el(&u, "1"), el(&u, "x")))
    );
    let assembled = compose_tm(&alpha, &beta).unwrap();
    let direct = tm_factorization_general(&composite).unwrap();
    assert_eq!(assembled.composite(), composite);
    assert_eq!((assembled.middle.size(), direct.middle.size()), (4, 3));
    assert!(middle_isomorphism(&assembled, &direct).is_none());
}

#[test]
fn unfold_examples() {
    let u = minimal();
    let n = set(&u, &["0", "1"]);
    let w = unfold(&u, &n).unwrap();
    assert!(!isomorphisms(&w.monoid, &u).is_empty());

    let m: MonoidRef = Arc::new(twin().ghost_semiring().0.as_monoid().clone());
    let all: BTreeSet<ElementId> = m.elements().collect();
    let w = unfold(&m, &all).unwrap();
    assert_eq!(w.monoid.tangibles().len(), 2);
    for a in [el(&m, "e"), el(&m, "c")] {
        let lift = w.lift(a).unwrap();
        assert!(w.monoid.is_tangible(lift));
        assert_eq!(w.projection.apply(lift), a);
    }

    let u = twin();
    let n = set(&u, &["0", "1", "x1", "x2", "c"]);
    let w = unfold(&u, &n).unwrap();
    let (ct, x1t) = (w.lift(el(&u, "c")).unwrap(), w.lift(el(&u, "x1")).unwrap());
    assert!(w.monoid.is_tangible(ct));
    assert_eq!(w.monoid.mul(x1t, x1t), ct);
    assert_eq!(w.monoid.mul(ct, ct), ct);
    assert_eq!(w.monoid.ghost(ct), w.ghost(el(&u, "c")).unwrap());
    assert!(w.monoid.is_unfolded());

    assert!(matches!(unfold(&u, &set(&u, &["0", "1", "x1", "c"])), Err(UnfoldError::MissingTangibles(_))));
}

#[test]
fn tangible_unfolding_examples() {
    let u = twin();
    let n = set(&u, &["0", "1", "x1", "x2", "c"]);
    let id = Transmission::identity(&u);
    let tu = tangible_unfolding(&id, &n, &n).unwrap();
    assert!(tu.map.is_injective() && tu.map.is_surjective());

    let nu = ghost_map(&u);
    let m = nu.target().clone();
    let all: BTreeSet<ElementId> = m.elements().collect();
    let tu = tangible_unfolding(&nu, &n, &all).unwrap();
    let left = tu.map.then(&tu.target.projection).unwrap();
    let right = tu.source.projection.then(&nu).unwrap();
    assert_eq!(left, right);

    let small = set(&u, &["0", "1", "x1", "x2", "e"]);
    assert!(matches!(tangible_unfolding(&id, &n, &small), Err(UnfoldError::ImageEscapesN(_)) | Err(UnfoldError::NotASubmonoid)));
}

#[test]
fn tangible_lift_examples() {
    let u = minimal();
    let (lift, w) = tangible_lift_of_transmission(&Transmission::identity(&u)).unwrap();
    assert!(lift.is_injective());
    assert!(!isomorphisms(&w.monoid, &u).is_empty());

    let u = twin();
    let w = unfold(&u, &set(&u, &["0", "1", "x1", "x2", "c"])).unwrap();
    let (lift, w2) = tangible_lift_of_transmission(&w.projection).unwrap();
    assert!(lift.is_injective());
    assert_eq!(lift.then(&w2.projection).unwrap(), w.projection);

    let p = plane();
    assert!(matches!(
        tangible_lift_of_transmission(&Transmission::identity(&p)),
        Err(UnfoldError::NotUnfolded)
    ));
}

fn all_projections(u: &MonoidRef) -> Vec<(Partition, Transmission)> {
    enumerate_mfce(u)
        .unwrap()
        .into_iter()
        .map(|e| {
            let p = quotient(u, &e).unwrap().projection;
            (e, p)
        })
        .collect()
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn mixing_composite_has_mixing_first_factor(u in arb_monoid(6), seed in any::<u64>()) {
        let (alpha, beta) = random_composable_pair(&u, &mut supertropical::random::rng_for(seed));
        if alpha.then(&beta).unwrap().is_mixing() {
            prop_assert!(alpha.is_mixing());
        }
    }

    #[test]
    fn tangible_mixing_surjections_are_isomorphisms(u in arb_monoid(6)) {
        for (_, p) in all_projections(&u) {
            if p.is_tangible() && p.is_mixing() {
                prop_assert!(p.is_injective());
            }
        }
    }

    #[test]
    fn projection_factorization_is_refinement_then_rest(u in arb_monoid(6)) {
        for (e, p) in all_projections(&u) {
            let f = tm_factorization(&p).unwrap();
            let tilde = ghost_separating_refinement(&u, &e).unwrap();
            prop_assert_eq!(f.tangible_part.kernel(), tilde.clone());
            prop_assert_eq!(f.composite(), p.clone());
            prop_assert!(f.tangible_part.is_tangible());
            prop_assert!(f.mixing_part.is_mixing());
            prop_assert_eq!(f.middle.size(), tilde.num_classes());
        }
    }

    #[test]
    fn mixing_maps_are_injective_on_ghosts(u in arb_monoid(6)) {
        for (_, p) in all_projections(&u) {
            if p.is_mixing() {
                let images: BTreeSet<ElementId> = p.ghost_part().into_iter().map(|(_, b)| b).collect();
                prop_assert_eq!(images.len(), u.ghost_order().len());
            }
        }
    }

    /// For every tangible `β = π_F` with `F ⊆ E(α)`, exactly one fiber
    /// contraction `ζ` satisfies `ζ ∘ β = α_t`.
    #[test]
    fn factorization_is_universal(u in arb_monoid(5)) {
        let nu = ghost_map(&u);
        let f = tm_factorization(&nu).unwrap();
        for e in enumerate_mfce(&u).unwrap() {
            if !is_ghost_separating_direct(&u, &e) || !e.is_finer(&nu.kernel()) {
                continue;
            }
            let beta = quotient(&u, &e).unwrap().projection;
            let zetas: Vec<Transmission> = enumerate_transmissions(beta.target(), &f.middle, &[])
                .into_iter()
                .filter(|z| z.is_fiber_contraction() && beta.then(z).unwrap() == f.tangible_part)
                .collect();
            prop_assert_eq!(zetas.len(), 1);
        }
    }
}
