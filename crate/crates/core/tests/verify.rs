mod common;

use supertropical::catalog::{collapse, minimal, swap, twin};
use supertropical::frozen::obstruction_fixtures;
use supertropical::verify::*;

fn random_only(seed: u64, count: usize) -> VerifyConfig {
    VerifyConfig { seed, count, size: 6, include_catalog: false, ..VerifyConfig::default() }
}

#[test]
fn runs_are_deterministic() {
    let a = run(&random_only(7, 24));
    let b = run(&random_only(7, 24));
    assert_eq!(a, b);
    assert_eq!(a.porcelain(), b.porcelain());
    assert_eq!(a.instances, 24);
    assert_ne!(run(&random_only(8, 24)).porcelain(), a.porcelain());
}

#[test]
fn empty_run_passes_vacuously() {
    let r = run(&random_only(1, 0));
    assert_eq!(r.instances, 0);
    assert!(r.passed());
    assert!(Property::ALL.iter().all(|&p| r.tally(p).subjects == 0));
    assert!(r.porcelain().ends_with("status=pass\n"));
    assert!(r.human().ends_with("all properties hold\n"));
}

#[test]
fn porcelain_lists_every_property() {
    let r = run(&random_only(3, 4));
    let text = r.porcelain();
    assert!(text.starts_with("seed=3 count=4 size=6 catalog=false instances=4\n"));
    for p in Property::ALL {
        assert!(text.contains(&format!("property={} subjects=", p.key())), "{p}");
    }
}

#[test]
/// Mixing maps are not closed under composition, so `compose_tm` is left out.
fn small_fixtures_pass_every_other_property() {
    let mut all = vec![minimal(), twin(), collapse(), swap()];
    all.extend(obstruction_fixtures());
    for (i, u) in all.iter().enumerate() {
        let checks = check_instance(u, &mut instance_rng(1, i), true, supertropical::oracle::DEFAULT_CANDIDATE_CAP);
        assert!(checks[&Property::Isolation].subjects > 0, "{}", u.name());
        for (p, c) in checks {
            if p != Property::ComposeTm {
                assert!(c.passed(), "{} {p}: {:?}", u.name(), c.failures);
            }
        }
    }
}

#[test]
fn a_tiny_cap_skips_instead_of_failing() {
    let u = twin();
    let checks = check_instance(&u, &mut instance_rng(1, 0), false, 1);
    assert_eq!(checks[&Property::Refinement].skipped, 1);
    assert_eq!(checks[&Property::Refinement].subjects, 0);
}

#[test]
fn frozen_fixtures_show_their_obstructions() {
    for u in obstruction_fixtures() {
        assert!(!obstructions(&u).is_empty(), "{}", u.name());
    }
    assert!(obstructions(&twin()).is_empty());
}

#[test]
fn search_finds_small_instances() {
    let found = search_obstructions(1, 200, 6);
    assert!(!found.is_empty());
    assert!(found.windows(2).all(|w| w[0].0.size() <= w[1].0.size()));
    let again = search_obstructions(1, 200, 6);
    let names = |v: &[(supertropical::MonoidRef, _)]| v.iter().map(|(u, _)| u.name().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&found), names(&again));
}
