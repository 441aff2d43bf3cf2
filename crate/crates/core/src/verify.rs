//! Property runner over the catalog and seeded random instances.
//!
//! Each property is evaluated per subject (a relation, a pair of
//! transmissions, a set, a supervaluation, a tangible element, ...). Instances
//! run in parallel; results are merged in instance order so the report does
//! not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog;
use crate::equalizers::{eq, feq, is_ghost_separating_feq, validate_path, PathTree};
use crate::isolation::{
    cancellation_collapse, is_t_tangible, isolate, sis_path_witness, sis_tangible_test, son_isolating_relation,
    tyrant_path_witness, tyrant_relation, Case,
};
use crate::monoid::{ElementId, MonoidRef, SupertropicalMonoid};
use crate::oracle::{closure_mfce, coarsest_ghost_separating_within, enumerate_ig_sections, enumerate_mfce_with_cap, subsets};
use crate::partition::Partition;
use crate::random::random_monoids;
use crate::reflection::hat;
use crate::relations::{
    canonical_relations, classify, ghost_separating_refinement, is_ghost_separating_direct, join, meet, quotient,
    quotient_named,
};
use crate::sections::{
    igs_sup_family, is_tyrant, primitive_generator, primitive_sections_below, relation_of_section, section_of_tyrant,
    sons,
};
use crate::transmission::{compose_tm, ghost_map, middle_isomorphism, tm_factorization, tm_factorization_general, Transmission};
use crate::valuation::{
    almost_tangible_lift, dominates, ghost_value_set, interval_bijection, interval_oracle, FiniteSemiring,
    MSupervaluation, PartialLift, TangibleLift,
};

/// The checked properties, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Refinement,
    TmFactorization,
    ComposeTm,
    Equalizers,
    Interval,
    AlmostLift,
    Sections,
    Isolation,
    Reflection,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::Refinement,
        Property::TmFactorization,
        Property::ComposeTm,
        Property::Equalizers,
        Property::Interval,
        Property::AlmostLift,
        Property::Sections,
        Property::Isolation,
        Property::Reflection,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Property::Refinement => "refinement",
            Property::TmFactorization => "tm_factorization",
            Property::ComposeTm => "compose_tm",
            Property::Equalizers => "equalizers",
            Property::Interval => "interval",
            Property::AlmostLift => "almost_lift",
            Property::Sections => "sections",
            Property::Isolation => "isolation",
            Property::Reflection => "reflection",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Outcome of one property on one instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Check {
    pub subjects: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.subjects += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub subjects: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Instance name and detail of the first failure, in instance order.
    pub first_failure: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub count: usize,
    pub size: usize,
    /// Candidate cap for exhaustive relation enumeration.
    pub cap: u64,
    pub include_catalog: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 1,
            count: 100,
            size: 6,
            cap: crate::oracle::DEFAULT_CANDIDATE_CAP,
            include_catalog: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub instances: usize,
    pub tallies: BTreeMap<Property, Tally>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.tallies.values().all(|t| t.failed == 0)
    }

    pub fn tally(&self, p: Property) -> &Tally {
        &self.tallies[&p]
    }

    pub fn porcelain(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "seed={} count={} size={} catalog={} instances={}\n",
            c.seed, c.count, c.size, c.include_catalog, self.instances
        );
        for p in Property::ALL {
            let t = &self.tallies[&p];
            out.push_str(&format!(
                "property={} subjects={} failed={} skipped={}\n",
                p.key(),
                t.subjects,
                t.failed,
                t.skipped
            ));
            if let Some((inst, detail)) = &t.first_failure {
                out.push_str(&format!("violation property={} instance={} detail={}\n", p.key(), inst, detail));
            }
        }
        out.push_str(&format!("status={}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }

    pub fn human(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "verified {} instances (seed {}, {} random of size at most {}{})\n",
            self.instances,
            c.seed,
            c.count,
            c.size,
            if c.include_catalog { ", plus the catalog" } else { "" }
        );
        for p in Property::ALL {
            let t = &self.tallies[&p];
            let verdict = if t.failed == 0 { "ok" } else { "FAILED" };
            out.push_str(&format!("  {:<17} {verdict:<6} {} subjects", p.key(), t.subjects));
            if t.skipped > 0 {
                out.push_str(&format!(", {} skipped over the cap", t.skipped));
            }
            out.push('\n');
            if let Some((inst, detail)) = &t.first_failure {
                out.push_str(&format!("    first violation on {inst}: {detail}\n"));
            }
        }
        out.push_str(if self.passed() { "all properties hold\n" } else { "violations found\n" });
        out
    }
}

/// The instances a run covers: the catalog (optionally) then the random ones.
pub fn instances(config: &VerifyConfig) -> Vec<MonoidRef> {
    let mut out = if config.include_catalog { catalog::catalog() } else { Vec::new() };
    out.extend(random_monoids(config.seed, config.count, config.size));
    out
}

/// A per-instance stream, independent of scheduling.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let all = instances(config);
    let n_catalog = if config.include_catalog { catalog::catalog().len() } else { 0 };
    let per_instance: Vec<(String, BTreeMap<Property, Check>)> = all
        .par_iter()
        .enumerate()
        .map(|(i, u)| {
            let mut rng = instance_rng(config.seed, i);
            let exhaustive_sets = i < n_catalog;
            (u.name().to_string(), check_instance(u, &mut rng, exhaustive_sets, config.cap))
        })
        .collect();
    let mut tallies: BTreeMap<Property, Tally> = Property::ALL.iter().map(|&p| (p, Tally::default())).collect();
    for (name, checks) in per_instance {
        for (p, c) in checks {
            let t = tallies.get_mut(&p).expect("every property is tallied");
            t.subjects += c.subjects;
            t.skipped += c.skipped;
            t.failed += c.failures.len();
            if t.first_failure.is_none() {
                if let Some(d) = c.failures.into_iter().next() {
                    t.first_failure = Some((name.clone(), d));
                }
            }
        }
    }
    VerifyReport { config: config.clone(), instances: all.len(), tallies }
}

/// Every property on one instance. With `exhaustive_sets` the equalizer
/// check covers all subsets; otherwise one random subset.
pub fn check_instance(
    u: &MonoidRef,
    rng: &mut ChaCha8Rng,
    exhaustive_sets: bool,
    cap: u64,
) -> BTreeMap<Property, Check> {
    let mut out = BTreeMap::new();
    let mfces = enumerate_mfce_with_cap(u, cap).ok();
    let skip = || Check { skipped: 1, ..Check::default() };
    out.insert(Property::Refinement, mfces.as_ref().map_or_else(skip, |m| check_refinement(u, m)));
    out.insert(Property::TmFactorization, mfces.as_ref().map_or_else(skip, |m| check_tm_factorization(u, m)));
    out.insert(Property::ComposeTm, check_compose_tm(&random_composable_pair(u, rng)));
    let sets = if exhaustive_sets {
        subsets(&u.elements().collect::<Vec<_>>())
    } else {
        vec![random_subset(u, rng)]
    };
    out.insert(Property::Equalizers, check_equalizers(u, &sets));
    let fixtures = mfces.as_ref().map(|m| supervaluation_fixtures(u, m)).unwrap_or_default();
    let (mut interval, mut almost) = (Check::default(), Check::default());
    for phi in &fixtures {
        merge(&mut interval, check_interval(phi, cap));
        merge(&mut almost, check_almost_lift(phi, cap));
    }
    out.insert(Property::Interval, interval);
    out.insert(Property::AlmostLift, almost);
    out.insert(Property::Sections, check_sections(u));
    out.insert(Property::Isolation, check_isolation(u));
    out.insert(Property::Reflection, check_reflection(u));
    out
}

fn merge(into: &mut Check, c: Check) {
    into.subjects += c.subjects;
    into.skipped += c.skipped;
    into.failures.extend(c.failures);
}

fn classes_text(u: &SupertropicalMonoid, p: &Partition) -> String {
    crate::format::write_classes(u, p)
}

/// Refinement against the oracle and against `E ∧ Ẽ(ν)`, for each relation.
pub fn check_refinement(u: &MonoidRef, mfces: &[Partition]) -> Check {
    let mut c = Check::default();
    let tilde = canonical_relations(u).e_nu_tilde;
    for e in mfces {
        let r = ghost_separating_refinement(u, e).ok();
        let oracle = coarsest_ghost_separating_within(u, e).ok().flatten();
        let via_meet = meet(u, e, &tilde).ok();
        let ok = r.is_some() && r == oracle && r == via_meet;
        c.record(ok, || format!("refinement of {} disagrees", classes_text(u, e)));
    }
    c
}

/// The factorization of `π_E` and its universal property.
pub fn check_tm_factorization(u: &MonoidRef, mfces: &[Partition]) -> Check {
    let mut c = Check::default();
    for e in mfces {
        let alpha = match quotient(u, e) {
            Ok(q) => q.projection,
            Err(err) => {
                c.record(false, || format!("quotient failed: {err}"));
                continue;
            }
        };
        c.record(factorization_ok(u, &alpha, mfces), || {
            format!("factorization of the projection by {} fails", classes_text(u, e))
        });
    }
    let g = ghost_map(u);
    c.record(factorization_ok(u, &g, mfces), || "factorization of the ghost map fails".into());
    c
}

fn factorization_ok(u: &SupertropicalMonoid, alpha: &Transmission, mfces: &[Partition]) -> bool {
    let Ok(f) = tm_factorization(alpha) else { return false };
    let kt = f.tangible_part.kernel();
    let kernel = alpha.kernel();
    f.composite() == *alpha
        && f.tangible_part.is_tangible()
        && f.mixing_part.is_mixing()
        && is_ghost_separating_direct(u, &kt)
        && kt.is_finer(&kernel)
        && mfces
            .iter()
            .filter(|p| p.is_finer(&kernel) && is_ghost_separating_direct(u, p))
            .all(|p| p.is_finer(&kt))
}

/// A random same-fiber pair of `u`.
fn random_fiber_pair(u: &SupertropicalMonoid, rng: &mut ChaCha8Rng) -> (ElementId, ElementId) {
    let pairs: Vec<(ElementId, ElementId)> = u
        .elements()
        .flat_map(|x| u.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| x < y && u.ghost(x) == u.ghost(y))
        .collect();
    if pairs.is_empty() {
        (u.zero(), u.zero())
    } else {
        pairs[rng.gen_range(0..pairs.len())]
    }
}

/// Projections `U → U/E → (U/E)/F` by closures of random same-fiber pairs.
pub fn random_composable_pair(u: &MonoidRef, rng: &mut ChaCha8Rng) -> (Transmission, Transmission) {
    let step = |v: &MonoidRef, rng: &mut ChaCha8Rng, tag: &str| {
        let seed = random_fiber_pair(v, rng);
        let e = closure_mfce(v, &[seed]).expect("same-fiber seed");
        quotient_named(v, &e, format!("{}{tag}", v.name())).expect("closures are MFCE").projection
    };
    let alpha = step(u, rng, "/a");
    let beta = step(&alpha.target().clone(), rng, "/b");
    (alpha, beta)
}

/// `compose_tm` against the direct factorization of the composite.
pub fn check_compose_tm(pair: &(Transmission, Transmission)) -> Check {
    let mut c = Check::default();
    let (alpha, beta) = pair;
    let (ok, mixing) = match (compose_tm(alpha, beta), alpha.then(beta).and_then(|ab| tm_factorization_general(&ab))) {
        (Ok(composed), Ok(direct)) => (
            composed.composite() == direct.composite() && middle_isomorphism(&composed, &direct).is_some(),
            composed.mixing_part.is_mixing(),
        ),
        _ => (false, false),
    };
    c.record(ok, || {
        format!(
            "factorization of the composite through {} differs (assembled mixing part is mixing: {mixing})",
            alpha.target().name()
        )
    });
    c
}

fn random_subset(u: &SupertropicalMonoid, rng: &mut ChaCha8Rng) -> BTreeSet<ElementId> {
    u.elements().filter(|_| rng.gen_bool(0.4)).collect()
}

/// Equalizers against the closure oracle, witness paths and the
/// ghost-separation criterion.
pub fn check_equalizers(u: &SupertropicalMonoid, sets: &[BTreeSet<ElementId>]) -> Check {
    let mut c = Check::default();
    for s in sets {
        let f = feq(u, s);
        let seeds: Vec<(ElementId, ElementId)> = s
            .iter()
            .flat_map(|&a| s.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a < b && u.ghost(a) == u.ghost(b))
            .collect();
        let oracle_ok = closure_mfce(u, &seeds).ok() == Some(f.clone());
        let single_fiber = s.iter().map(|&x| u.ghost(x)).collect::<BTreeSet<_>>().len() <= 1;
        let eq_ok = eq(u, s).is_ok() == single_fiber && (!single_fiber || eq(u, s).ok() == Some(f.clone()));
        let paths_ok = paths_realize(u, s, &f);
        let criterion_ok = classify(u, &f).map(|k| k.is_ghost_separating).ok()
            == Some(is_ghost_separating_feq(u, std::slice::from_ref(s)));
        c.record(oracle_ok && eq_ok && paths_ok && criterion_ok, || {
            format!(
                "S={} oracle={oracle_ok} eq={eq_ok} paths={paths_ok} criterion={criterion_ok}",
                u.format_set(s)
            )
        });
    }
    c
}

/// Every identified pair has a validating path between its members, and
/// nothing else is reachable.
fn paths_realize(u: &SupertropicalMonoid, s: &BTreeSet<ElementId>, f: &Partition) -> bool {
    let family = std::slice::from_ref(s);
    u.elements().all(|z| {
        let tree = PathTree::new(u, family, z);
        u.elements().all(|w| match tree.path_to(u, w) {
            Some(p) => {
                f.same(z, w) && validate_path(u, &p, s).is_ok() && p.start(u) == Some(z) && p.end(u) == Some(w)
            }
            None => z == w || !f.same(z, w),
        })
    })
}

/// `φ = π_E` on `R = U` for each relation `E`, when `U` is a semiring.
pub fn supervaluation_fixtures(u: &MonoidRef, mfces: &[Partition]) -> Vec<MSupervaluation> {
    if !u.is_semiring() {
        return Vec::new();
    }
    let Ok(r) = FiniteSemiring::from_supertropical(u) else { return Vec::new() };
    let r = Arc::new(r);
    let Ok(id) = MSupervaluation::new(r, u.clone(), u.elements().collect()) else { return Vec::new() };
    mfces
        .iter()
        .enumerate()
        .filter_map(|(i, e)| {
            let q = quotient_named(u, e, format!("{}/E{i}", u.name())).ok()?;
            id.then(&q.projection).ok()
        })
        .collect()
}

fn lifts_of(phi: &MSupervaluation) -> Option<(TangibleLift, Vec<PartialLift>, Vec<Partition>)> {
    let (tl, lifts) = interval_bijection(phi).ok()?;
    let oracle = interval_oracle(&tl).ok()?;
    Some((tl, lifts, oracle))
}

fn dominates_ok(a: &MSupervaluation, b: &MSupervaluation, cap: usize) -> Option<bool> {
    dominates(a, b, cap).ok().map(|w| w.is_some())
}

/// The interval `[φ, φ̃]` against the ideals of `G(φ)`.
pub fn check_interval(phi: &MSupervaluation, cap: u64) -> Check {
    let mut c = Check::default();
    let name = phi.target.name().to_string();
    let Some((tl, lifts, oracle)) = lifts_of(phi) else {
        c.record(false, || format!("{name}: interval could not be built"));
        return c;
    };
    let cap = cap as usize;
    let Ok(v) = phi.covered() else {
        c.record(false, || format!("{name}: no covered valuation"));
        return c;
    };
    let psis: Vec<MSupervaluation> =
        oracle.iter().enumerate().filter_map(|(i, f)| tl.through(f, &format!("F{i}")).ok()).collect();
    let classes = dominance_classes(&psis, cap);
    let lift_relations: BTreeSet<&Partition> = lifts.iter().map(|l| &l.relation).collect();
    let oracle_relations: BTreeSet<&Partition> = oracle.iter().collect();
    let count_ok = psis.len() == oracle.len() && classes == Some(lifts.len()) && lift_relations == oracle_relations;

    let ghost = |psi: &MSupervaluation| ghost_value_set(psi, &v).ok();
    let ghost_ok = lifts.iter().all(|l| ghost(&l.psi).as_ref() == Some(&l.ideal));
    let mut order_ok = true;
    let mut cor_ok = true;
    let ut = &tl.unfolding.monoid;
    for a in &lifts {
        for b in &lifts {
            let dom = dominates_ok(&a.psi, &b.psi, cap);
            order_ok &= dom == Some(a.ideal.is_subset(&b.ideal));
            let upper = meet(ut, &a.relation, &b.relation).ok().and_then(|p| tl.through(&p, "join").ok());
            let lower = join(ut, &a.relation, &b.relation).ok().and_then(|p| tl.through(&p, "meet").ok());
            let inter: BTreeSet<ElementId> = a.ideal.intersection(&b.ideal).copied().collect();
            let union: BTreeSet<ElementId> = a.ideal.union(&b.ideal).copied().collect();
            cor_ok &= upper.and_then(|p| ghost(&p)) == Some(inter) && lower.and_then(|p| ghost(&p)) == Some(union);
        }
    }
    c.record(count_ok && ghost_ok && order_ok && cor_ok, || {
        format!(
            "{name}: ideals={} classes={classes:?} count={count_ok} ghost={ghost_ok} order={order_ok} lattice={cor_ok}",
            lifts.len()
        )
    });
    c
}

/// Number of classes under mutual dominance.
fn dominance_classes(psis: &[MSupervaluation], cap: usize) -> Option<usize> {
    let mut reps: Vec<&MSupervaluation> = Vec::new();
    for p in psis {
        let mut found = false;
        for r in &reps {
            if dominates_ok(p, r, cap)? && dominates_ok(r, p, cap)? {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(p);
        }
    }
    Some(reps.len())
}

/// `φ̂`: a semiring target equal to the reflection, and the supervaluations
/// of the interval are exactly those below it.
pub fn check_almost_lift(phi: &MSupervaluation, cap: u64) -> Check {
    let mut c = Check::default();
    let name = phi.target.name().to_string();
    let Ok(at) = almost_tangible_lift(phi) else {
        c.record(false, || format!("{name}: almost tangible lift failed"));
        return c;
    };
    let hat_psi = &at.partial.psi;
    let semiring_ok = hat_psi.target.is_semiring();
    let reflection_ok = at.matches_reflection();
    let tl = &at.tangible;
    let interval_ok = match interval_oracle(tl) {
        Ok(oracle) => oracle.iter().all(|f| match tl.through(f, "psi") {
            Ok(psi) => dominates_ok(hat_psi, &psi, cap as usize) == Some(psi.is_supervaluation()),
            Err(_) => false,
        }),
        Err(_) => false,
    };
    c.record(semiring_ok && reflection_ok && interval_ok, || {
        format!("{name}: semiring={semiring_ok} reflection={reflection_ok} interval={interval_ok}")
    });
    c
}

/// Tyrants, section images and primitive sections; `E(s)` mixing and
/// every section the supremum of its primitive sections.
pub fn check_sections(u: &SupertropicalMonoid) -> Check {
    let mut c = Check::default();
    let all = enumerate_ig_sections(u);
    let m = u.ghost_ideal();
    let image_ideals: Vec<BTreeSet<ElementId>> =
        all.iter().map(|s| m.iter().copied().chain(s.image()).collect()).collect();
    for x in u.tangibles() {
        let tyrant = is_tyrant(u, x).unwrap_or(false);
        let in_image = all.iter().any(|s| s.image().contains(&x));
        let generated: BTreeSet<ElementId> = m.iter().copied().chain(u.multiples(x)).collect();
        let generates = image_ideals.contains(&generated);
        let mut ok = tyrant == in_image && tyrant == generates;
        if tyrant {
            ok &= section_of_tyrant(u, x).is_ok_and(|s| all.contains(&s) && primitive_generator(u, &s).is_some());
            ok &= sons(u, x).is_ok_and(|ss| ss.sons.iter().all(|&z| is_tyrant(u, z).unwrap_or(false)));
        }
        c.record(ok, || {
            format!("x={}: tyrant={tyrant} in_image={in_image} generates={generates}", u.element_name(x))
        });
    }
    for s in &all {
        let mixing = classify(u, &relation_of_section(u, s)).is_ok_and(|k| k.is_mixing);
        let sup = igs_sup_family(u, &primitive_sections_below(u, s)).ok();
        let sup_ok = sup.as_ref() == Some(s);
        c.record(mixing && sup_ok, || {
            let pairs: Vec<String> = s
                .pairs()
                .map(|(a, x)| format!("{}->{}", u.element_name(a), u.element_name(x)))
                .collect();
            format!("section {}: mixing={mixing} sup={sup_ok}", pairs.join(" "))
        });
    }
    c
}

/// The tuple criteria for `T(x)`, `Is(x)`, `Sis(x)` against the relations.
pub fn check_isolation(u: &SupertropicalMonoid) -> Check {
    let mut c = Check::default();
    for x in u.tangibles() {
        let (Ok(t), Ok(is), Ok(sis), Ok(col)) =
            (tyrant_relation(u, x), isolate(u, x), son_isolating_relation(u, x), cancellation_collapse(u, x))
        else {
            c.record(false, || format!("x={}: relation failed", u.element_name(x)));
            continue;
        };
        let gs = |p: &Partition| classify(u, p).map(|k| k.is_ghost_separating).ok();
        let t_case = (t.case == Case::II) == t.witness.is_some()
            && t.witness.is_some() == tyrant_path_witness(u, x).is_some();
        let t_tangible = gs(&t.relation) == Some(is_t_tangible(u, x));
        let is_case = (is.case == Case::II) == is.witness.is_some();
        let sis_case = (sis.case == Case::II) == sis.witness.is_some()
            && sis.witness.is_some() == sis_path_witness(u, x).is_some();
        let sis_tangible = gs(&sis.relation) == Some(sis_tangible_test(u, x));
        let inclusion = is.relation.is_finer(&sis.relation);
        let collapse = !col.hypothesis || col.equal;
        c.record(t_case && t_tangible && is_case && sis_case && sis_tangible && inclusion && collapse, || {
            format!(
                "x={}: T case={t_case} tangible={t_tangible}; Is case={is_case}; Sis case={sis_case} tangible={sis_tangible}; inclusion={inclusion} collapse={collapse}",
                u.element_name(x)
            )
        });
    }
    c
}

/// `hat(U)` is a semiring and `hat` is idempotent.
pub fn check_reflection(u: &MonoidRef) -> Check {
    let mut c = Check::default();
    let (sigma, h) = hat(u);
    let semiring = h.is_semiring();
    let (sigma2, _) = hat(&h);
    let idempotent = sigma2.is_injective();
    let fixed = !u.is_semiring() || sigma.is_injective();
    c.record(semiring && idempotent && fixed, || {
        format!("semiring={semiring} idempotent={idempotent} fixes_semirings={fixed}")
    });
    c
}

/// Why a random instance is worth keeping as a fixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Obstruction {
    TyrantCaseII,
    TyrantNotTangible,
    IsolationCaseII,
    SonIsolationCaseII,
    SonIsolationNotTangible,
}

impl Obstruction {
    pub fn key(self) -> &'static str {
        match self {
            Obstruction::TyrantCaseII => "tyrant_case_ii",
            Obstruction::TyrantNotTangible => "tyrant_not_tangible",
            Obstruction::IsolationCaseII => "isolation_case_ii",
            Obstruction::SonIsolationCaseII => "son_isolation_case_ii",
            Obstruction::SonIsolationNotTangible => "son_isolation_not_tangible",
        }
    }
}

/// The obstructions present at some tangible of `u`.
pub fn obstructions(u: &SupertropicalMonoid) -> BTreeSet<Obstruction> {
    let mut out = BTreeSet::new();
    for x in u.tangibles() {
        if tyrant_relation(u, x).is_ok_and(|r| r.case == Case::II) {
            out.insert(Obstruction::TyrantCaseII);
        }
        if !is_t_tangible(u, x) {
            out.insert(Obstruction::TyrantNotTangible);
        }
        if isolate(u, x).is_ok_and(|r| r.case == Case::II) {
            out.insert(Obstruction::IsolationCaseII);
        }
        if son_isolating_relation(u, x).is_ok_and(|r| r.case == Case::II) {
            out.insert(Obstruction::SonIsolationCaseII);
        }
        if !sis_tangible_test(u, x) {
            out.insert(Obstruction::SonIsolationNotTangible);
        }
    }
    out
}

/// Random instances exhibiting obstructions, smallest first, at most one per
/// obstruction set.
pub fn search_obstructions(seed: u64, count: usize, size: usize) -> Vec<(MonoidRef, BTreeSet<Obstruction>)> {
    let found: Vec<(MonoidRef, BTreeSet<Obstruction>)> = random_monoids(seed, count, size)
        .into_par_iter()
        .map(|u| {
            let o = obstructions(&u);
            (u, o)
        })
        .filter(|(_, o)| !o.is_empty())
        .collect();
    let mut best: BTreeMap<BTreeSet<Obstruction>, MonoidRef> = BTreeMap::new();
    for (u, o) in found {
        match best.get(&o) {
            Some(prev) if prev.size() <= u.size() => {}
            _ => {
                best.insert(o, u);
            }
        }
    }
    let mut out: Vec<(MonoidRef, BTreeSet<Obstruction>)> = best.into_iter().map(|(o, u)| (u, o)).collect();
    out.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then_with(|| a.1.cmp(&b.1)));
    out
}
