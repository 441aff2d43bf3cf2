//! Multiplicative equivalence relations on a supertropical monoid.

use std::sync::Arc;

use thiserror::Error;

use crate::monoid::{
    validate_monoid, ElementId, MonoidError, MonoidRef, MonoidSpec, SupertropicalMonoid,
};
use crate::partition::{Partition, UnionFind};
use crate::transmission::Transmission;

/// Why a partition fails to be TE or MFCE.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x ~ y` but `xz ≁ yz`.
    NotMultiplicative { x: ElementId, y: ElementId, z: ElementId },
    /// `ex ~ 0` but `x ≁ 0`.
    ZeroCondition { x: ElementId },
    /// `x ~ y` with `ex ≠ ey`.
    FiberMismatch { x: ElementId, y: ElementId },
}

impl Violation {
    pub fn describe(&self, u: &SupertropicalMonoid) -> String {
        let n = |x: ElementId| u.element_name(x).to_string();
        match *self {
            Violation::NotMultiplicative { x, y, z } => {
                format!("{} ~ {} but {}·{} ≁ {}·{}", n(x), n(y), n(x), n(z), n(y), n(z))
            }
            Violation::ZeroCondition { x } => format!("e{} ~ 0 but {} ≁ 0", n(x), n(x)),
            Violation::FiberMismatch { x, y } => {
                format!("{} ~ {} lie over different ghosts", n(x), n(y))
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("partition has {got} elements, monoid has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("not a TE-relation: {0}")]
    NotTE(String),
    #[error("not an MFCE-relation: {0}")]
    NotMFCE(String),
    #[error("relation is not mixing")]
    NotMixing,
    #[error("{0} is not an ideal containing eU")]
    NotAnIdeal(String),
    #[error("quotient is not a supertropical monoid: {0}")]
    QuotientInvalid(#[from] MonoidError),
}

fn check_size(u: &SupertropicalMonoid, e: &Partition) -> Result<(), RelationError> {
    if e.len() != u.size() {
        return Err(RelationError::SizeMismatch { expected: u.size(), got: e.len() });
    }
    Ok(())
}

/// First failure of multiplicativity.
pub fn multiplicativity_violation(u: &SupertropicalMonoid, e: &Partition) -> Option<Violation> {
    for x in u.elements() {
        let rep = e.members(x)[0];
        if rep == x {
            continue;
        }
        for z in u.elements() {
            if !e.same(u.mul(x, z), u.mul(rep, z)) {
                return Some(Violation::NotMultiplicative { x: rep, y: x, z });
            }
        }
    }
    None
}

pub fn te_violation(u: &SupertropicalMonoid, e: &Partition) -> Option<Violation> {
    if let Some(v) = multiplicativity_violation(u, e) {
        return Some(v);
    }
    u.elements()
        .find(|&x| e.same(u.ghost(x), u.zero()) && !e.same(x, u.zero()))
        .map(|x| Violation::ZeroCondition { x })
}

pub fn mfce_violation(u: &SupertropicalMonoid, e: &Partition) -> Option<Violation> {
    for (x, y) in e.pairs() {
        if u.ghost(x) != u.ghost(y) {
            return Some(Violation::FiberMismatch { x, y });
        }
    }
    te_violation(u, e)
}

pub fn validate_te(u: &SupertropicalMonoid, e: &Partition) -> bool {
    e.len() == u.size() && te_violation(u, e).is_none()
}

pub fn validate_mfce(u: &SupertropicalMonoid, e: &Partition) -> bool {
    e.len() == u.size() && mfce_violation(u, e).is_none()
}

pub(crate) fn require_te(u: &SupertropicalMonoid, e: &Partition) -> Result<(), RelationError> {
    check_size(u, e)?;
    match te_violation(u, e) {
        Some(v) => Err(RelationError::NotTE(v.describe(u))),
        None => Ok(()),
    }
}

pub(crate) fn require_mfce(u: &SupertropicalMonoid, e: &Partition) -> Result<(), RelationError> {
    check_size(u, e)?;
    match mfce_violation(u, e) {
        Some(v) => Err(RelationError::NotMFCE(v.describe(u))),
        None => Ok(()),
    }
}

/// A quotient monoid with its canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub monoid: MonoidRef,
    pub projection: Transmission,
}

/// `U/E` for an MFCE-relation `E`.
pub fn quotient(u: &MonoidRef, e: &Partition) -> Result<Quotient, RelationError> {
    require_mfce(u, e)?;
    build_quotient(u, e, format!("{}/E", u.name()))
}

/// `U/E` for a TE-relation `E`; ghost classes are ordered by their least
/// member, which is the induced order whenever ghost classes are intervals.
pub fn quotient_te(u: &MonoidRef, e: &Partition) -> Result<Quotient, RelationError> {
    require_te(u, e)?;
    build_quotient(u, e, format!("{}/E", u.name()))
}

/// Quotient with a chosen name.
pub fn quotient_named(
    u: &MonoidRef,
    e: &Partition,
    name: impl Into<String>,
) -> Result<Quotient, RelationError> {
    require_te(u, e)?;
    build_quotient(u, e, name.into())
}

fn build_quotient(u: &MonoidRef, e: &Partition, name: String) -> Result<Quotient, RelationError> {
    let classes = e.classes();
    let k = classes.len();
    let cls = |x: ElementId| ElementId(e.class_of(x));
    let names: Vec<String> = classes
        .iter()
        .map(|members| {
            let ghosts: Vec<ElementId> =
                members.iter().copied().filter(|&x| u.in_ghost_ideal(x)).collect();
            let shown: &[ElementId] = if ghosts.is_empty() { members } else { &ghosts };
            if shown.len() == 1 {
                u.element_name(shown[0]).to_string()
            } else {
                let parts: Vec<&str> = shown.iter().map(|&x| u.element_name(x)).collect();
                format!("[{}]", parts.join("|"))
            }
        })
        .collect();
    let mut table = Vec::with_capacity(k * k);
    for a in &classes {
        for b in &classes {
            table.push(cls(u.mul(a[0], b[0])));
        }
    }
    let mut ghost_classes: Vec<(usize, ElementId)> = classes
        .iter()
        .enumerate()
        .filter_map(|(i, members)| {
            members
                .iter()
                .filter_map(|&x| u.rank(x))
                .min()
                .map(|r| (r, ElementId(i)))
        })
        .collect();
    ghost_classes.sort();
    let spec = MonoidSpec {
        name,
        names,
        table,
        zero: cls(u.zero()),
        one: cls(u.one()),
        e: cls(u.e()),
        ghost_order: ghost_classes.into_iter().map(|(_, c)| c).collect(),
    };
    let monoid: MonoidRef = Arc::new(validate_monoid(spec)?);
    let map = u.elements().map(cls).collect();
    let projection = Transmission::new(u.clone(), monoid.clone(), map)
        .expect("projection onto a quotient is a transmission");
    Ok(Quotient { monoid, projection })
}

/// Intersection of two MFCE-relations.
pub fn meet(u: &SupertropicalMonoid, e: &Partition, f: &Partition) -> Result<Partition, RelationError> {
    require_mfce(u, e)?;
    require_mfce(u, f)?;
    Ok(e.meet(f))
}

/// Finest MFCE-relation containing both.
pub fn join(u: &SupertropicalMonoid, e: &Partition, f: &Partition) -> Result<Partition, RelationError> {
    require_mfce(u, e)?;
    require_mfce(u, f)?;
    let j = e.join(f);
    require_mfce(u, &j)?;
    Ok(j)
}

pub fn is_finer(e: &Partition, f: &Partition) -> bool {
    e.is_finer(f)
}

/// Smallest multiplicative equivalence containing `seed`.
pub fn multiplicative_closure(u: &SupertropicalMonoid, seed: &Partition) -> Partition {
    let n = u.size();
    let mut uf = UnionFind::new(n);
    for (x, y) in seed.pairs() {
        uf.union(x.0, y.0);
    }
    loop {
        let mut changed = false;
        for x in u.elements() {
            let r = ElementId(uf.find(x.0));
            if r == x {
                continue;
            }
            for z in u.elements() {
                changed |= uf.union(u.mul(x, z).0, u.mul(r, z).0);
            }
        }
        if !changed {
            return uf.into_partition();
        }
    }
}

/// Smallest TE-relation containing `seed`.
pub fn te_closure(u: &SupertropicalMonoid, seed: &Partition) -> Partition {
    let mut current = seed.clone();
    loop {
        let closed = multiplicative_closure(u, &current);
        let extra: Vec<(ElementId, ElementId)> = u
            .elements()
            .filter(|&x| closed.same(u.ghost(x), u.zero()) && !closed.same(x, u.zero()))
            .map(|x| (x, u.zero()))
            .collect();
        if extra.is_empty() {
            return closed;
        }
        current = closed.join(&Partition::from_pairs(u.size(), extra));
    }
}

/// Pairs satisfying the ghost-separation condition: for every `z`, the
/// products `xz, yz` lie jointly in `𝒯 ∪ {0}`, jointly in `eU`, or in `[0]_E`.
fn separated_pair_ok(u: &SupertropicalMonoid, e: &Partition, x: ElementId, y: ElementId) -> bool {
    u.elements().all(|z| {
        let (xz, yz) = (u.mul(x, z), u.mul(y, z));
        (u.is_tangible_or_zero(xz) && u.is_tangible_or_zero(yz))
            || (u.in_ghost_ideal(xz) && u.in_ghost_ideal(yz))
            || e.same(xz, u.zero())
    })
}

/// The coarsest ghost-separating TE-relation contained in `e`.
pub fn ghost_separating_refinement(
    u: &SupertropicalMonoid,
    e: &Partition,
) -> Result<Partition, RelationError> {
    require_te(u, e)?;
    let pairs = e.pairs().into_iter().filter(|&(x, y)| separated_pair_ok(u, e, x, y));
    Ok(Partition::from_pairs(u.size(), pairs))
}

/// The relations `E(ν)`, `Ẽ(ν)` and `E_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalRelations {
    pub e_nu: Partition,
    pub e_nu_tilde: Partition,
    pub e_t: Partition,
    pub e_t_multiplicative: bool,
}

/// Equal ghosts.
pub fn ghost_kernel(u: &SupertropicalMonoid) -> Partition {
    let labels: Vec<ElementId> = u.elements().map(|x| u.ghost(x)).collect();
    Partition::from_labels(&labels)
}

pub fn canonical_relations(u: &SupertropicalMonoid) -> CanonicalRelations {
    let e_nu = ghost_kernel(u);
    let signature: Vec<(ElementId, Vec<bool>)> = u
        .elements()
        .map(|x| (u.ghost(x), u.elements().map(|z| u.in_ghost_ideal(u.mul(z, x))).collect()))
        .collect();
    let e_nu_tilde = Partition::from_labels(&signature);
    debug_assert_eq!(
        Some(&e_nu_tilde),
        ghost_separating_refinement(u, &e_nu).as_ref().ok()
    );
    let t_labels: Vec<(ElementId, Option<ElementId>)> = u
        .elements()
        .map(|x| (u.ghost(x), if u.is_tangible(x) { None } else { Some(x) }))
        .collect();
    let e_t = Partition::from_labels(&t_labels);
    let e_t_multiplicative = multiplicativity_violation(u, &e_t).is_none();
    CanonicalRelations { e_nu, e_nu_tilde, e_t, e_t_multiplicative }
}

/// Flags describing an MFCE-relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationKind {
    pub is_te: bool,
    pub is_mfce: bool,
    pub is_ghost_separating: bool,
    pub is_mixing: bool,
}

pub fn classify(u: &SupertropicalMonoid, e: &Partition) -> Result<RelationKind, RelationError> {
    require_mfce(u, e)?;
    let tilde = canonical_relations(u).e_nu_tilde;
    Ok(RelationKind {
        is_te: true,
        is_mfce: true,
        is_ghost_separating: e.is_finer(&tilde),
        is_mixing: e.meet(&tilde).is_discrete(),
    })
}

/// Ghost separation read off the definition: no tangible outside `[0]`
/// shares a class with a ghost.
pub fn is_ghost_separating_direct(u: &SupertropicalMonoid, e: &Partition) -> bool {
    u.elements().all(|x| {
        !u.is_tangible(x)
            || e.same(x, u.zero())
            || e.members(x).iter().all(|&y| !u.in_ghost_ideal(y))
    })
}

/// A maximal mixing MFCE-relation containing `e`.
pub fn maximal_mixing_above(u: &SupertropicalMonoid, e: &Partition) -> Result<Partition, RelationError> {
    if !classify(u, e)?.is_mixing {
        return Err(RelationError::NotMixing);
    }
    let tilde = canonical_relations(u).e_nu_tilde;
    let mixing = |p: &Partition| p.meet(&tilde).is_discrete();
    let mut current = e.clone();
    'outer: loop {
        for x in u.elements() {
            for y in u.elements().filter(|&y| y > x) {
                if current.same(x, y) || u.ghost(x) != u.ghost(y) {
                    continue;
                }
                let seed = current.join(&Partition::from_pairs(u.size(), [(x, y)]));
                let candidate = multiplicative_closure(u, &seed);
                if mixing(&candidate) {
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        return Ok(current);
    }
}
