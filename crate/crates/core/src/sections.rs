//! Ideal-generating sections of the ghost map, sons and tyrants.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::monoid::{ElementId, SupertropicalMonoid};
use crate::partition::Partition;
use crate::reflection::compression_partition;
use crate::relations::{require_mfce, RelationError};
use crate::transmission::Transmission;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SectionError {
    #[error("section must list one value per ghost")]
    WrongLength,
    #[error("e·s({a}) ≠ {a}")]
    SC1Violated { a: String },
    #[error("s({a})·{y} lies outside M ∪ s(M)")]
    SC2Violated { a: String, y: String },
    #[error("a class contains the two tangibles {0} and {1}")]
    ClassWithTwoTangibles(String, String),
    #[error("sections have no common upper bound")]
    NoUpperBound,
    #[error("{0} is not tangible")]
    NotTangible(String),
    #[error("{0} is not a tyrant")]
    NotATyrant(String),
    #[error("map is not a fiber contraction")]
    NotFiberContraction,
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// A section `s: M → U` of the ghost map with `M ∪ s(M)` an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IgSection {
    ghosts: Vec<ElementId>,
    values: Vec<ElementId>,
}

impl IgSection {
    /// `values[i]` is the image of the `i`-th ghost in ascending order.
    pub fn new(u: &SupertropicalMonoid, values: Vec<ElementId>) -> Result<Self, SectionError> {
        validate_ig_section(u, &values)?;
        Ok(IgSection { ghosts: u.ghost_order().to_vec(), values })
    }

    /// Builds a section from `(ghost, value)` pairs; unlisted ghosts map to themselves.
    pub fn from_pairs(
        u: &SupertropicalMonoid,
        pairs: &[(ElementId, ElementId)],
    ) -> Result<Self, SectionError> {
        let values = u
            .ghost_order()
            .iter()
            .map(|&a| pairs.iter().find(|p| p.0 == a).map_or(a, |p| p.1))
            .collect();
        Self::new(u, values)
    }

    pub fn trivial(u: &SupertropicalMonoid) -> Self {
        IgSection { ghosts: u.ghost_order().to_vec(), values: u.ghost_order().to_vec() }
    }

    pub fn ghosts(&self) -> &[ElementId] {
        &self.ghosts
    }

    pub fn values(&self) -> &[ElementId] {
        &self.values
    }

    pub fn apply(&self, a: ElementId) -> ElementId {
        let i = self.ghosts.iter().position(|&g| g == a).expect("argument is a ghost");
        self.values[i]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.ghosts.iter().copied().zip(self.values.iter().copied())
    }

    pub fn image(&self) -> BTreeSet<ElementId> {
        self.values.iter().copied().collect()
    }

    /// `s(M) ∩ 𝒯(U)`.
    pub fn tangible_values(&self) -> Vec<ElementId> {
        self.pairs().filter(|(a, v)| a != v).map(|(_, v)| v).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.ghosts == self.values
    }

    /// `self ≤ other`: every value is either the ghost itself or the value of `other`.
    pub fn is_below(&self, other: &IgSection) -> bool {
        self.pairs().all(|(a, v)| v == a || v == other.apply(a))
    }
}

pub fn validate_ig_section(u: &SupertropicalMonoid, values: &[ElementId]) -> Result<(), SectionError> {
    let ghosts = u.ghost_order();
    if values.len() != ghosts.len() || values.iter().any(|v| v.0 >= u.size()) {
        return Err(SectionError::WrongLength);
    }
    for (&a, &v) in ghosts.iter().zip(values) {
        if u.ghost(v) != a {
            return Err(SectionError::SC1Violated { a: u.element_name(a).into() });
        }
    }
    let allowed: BTreeSet<ElementId> = ghosts.iter().chain(values).copied().collect();
    for (&a, &v) in ghosts.iter().zip(values) {
        if let Some(y) = u.elements().find(|&y| !allowed.contains(&u.mul(v, y))) {
            return Err(SectionError::SC2Violated {
                a: u.element_name(a).into(),
                y: u.element_name(y).into(),
            });
        }
    }
    Ok(())
}

/// The alternative condition: `s(a)y ∈ 𝒯` implies `s(a)y = s(ay)`.
pub fn sc2_prime_holds(u: &SupertropicalMonoid, values: &[ElementId]) -> bool {
    let ghosts = u.ghost_order();
    let s = |a: ElementId| values[u.rank(a).expect("ghost")];
    ghosts.iter().zip(values).all(|(&a, &v)| {
        u.elements().all(|y| {
            let p = u.mul(v, y);
            !u.is_tangible(p) || p == s(u.mul(a, y))
        })
    })
}

/// `E(s)`: each tangible value `s(a)` merged with `a`.
pub fn relation_of_section(u: &SupertropicalMonoid, s: &IgSection) -> Partition {
    let ideal: BTreeSet<ElementId> = u.ghost_ideal().into_iter().chain(s.image()).collect();
    compression_partition(u, &ideal).expect("M ∪ s(M) is an ideal")
}

/// The section of an MFCE-relation whose classes hold at most one tangible.
pub fn section_of_relation(u: &SupertropicalMonoid, e: &Partition) -> Result<IgSection, SectionError> {
    require_mfce(u, e)?;
    for class in e.classes() {
        let t: Vec<ElementId> = class.iter().copied().filter(|&x| u.is_tangible(x)).collect();
        if t.len() > 1 {
            return Err(SectionError::ClassWithTwoTangibles(
                u.element_name(t[0]).into(),
                u.element_name(t[1]).into(),
            ));
        }
    }
    let values = u
        .ghost_order()
        .iter()
        .map(|&a| e.members(a).into_iter().find(|&x| u.is_tangible(x)).unwrap_or(a))
        .collect();
    IgSection::new(u, values)
}

pub fn igs_meet(u: &SupertropicalMonoid, s: &IgSection, t: &IgSection) -> IgSection {
    let values = s
        .pairs()
        .map(|(a, v)| if v == t.apply(a) && u.is_tangible(v) { v } else { a })
        .collect();
    IgSection::new(u, values).expect("the meet of two sections is a section")
}

pub fn igs_join(u: &SupertropicalMonoid, s: &IgSection, t: &IgSection) -> Result<IgSection, SectionError> {
    let mut values = Vec::with_capacity(s.values.len());
    for (a, sv) in s.pairs() {
        let tv = t.apply(a);
        let v = match (sv == a, tv == a) {
            (true, true) => a,
            (false, true) => sv,
            (true, false) => tv,
            (false, false) if sv == tv => sv,
            (false, false) => return Err(SectionError::NoUpperBound),
        };
        values.push(v);
    }
    IgSection::new(u, values).map_err(|_| SectionError::NoUpperBound)
}

pub fn igs_sup_family(u: &SupertropicalMonoid, family: &[IgSection]) -> Result<IgSection, SectionError> {
    family
        .iter()
        .try_fold(IgSection::trivial(u), |acc, s| igs_join(u, &acc, s))
}

/// The sons `(Ux) ∩ 𝒯(U)` of a tangible `x`, grouped by ghost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SonSet {
    pub base: ElementId,
    pub sons: Vec<ElementId>,
    pub by_ghost: BTreeMap<ElementId, Vec<ElementId>>,
}

fn require_tangible(u: &SupertropicalMonoid, x: ElementId) -> Result<(), SectionError> {
    if u.is_tangible(x) {
        Ok(())
    } else {
        Err(SectionError::NotTangible(u.element_name(x).into()))
    }
}

pub fn sons(u: &SupertropicalMonoid, x: ElementId) -> Result<SonSet, SectionError> {
    require_tangible(u, x)?;
    let sons: Vec<ElementId> = u.multiples(x).into_iter().filter(|&z| u.is_tangible(z)).collect();
    let mut by_ghost: BTreeMap<ElementId, Vec<ElementId>> = BTreeMap::new();
    for &z in &sons {
        by_ghost.entry(u.ghost(z)).or_default().push(z);
    }
    Ok(SonSet { base: x, sons, by_ghost })
}

pub fn sons_over(u: &SupertropicalMonoid, x: ElementId, c: ElementId) -> Result<Vec<ElementId>, SectionError> {
    Ok(sons(u, x)?.by_ghost.remove(&c).unwrap_or_default())
}

pub fn is_tyrant(u: &SupertropicalMonoid, x: ElementId) -> Result<bool, SectionError> {
    Ok(sons(u, x)?.by_ghost.values().all(|v| v.len() <= 1))
}

/// `s_x`: the unique son over each ghost, or the ghost itself.
pub fn section_of_tyrant(u: &SupertropicalMonoid, x: ElementId) -> Result<IgSection, SectionError> {
    let sons = sons(u, x)?;
    if sons.by_ghost.values().any(|v| v.len() > 1) {
        return Err(SectionError::NotATyrant(u.element_name(x).into()));
    }
    let values = u
        .ghost_order()
        .iter()
        .map(|a| sons.by_ghost.get(a).map_or(*a, |v| v[0]))
        .collect();
    IgSection::new(u, values)
}

/// A tangible `x` with `M ∪ s(M) = M ∪ Ux`, if one exists.
pub fn primitive_generator(u: &SupertropicalMonoid, s: &IgSection) -> Option<ElementId> {
    let m = u.ghost_ideal();
    let ideal: BTreeSet<ElementId> = m.iter().copied().chain(s.image()).collect();
    u.tangibles().into_iter().find(|&x| {
        let generated: BTreeSet<ElementId> = m.iter().copied().chain(u.multiples(x)).collect();
        generated == ideal
    })
}

pub fn primitive_sections_below(u: &SupertropicalMonoid, s: &IgSection) -> Vec<IgSection> {
    let mut out: Vec<IgSection> = Vec::new();
    for x in s.tangible_values() {
        let sx = section_of_tyrant(u, x).expect("tangible values of a section are tyrants");
        if !out.contains(&sx) {
            out.push(sx);
        }
    }
    out
}

/// `α ∘ s` for a fiber contraction `α`.
pub fn pushforward(alpha: &Transmission, s: &IgSection) -> Result<IgSection, SectionError> {
    if !alpha.is_fiber_contraction() {
        return Err(SectionError::NotFiberContraction);
    }
    let target = alpha.target();
    let values = target
        .ghost_order()
        .iter()
        .map(|&b| {
            let a = s
                .ghosts()
                .iter()
                .copied()
                .find(|&a| alpha.apply(a) == b)
                .expect("ghost part is bijective");
            alpha.apply(s.apply(a))
        })
        .collect();
    IgSection::new(target, values)
}

/// `a ∈ 𝒯(U)c` and `c ∈ 𝒯(U)a`.
pub fn tangibly_associated_ghosts(u: &SupertropicalMonoid, a: ElementId, c: ElementId) -> bool {
    let t = u.tangibles();
    t.iter().any(|&x| u.mul(x, c) == a) && t.iter().any(|&x| u.mul(x, a) == c)
}
