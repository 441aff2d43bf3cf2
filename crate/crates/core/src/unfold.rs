//! Unfoldings `Ũ(N)` and tangible lifts of transmissions.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::construct::{str_construct, ConstructError, MonoidWithZero};
use crate::monoid::{ElementId, MonoidError, MonoidRef};
use crate::transmission::{Transmission, TransmissionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnfoldError {
    #[error("subset is not a submonoid containing 0 and 1")]
    NotASubmonoid,
    #[error("tangible {0} is missing from the subset")]
    MissingTangibles(String),
    #[error("{0} is mapped outside the target subset")]
    ImageEscapesN(String),
    #[error("source monoid is not unfolded")]
    NotUnfolded,
    #[error("tangible {0} is not hit by a tangible")]
    NotTangiblySurjective(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Transmission(#[from] TransmissionError),
}

/// `Ũ(N)` with the projection `τ: Ũ(N) → U`.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub monoid: MonoidRef,
    pub projection: Transmission,
    /// The subset `N ⊆ U`.
    pub support: BTreeSet<ElementId>,
    /// `x ↦ x̃` for `x ∈ N`.
    lift: Vec<Option<ElementId>>,
    /// Copy in `Ũ(N)` of each ghost of `U`.
    ghost_copy: Vec<Option<ElementId>>,
}

impl Unfolding {
    /// The tangible copy `x̃` of `x ∈ N` (zero for zero).
    pub fn lift(&self, x: ElementId) -> Option<ElementId> {
        self.lift[x.0]
    }

    /// The ghost `a ∈ eU` inside `Ũ(N)`.
    pub fn ghost(&self, a: ElementId) -> Option<ElementId> {
        self.ghost_copy[a.0]
    }
}

/// Unfolds `U` along a submonoid `N ⊇ 𝒯(U) ∪ {0}`.
pub fn unfold(u: &MonoidRef, n: &BTreeSet<ElementId>) -> Result<Unfolding, UnfoldError> {
    if !n.contains(&u.zero())
        || !n.contains(&u.one())
        || n.iter().any(|&x| n.iter().any(|&y| !n.contains(&u.mul(x, y))))
    {
        return Err(UnfoldError::NotASubmonoid);
    }
    if let Some(t) = u.tangibles().into_iter().find(|t| !n.contains(t)) {
        return Err(UnfoldError::MissingTangibles(u.element_name(t).into()));
    }
    let elems: Vec<ElementId> = n.iter().copied().collect();
    let pos = |x: ElementId| ElementId(elems.iter().position(|&y| y == x).expect("member"));
    let mut table = Vec::with_capacity(elems.len() * elems.len());
    for &x in &elems {
        for &y in &elems {
            table.push(pos(u.mul(x, y)));
        }
    }
    let names = elems.iter().map(|&x| u.element_name(x).to_string()).collect();
    let nz = MonoidWithZero::new(names, table, pos(u.zero()), pos(u.one()))?;
    let (m, embed) = u.ghost_semiring();
    let rank = |x: ElementId| ElementId(u.rank(u.ghost(x)).expect("ghost"));
    let rho: Vec<ElementId> = elems.iter().map(|&x| rank(x)).collect();
    let built = str_construct(&format!("{}~", u.name()), &nz, &m, &rho)?;
    let tilde: MonoidRef = Arc::new(built.monoid);

    let mut tau = vec![u.zero(); tilde.size()];
    let mut lift = vec![None; u.size()];
    let mut ghost_copy = vec![None; u.size()];
    for (i, &x) in elems.iter().enumerate() {
        tau[built.n_embed[i].0] = x;
        lift[x.0] = Some(built.n_embed[i]);
    }
    for (j, &a) in embed.iter().enumerate() {
        tau[built.m_embed[j].0] = a;
        ghost_copy[a.0] = Some(built.m_embed[j]);
    }
    let projection = Transmission::new(tilde.clone(), u.clone(), tau)?;
    Ok(Unfolding { monoid: tilde, projection, support: n.clone(), lift, ghost_copy })
}

/// The tangible unfolding `α̃: Ũ'(N') → Ũ(N)` of `α: U' → U`.
#[derive(Clone, Debug)]
pub struct TangibleUnfolding {
    pub source: Unfolding,
    pub target: Unfolding,
    pub map: Transmission,
}

pub fn tangible_unfolding(
    alpha: &Transmission,
    n_src: &BTreeSet<ElementId>,
    n_tgt: &BTreeSet<ElementId>,
) -> Result<TangibleUnfolding, UnfoldError> {
    if let Some(&x) = n_src.iter().find(|&&x| !n_tgt.contains(&alpha.apply(x))) {
        return Err(UnfoldError::ImageEscapesN(alpha.source().element_name(x).into()));
    }
    let source = unfold(alpha.source(), n_src)?;
    let target = unfold(alpha.target(), n_tgt)?;
    let s = &source.monoid;
    let map: Vec<ElementId> = s
        .elements()
        .map(|y| {
            let x = source.projection.apply(y);
            if s.is_tangible_or_zero(y) {
                target.lift(alpha.apply(x)).expect("image lies in N")
            } else {
                target.ghost(alpha.apply(x)).expect("ghost")
            }
        })
        .collect();
    let map = Transmission::new(s.clone(), target.monoid.clone(), map)?;
    Ok(TangibleUnfolding { source, target, map })
}

/// The tangible lift `α̃: U' → Ũ(N)` with `N = α(𝒯(U') ∪ {0})`.
pub fn tangible_lift_of_transmission(
    alpha: &Transmission,
) -> Result<(Transmission, Unfolding), UnfoldError> {
    let (src, tgt) = (alpha.source(), alpha.target());
    if !src.is_unfolded() {
        return Err(UnfoldError::NotUnfolded);
    }
    let mut n: BTreeSet<ElementId> = src
        .elements()
        .filter(|&x| src.is_tangible_or_zero(x))
        .map(|x| alpha.apply(x))
        .collect();
    n.insert(tgt.zero());
    if let Some(t) = tgt.tangibles().into_iter().find(|t| !n.contains(t)) {
        return Err(UnfoldError::NotTangiblySurjective(tgt.element_name(t).into()));
    }
    let unfolding = unfold(tgt, &n)?;
    let map = src
        .elements()
        .map(|x| {
            let y = alpha.apply(x);
            if src.is_tangible_or_zero(x) {
                unfolding.lift(y).expect("in N")
            } else {
                unfolding.ghost(y).expect("ghost")
            }
        })
        .collect();
    let lifted = Transmission::new(src.clone(), unfolding.monoid.clone(), map)?;
    Ok((lifted, unfolding))
}
