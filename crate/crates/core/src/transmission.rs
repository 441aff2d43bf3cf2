//! Transmissions and their tangible/mixing factorization.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::monoid::{validate_monoid, ElementId, MonoidError, MonoidRef, MonoidSpec, SupertropicalMonoid};
use crate::partition::Partition;
use crate::relations::{ghost_separating_refinement, quotient_named, RelationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransmissionError {
    #[error("map has the wrong length or leaves the target")]
    Shape,
    #[error("source of the second map differs from the target of the first")]
    NotComposable,
    #[error("not multiplicative at ({x}, {y})")]
    NotMultiplicative { x: String, y: String },
    #[error("{which} is not preserved")]
    UnitMismatch { which: &'static str },
    #[error("ghost part not monotone: {a} ≤ {b} but images are reversed")]
    GhostPartNotMonotone { a: String, b: String },
    #[error("map is not surjective")]
    NotSurjective,
    #[error("zero kernel is nontrivial ({0} ↦ 0)")]
    NonTrivialZeroKernel(String),
    #[error("not a fiber contraction")]
    NotFiberContraction,
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A table-backed transmission between two monoids.
#[derive(Clone, Debug)]
pub struct Transmission {
    source: MonoidRef,
    target: MonoidRef,
    map: Vec<ElementId>,
}

impl PartialEq for Transmission {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.source == *other.source && *self.target == *other.target
    }
}

/// Checks the transmission axioms for a raw table.
pub fn validate_transmission(
    source: &SupertropicalMonoid,
    target: &SupertropicalMonoid,
    map: &[ElementId],
) -> Result<(), TransmissionError> {
    if map.len() != source.size() || map.iter().any(|y| y.0 >= target.size()) {
        return Err(TransmissionError::Shape);
    }
    let f = |x: ElementId| map[x.0];
    if f(source.zero()) != target.zero() {
        return Err(TransmissionError::UnitMismatch { which: "zero" });
    }
    if f(source.one()) != target.one() {
        return Err(TransmissionError::UnitMismatch { which: "one" });
    }
    if f(source.e()) != target.e() {
        return Err(TransmissionError::UnitMismatch { which: "e" });
    }
    for x in source.elements() {
        for y in source.elements().filter(|&y| y >= x) {
            if f(source.mul(x, y)) != target.mul(f(x), f(y)) {
                return Err(TransmissionError::NotMultiplicative {
                    x: source.element_name(x).into(),
                    y: source.element_name(y).into(),
                });
            }
        }
    }
    let order = source.ghost_order();
    for w in order.windows(2) {
        if target.cmp_ghosts(f(w[0]), f(w[1])).is_gt() {
            return Err(TransmissionError::GhostPartNotMonotone {
                a: source.element_name(w[0]).into(),
                b: source.element_name(w[1]).into(),
            });
        }
    }
    Ok(())
}

/// Why a transmission fails to be mixing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixingFailure {
    /// A nonzero element sent to zero.
    ZeroKernel(ElementId),
    /// A collided pair never separated in kind.
    Unseparated(ElementId, ElementId),
}

impl Transmission {
    pub fn new(
        source: MonoidRef,
        target: MonoidRef,
        map: Vec<ElementId>,
    ) -> Result<Self, TransmissionError> {
        validate_transmission(&source, &target, &map)?;
        Ok(Transmission { source, target, map })
    }

    pub fn identity(u: &MonoidRef) -> Self {
        Transmission { source: u.clone(), target: u.clone(), map: u.elements().collect() }
    }

    pub fn source(&self) -> &MonoidRef {
        &self.source
    }

    pub fn target(&self) -> &MonoidRef {
        &self.target
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x.0]
    }

    /// Restriction to the ghost ideals, as `(a, α(a))` pairs in ascending order.
    pub fn ghost_part(&self) -> Vec<(ElementId, ElementId)> {
        self.source.ghost_order().iter().map(|&a| (a, self.apply(a))).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Transmission) -> Result<Transmission, TransmissionError> {
        if *self.target != *other.source {
            return Err(TransmissionError::NotComposable);
        }
        let map = self.map.iter().map(|&y| other.apply(y)).collect();
        Ok(Transmission { source: self.source.clone(), target: other.target.clone(), map })
    }

    pub fn image(&self) -> BTreeSet<ElementId> {
        self.map.iter().copied().collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source.size()
    }

    pub fn zero_kernel(&self) -> Vec<ElementId> {
        self.source.elements().filter(|&x| self.apply(x) == self.target.zero()).collect()
    }

    pub fn has_trivial_zero_kernel(&self) -> bool {
        self.zero_kernel().len() == 1
    }

    /// The relation `E(α)`: `x ~ y` iff `α(x) = α(y)`.
    pub fn kernel(&self) -> Partition {
        Partition::from_labels(&self.map)
    }

    /// A tangible element sent to a nonzero ghost.
    pub fn tangible_witness(&self) -> Option<ElementId> {
        self.source
            .elements()
            .find(|&x| self.source.is_tangible(x) && self.target.is_ghost(self.apply(x)))
    }

    pub fn is_tangible(&self) -> bool {
        self.tangible_witness().is_none()
    }

    pub fn mixing_witness(&self) -> Option<MixingFailure> {
        let (s, t) = (&self.source, &self.target);
        if let Some(&x) = self.zero_kernel().iter().find(|&&x| x != s.zero()) {
            return Some(MixingFailure::ZeroKernel(x));
        }
        for x in s.elements() {
            for y in s.elements().filter(|&y| y > x && self.apply(y) == self.apply(x)) {
                let separated = s.elements().any(|z| {
                    let (xz, yz) = (s.mul(x, z), s.mul(y, z));
                    t.zero() != self.apply(xz)
                        && ((s.is_tangible(xz) && s.is_ghost(yz))
                            || (s.is_ghost(xz) && s.is_tangible(yz)))
                });
                if !separated {
                    return Some(MixingFailure::Unseparated(x, y));
                }
            }
        }
        None
    }

    pub fn is_mixing(&self) -> bool {
        self.mixing_witness().is_none()
    }

    /// Surjective with bijective ghost part.
    pub fn is_fiber_contraction(&self) -> bool {
        let images: BTreeSet<ElementId> = self.ghost_part().iter().map(|p| p.1).collect();
        self.is_surjective() && images.len() == self.source.ghost_order().len()
    }
}

/// `β ∘ α`.
pub fn compose(alpha: &Transmission, beta: &Transmission) -> Result<Transmission, TransmissionError> {
    alpha.then(beta)
}

/// The ghost ideal `M = eU` viewed as a supertropical monoid with `e = 1`.
pub fn ghost_monoid(u: &SupertropicalMonoid) -> MonoidRef {
    let (m, _) = u.ghost_semiring();
    Arc::new(m.as_monoid().renamed(format!("{}.M", u.name())))
}

/// The ghost map `ν: U → M`.
pub fn ghost_map(u: &MonoidRef) -> Transmission {
    let m = ghost_monoid(u);
    let map = u.elements().map(|x| ElementId(u.rank(u.ghost(x)).expect("ghost"))).collect();
    Transmission::new(u.clone(), m, map).expect("the ghost map is a transmission")
}

/// Submonoid on a product-closed subset containing `0, 1, e` and stable
/// under `x ↦ ex`, with its inclusion.
pub fn submonoid(
    u: &MonoidRef,
    subset: &BTreeSet<ElementId>,
    name: impl Into<String>,
) -> Result<(MonoidRef, Transmission), TransmissionError> {
    let elems: Vec<ElementId> = subset.iter().copied().collect();
    let pos = |x: ElementId| elems.iter().position(|&y| y == x);
    let closed = [u.zero(), u.one(), u.e()].iter().all(|x| subset.contains(x))
        && elems.iter().all(|&x| elems.iter().all(|&y| subset.contains(&u.mul(x, y))));
    if !closed {
        return Err(MonoidError::Malformed("subset is not a submonoid".into()).into());
    }
    let mut table = Vec::with_capacity(elems.len() * elems.len());
    for &x in &elems {
        for &y in &elems {
            table.push(ElementId(pos(u.mul(x, y)).expect("closed")));
        }
    }
    let spec = MonoidSpec {
        name: name.into(),
        names: elems.iter().map(|&x| u.element_name(x).to_string()).collect(),
        table,
        zero: ElementId(pos(u.zero()).expect("zero")),
        one: ElementId(pos(u.one()).expect("one")),
        e: ElementId(pos(u.e()).expect("e")),
        ghost_order: u
            .ghost_order()
            .iter()
            .filter_map(|&g| pos(g).map(ElementId))
            .collect(),
    };
    let sub: MonoidRef = Arc::new(validate_monoid(spec)?);
    let inclusion = Transmission::new(sub.clone(), u.clone(), elems)?;
    Ok((sub, inclusion))
}

/// A factorization `α = α_m ∘ α_t` through a middle monoid.
#[derive(Clone, Debug)]
pub struct TmFactorization {
    pub tangible_part: Transmission,
    pub middle: MonoidRef,
    pub mixing_part: Transmission,
}

impl TmFactorization {
    pub fn composite(&self) -> Transmission {
        self.tangible_part.then(&self.mixing_part).expect("parts compose")
    }
}

fn require_trivial_zero_kernel(alpha: &Transmission) -> Result<(), TransmissionError> {
    let s = alpha.source();
    match alpha.zero_kernel().into_iter().find(|&x| x != s.zero()) {
        Some(x) => Err(TransmissionError::NonTrivialZeroKernel(s.element_name(x).into())),
        None => Ok(()),
    }
}

/// Factorization of a surjective transmission with trivial zero kernel.
pub fn tm_factorization(alpha: &Transmission) -> Result<TmFactorization, TransmissionError> {
    if !alpha.is_surjective() {
        return Err(TransmissionError::NotSurjective);
    }
    require_trivial_zero_kernel(alpha)?;
    let src = alpha.source();
    let refined = ghost_separating_refinement(src, &alpha.kernel())?;
    let q = quotient_named(src, &refined, format!("{}~{}", src.name(), alpha.target().name()))?;
    let classes = refined.classes();
    let map = classes.iter().map(|c| alpha.apply(c[0])).collect();
    let mixing_part = Transmission::new(q.monoid.clone(), alpha.target().clone(), map)?;
    Ok(TmFactorization { tangible_part: q.projection, middle: q.monoid, mixing_part })
}

/// Factorization of an arbitrary transmission with trivial zero kernel:
/// corestrict to the image, factor, then include.
pub fn tm_factorization_general(alpha: &Transmission) -> Result<TmFactorization, TransmissionError> {
    require_trivial_zero_kernel(alpha)?;
    if alpha.is_surjective() {
        return tm_factorization(alpha);
    }
    let image = alpha.image();
    let (sub, inclusion) = submonoid(alpha.target(), &image, format!("{}.image", alpha.target().name()))?;
    let pos: Vec<ElementId> = {
        let elems: Vec<ElementId> = image.iter().copied().collect();
        alpha.map().iter().map(|y| ElementId(elems.iter().position(|z| z == y).expect("in image"))).collect()
    };
    let onto = Transmission::new(alpha.source().clone(), sub, pos)?;
    let f = tm_factorization(&onto)?;
    Ok(TmFactorization {
        mixing_part: f.mixing_part.then(&inclusion)?,
        tangible_part: f.tangible_part,
        middle: f.middle,
    })
}

/// Collapses the zero kernel: returns `(π, ᾱ)` with `α = ᾱ ∘ π` and `ᾱ` of
/// trivial zero kernel.
pub fn divide_zero_kernel(alpha: &Transmission) -> Result<(Transmission, Transmission), TransmissionError> {
    let src = alpha.source();
    let kernel = alpha.zero_kernel();
    let part = Partition::from_classes(src.size(), &[kernel]).expect("one class");
    let q = quotient_named(src, &part, format!("{}/ker", src.name()))?;
    let map = part.classes().iter().map(|c| alpha.apply(c[0])).collect();
    let reduced = Transmission::new(q.monoid, alpha.target().clone(), map)?;
    Ok((q.projection, reduced))
}

/// Factorization of `β ∘ α` assembled from the factorizations of `α` and `β`.
pub fn compose_tm(alpha: &Transmission, beta: &Transmission) -> Result<TmFactorization, TransmissionError> {
    let fa = tm_factorization_general(alpha)?;
    let fb = tm_factorization_general(beta)?;
    let rho = fa.mixing_part.then(&fb.tangible_part)?;
    let fr = tm_factorization_general(&rho)?;
    Ok(TmFactorization {
        tangible_part: fa.tangible_part.then(&fr.tangible_part)?,
        middle: fr.middle,
        mixing_part: fr.mixing_part.then(&fb.mixing_part)?,
    })
}

/// The isomorphism `ζ` between middles with `ζ ∘ t₁ = t₂` and `m₂ ∘ ζ = m₁`,
/// if the two factorizations agree.
pub fn middle_isomorphism(f1: &TmFactorization, f2: &TmFactorization) -> Option<Transmission> {
    let (t1, t2) = (&f1.tangible_part, &f2.tangible_part);
    if *t1.source() != *t2.source() || !t1.is_surjective() {
        return None;
    }
    let mut zeta: Vec<Option<ElementId>> = vec![None; f1.middle.size()];
    for x in t1.source().elements() {
        let slot = &mut zeta[t1.apply(x).0];
        match slot {
            None => *slot = Some(t2.apply(x)),
            Some(y) if *y != t2.apply(x) => return None,
            _ => {}
        }
    }
    let map: Vec<ElementId> = zeta.into_iter().map(|z| z.expect("t1 surjective")).collect();
    let zeta = Transmission::new(f1.middle.clone(), f2.middle.clone(), map).ok()?;
    if !zeta.is_injective() || !zeta.is_surjective() {
        return None;
    }
    if zeta.then(&f2.mixing_part).ok()?.map() != f1.mixing_part.map() {
        return None;
    }
    Some(zeta)
}
