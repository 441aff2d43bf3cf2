//! m-valuations and m-supervaluations on finite semirings, their ghost value
//! sets, and the tangible, partial and almost tangible lifts.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::construct::OrderedGhostSemiring;
use crate::monoid::{ElementId, MonoidRef, SupertropicalMonoid};
use crate::oracle::{enumerate_mfce, enumerate_transmissions, subsets, OracleError};
use crate::partition::Partition;
use crate::reflection::{compression_of_generated, compression_partition};
use crate::relations::{quotient_named, RelationError};
use crate::transmission::Transmission;
use crate::unfold::{unfold, UnfoldError, Unfolding};

/// Default bound on target sizes for the dominance search.
pub const DEFAULT_DOMINANCE_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemiringError {
    #[error("malformed semiring tables")]
    Malformed,
    #[error("{0} fails at ({1}, {2}, {3})")]
    Axiom(&'static str, String, String, String),
    #[error("monoid is not a semiring; distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("map has the wrong length or leaves the target")]
    Shape,
    #[error("0 or 1 is not preserved")]
    UnitMismatch,
    #[error("not multiplicative at ({0}, {1})")]
    NotMultiplicative(String, String),
    #[error("v({0}+{1}) exceeds v({0})+v({1})")]
    NotSubadditive(String, String),
    #[error("ghost values do not cover the reference valuation")]
    NotCovering,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("tangible {0} is not a value")]
    NotTangiblySurjective(String),
    #[error("set is not an ideal of the ghost semiring")]
    NotAnIdeal,
    #[error("ideal is not inside the ghost value set")]
    NotContainedInG,
    #[error("target is not a semiring")]
    TargetNotSemiring,
    #[error("target of size {0} exceeds the dominance search cap")]
    TargetsTooLarge(usize),
    #[error(transparent)]
    Unfold(#[from] UnfoldError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A finite commutative semiring given by its two tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    names: Vec<String>,
    add: Vec<ElementId>,
    mul: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
}

impl FiniteSemiring {
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        add: Vec<ElementId>,
        mul: Vec<ElementId>,
        zero: ElementId,
        one: ElementId,
    ) -> Result<Self, SemiringError> {
        let n = names.len();
        let in_range = |t: &[ElementId]| t.len() == n * n && t.iter().all(|x| x.0 < n);
        if n == 0 || !in_range(&add) || !in_range(&mul) || zero.0 >= n || one.0 >= n {
            return Err(SemiringError::Malformed);
        }
        let r = FiniteSemiring { name: name.into(), names, add, mul, zero, one };
        r.check_axioms()?;
        Ok(r)
    }

    fn check_axioms(&self) -> Result<(), SemiringError> {
        let nm = |x: ElementId| self.names[x.0].clone();
        let fail = |what, x, y, z| Err(SemiringError::Axiom(what, nm(x), nm(y), nm(z)));
        for x in self.elements() {
            if self.add(self.zero, x) != x {
                return fail("additive identity", self.zero, x, x);
            }
            if self.mul(self.one, x) != x {
                return fail("multiplicative identity", self.one, x, x);
            }
            if self.mul(self.zero, x) != self.zero {
                return fail("absorbing zero", self.zero, x, x);
            }
            for y in self.elements() {
                if self.add(x, y) != self.add(y, x) {
                    return fail("additive commutativity", x, y, y);
                }
                if self.mul(x, y) != self.mul(y, x) {
                    return fail("multiplicative commutativity", x, y, y);
                }
                for z in self.elements() {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return fail("additive associativity", x, y, z);
                    }
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return fail("multiplicative associativity", x, y, z);
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return fail("distributivity", x, y, z);
                    }
                }
            }
        }
        Ok(())
    }

    /// A supertropical monoid that is a semiring, with its own addition.
    pub fn from_supertropical(u: &SupertropicalMonoid) -> Result<Self, SemiringError> {
        if let Some((z, x, y)) = u.distributivity_witness() {
            let nm = |a: ElementId| u.element_name(a).to_string();
            return Err(SemiringError::NotDistributive(nm(z), nm(x), nm(y)));
        }
        let (add, mul) = u
            .elements()
            .flat_map(|x| u.elements().map(move |y| (u.add(x, y), u.mul(x, y))))
            .unzip();
        Self::new(u.name(), u.element_names().to_vec(), add, mul, u.zero(), u.one())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.size()).map(ElementId)
    }

    pub fn element_name(&self, x: ElementId) -> &str {
        &self.names[x.0]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn add(&self, x: ElementId, y: ElementId) -> ElementId {
        self.add[x.0 * self.size() + y.0]
    }

    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.mul[x.0 * self.size() + y.0]
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }
}

/// `v: R → M`, multiplicative with `v(x+y) ≤ max(v(x), v(y))`.
#[derive(Clone, Debug)]
pub struct MValuation {
    pub source: Arc<FiniteSemiring>,
    pub target: Arc<OrderedGhostSemiring>,
    map: Vec<ElementId>,
}

impl MValuation {
    pub fn new(
        source: Arc<FiniteSemiring>,
        target: Arc<OrderedGhostSemiring>,
        map: Vec<ElementId>,
    ) -> Result<Self, ValuationError> {
        validate_m_valuation(&source, &target, &map)?;
        Ok(MValuation { source, target, map })
    }

    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a.0]
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    pub fn image(&self) -> BTreeSet<ElementId> {
        self.map.iter().copied().collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    /// Whether `M ∖ {0}` is cancellative.
    pub fn is_valuation(&self) -> bool {
        self.target.is_cancellative()
    }
}

pub fn validate_m_valuation(
    r: &FiniteSemiring,
    m: &OrderedGhostSemiring,
    map: &[ElementId],
) -> Result<(), ValuationError> {
    if map.len() != r.size() || map.iter().any(|x| x.0 >= m.size()) {
        return Err(ValuationError::Shape);
    }
    let v = |a: ElementId| map[a.0];
    if v(r.zero()) != m.zero() || v(r.one()) != m.one() {
        return Err(ValuationError::UnitMismatch);
    }
    for x in r.elements() {
        for y in r.elements() {
            let nm = |a: ElementId| r.element_name(a).to_string();
            if v(r.mul(x, y)) != m.mul(v(x), v(y)) {
                return Err(ValuationError::NotMultiplicative(nm(x), nm(y)));
            }
            if m.rank(v(r.add(x, y))) > m.rank(v(x)).max(m.rank(v(y))) {
                return Err(ValuationError::NotSubadditive(nm(x), nm(y)));
            }
        }
    }
    Ok(())
}

/// The support `𝔮 = v⁻¹(0)`.
pub fn support(v: &MValuation) -> BTreeSet<ElementId> {
    v.source.elements().filter(|&a| v.apply(a) == v.target.zero()).collect()
}

/// `Y(v)`: products `ab` with some `a'` such that `v(a') < v(a)` and `v(a'b) = v(ab) ≠ 0`.
pub fn nc_products(v: &MValuation) -> BTreeSet<ElementId> {
    let (r, m) = (&v.source, &v.target);
    let mut out = BTreeSet::new();
    for a in r.elements() {
        let lower: Vec<ElementId> = r.elements().filter(|&ap| m.rank(v.apply(ap)) < m.rank(v.apply(a))).collect();
        for b in r.elements() {
            let ab = r.mul(a, b);
            let vab = v.apply(ab);
            if vab != m.zero() && lower.iter().any(|&ap| v.apply(r.mul(ap, b)) == vab) {
                out.insert(ab);
            }
        }
    }
    out
}

/// `𝔮' = 𝔮 ∪ Y(v)`.
pub fn extended_support(v: &MValuation) -> BTreeSet<ElementId> {
    let mut out = support(v);
    out.extend(nc_products(v));
    out
}

/// `φ: R → U`, multiplicative, with `eφ` an m-valuation.
#[derive(Clone, Debug)]
pub struct MSupervaluation {
    pub source: Arc<FiniteSemiring>,
    pub target: MonoidRef,
    map: Vec<ElementId>,
}

impl MSupervaluation {
    pub fn new(source: Arc<FiniteSemiring>, target: MonoidRef, map: Vec<ElementId>) -> Result<Self, ValuationError> {
        if map.len() != source.size() || map.iter().any(|x| x.0 >= target.size()) {
            return Err(ValuationError::Shape);
        }
        if map[source.zero().0] != target.zero() || map[source.one().0] != target.one() {
            return Err(ValuationError::UnitMismatch);
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y).0] != target.mul(map[x.0], map[y.0]) {
                    return Err(ValuationError::NotMultiplicative(
                        source.element_name(x).into(),
                        source.element_name(y).into(),
                    ));
                }
            }
        }
        let phi = MSupervaluation { source, target, map };
        phi.covered()?;
        Ok(phi)
    }

    /// The identity of a supertropical semiring, viewed on itself.
    pub fn identity(u: &MonoidRef) -> Result<Self, ValuationError> {
        let r = FiniteSemiring::from_supertropical(u).map_err(|_| ValuationError::TargetNotSemiring)?;
        Self::new(Arc::new(r), u.clone(), u.elements().collect())
    }

    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a.0]
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    pub fn image(&self) -> BTreeSet<ElementId> {
        self.map.iter().copied().collect()
    }

    /// `α ∘ φ`.
    pub fn then(&self, alpha: &Transmission) -> Result<Self, ValuationError> {
        if **alpha.source() != *self.target {
            return Err(ValuationError::Shape);
        }
        let map = self.map.iter().map(|&x| alpha.apply(x)).collect();
        Self::new(self.source.clone(), alpha.target().clone(), map)
    }

    /// `φ(R) ∪ eφ(R) = U`.
    pub fn is_surjective(&self) -> bool {
        let mut hit = self.image();
        hit.extend(self.map.iter().map(|&x| self.target.ghost(x)));
        hit.len() == self.target.size()
    }

    pub fn is_tangibly_surjective(&self) -> bool {
        let img = self.image();
        self.target.tangibles().iter().all(|t| img.contains(t))
    }

    /// Every value is tangible or zero.
    pub fn is_tangible(&self) -> bool {
        self.map.iter().all(|&x| self.target.is_tangible_or_zero(x))
    }

    /// The target is a semiring.
    pub fn is_supervaluation(&self) -> bool {
        self.target.is_semiring()
    }

    /// `v = eφ` in the coordinates of the target's ghost semiring.
    pub fn covered(&self) -> Result<MValuation, ValuationError> {
        let (m, _) = self.target.ghost_semiring();
        let map = self
            .map
            .iter()
            .map(|&x| ElementId(self.target.rank(self.target.ghost(x)).expect("ghost")))
            .collect();
        MValuation::new(self.source.clone(), Arc::new(m), map)
    }

    /// `ψ(R) ∩ M` in the target's own coordinates.
    pub fn ghost_values(&self) -> BTreeSet<ElementId> {
        self.map.iter().copied().filter(|&x| self.target.in_ghost_ideal(x)).collect()
    }
}

/// The order embedding `eψ(R) → M` with `ι(eψ(a)) = v(a)`.
pub fn ghost_coordinates(
    psi: &MSupervaluation,
    v: &MValuation,
) -> Result<BTreeMap<ElementId, ElementId>, ValuationError> {
    if psi.source.size() != v.source.size() {
        return Err(ValuationError::NotCovering);
    }
    let u = &psi.target;
    let mut iota: BTreeMap<ElementId, ElementId> = BTreeMap::new();
    for a in psi.source.elements() {
        let g = u.ghost(psi.apply(a));
        if *iota.entry(g).or_insert(v.apply(a)) != v.apply(a) {
            return Err(ValuationError::NotCovering);
        }
    }
    let pairs: Vec<(ElementId, ElementId)> = iota.iter().map(|(&g, &m)| (g, m)).collect();
    for &(g1, m1) in &pairs {
        for &(g2, m2) in &pairs {
            if u.cmp_ghosts(g1, g2) != v.target.rank(m1).cmp(&v.target.rank(m2)) {
                return Err(ValuationError::NotCovering);
            }
        }
    }
    Ok(iota)
}

/// `G(ψ)` expressed inside the target of `v`.
pub fn ghost_value_set(psi: &MSupervaluation, v: &MValuation) -> Result<BTreeSet<ElementId>, ValuationError> {
    let iota = ghost_coordinates(psi, v)?;
    Ok(psi.ghost_values().into_iter().map(|g| iota[&g]).collect())
}

/// Whether `a` is an ideal of the bipotent semiring `m`.
pub fn is_ghost_ideal(m: &OrderedGhostSemiring, a: &BTreeSet<ElementId>) -> bool {
    a.contains(&m.zero()) && a.iter().all(|&x| m.as_monoid().elements().all(|y| a.contains(&m.mul(x, y))))
}

/// Every ideal of `m` inside `bound`, smallest first.
pub fn ideals_within(m: &OrderedGhostSemiring, bound: &BTreeSet<ElementId>) -> Vec<BTreeSet<ElementId>> {
    let items: Vec<ElementId> = bound.iter().copied().collect();
    let mut out: Vec<BTreeSet<ElementId>> =
        subsets(&items).into_iter().filter(|a| is_ghost_ideal(m, a)).collect();
    out.sort_by_key(|a| (a.len(), a.iter().copied().collect::<Vec<_>>()));
    out
}

/// `φ̃: R → Ũ(N)` with `N = φ(R)`.
#[derive(Clone, Debug)]
pub struct TangibleLift {
    pub base: MSupervaluation,
    pub lift: MSupervaluation,
    pub unfolding: Unfolding,
}

pub fn tangible_lift(phi: &MSupervaluation) -> Result<TangibleLift, ValuationError> {
    let u = &phi.target;
    if let Some(t) = u.tangibles().into_iter().find(|t| !phi.image().contains(t)) {
        return Err(ValuationError::NotTangiblySurjective(u.element_name(t).into()));
    }
    let unfolding = unfold(u, &phi.image())?;
    let map = phi.map.iter().map(|&x| unfolding.lift(x).expect("value lies in N")).collect();
    let lift = MSupervaluation::new(phi.source.clone(), unfolding.monoid.clone(), map)?;
    Ok(TangibleLift { base: phi.clone(), lift, unfolding })
}

impl TangibleLift {
    /// The relation `E_𝔞` on `Ũ`, for an ideal `𝔞 ⊆ G(φ)` given in the
    /// coordinates of `φ`'s own ghost semiring.
    pub fn relation_outside(&self, ideal: &BTreeSet<ElementId>) -> Result<Partition, ValuationError> {
        let u = &self.base.target;
        let (m, embed) = u.ghost_semiring();
        if !is_ghost_ideal(&m, ideal) {
            return Err(ValuationError::NotAnIdeal);
        }
        let g = self.base.ghost_values();
        let mut a: BTreeSet<ElementId> = self.unfolding.monoid.ghost_ideal();
        for &i in ideal {
            let x = embed[i.0];
            if !g.contains(&x) {
                return Err(ValuationError::NotContainedInG);
            }
            a.insert(self.unfolding.lift(x).expect("ghost values lie in N"));
        }
        Ok(compression_partition(&self.unfolding.monoid, &a)?)
    }

    /// `π_F ∘ φ̃` for an MFCE-relation `F` on `Ũ`.
    pub fn through(&self, f: &Partition, name: &str) -> Result<MSupervaluation, ValuationError> {
        let q = quotient_named(&self.unfolding.monoid, f, name)?;
        self.lift.then(&q.projection)
    }

    /// `G(φ)` in the coordinates of `φ`'s ghost semiring.
    pub fn base_ghost_value_set(&self) -> BTreeSet<ElementId> {
        let u = &self.base.target;
        self.base.ghost_values().into_iter().map(|g| ElementId(u.rank(g).expect("ghost"))).collect()
    }
}

/// The tangible lift of `φ` outside `𝔞`, with its relation on `Ũ`.
#[derive(Clone, Debug)]
pub struct PartialLift {
    pub ideal: BTreeSet<ElementId>,
    pub relation: Partition,
    pub psi: MSupervaluation,
}

pub fn partial_tangible_lift(tl: &TangibleLift, ideal: &BTreeSet<ElementId>) -> Result<PartialLift, ValuationError> {
    let relation = tl.relation_outside(ideal)?;
    let name = format!("{}~{}", tl.base.target.name(), ideal.len());
    let psi = tl.through(&relation, &name)?;
    Ok(PartialLift { ideal: ideal.clone(), relation, psi })
}

/// One partial lift per ideal `𝔞 ⊆ G(φ)`, smallest ideal first.
pub fn interval_bijection(phi: &MSupervaluation) -> Result<(TangibleLift, Vec<PartialLift>), ValuationError> {
    if !phi.is_surjective() {
        return Err(ValuationError::NotSurjective);
    }
    let tl = tangible_lift(phi)?;
    let (m, _) = phi.target.ghost_semiring();
    let lifts = ideals_within(&m, &tl.base_ghost_value_set())
        .iter()
        .map(|a| partial_tangible_lift(&tl, a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((tl, lifts))
}

/// Every MFCE-relation `F` on `Ũ` with `π_F ∘ φ̃ ≥ φ`, by exhaustive search.
pub fn interval_oracle(tl: &TangibleLift) -> Result<Vec<Partition>, ValuationError> {
    let mut out = Vec::new();
    for f in enumerate_mfce(&tl.unfolding.monoid)? {
        let psi = tl.through(&f, "candidate")?;
        if dominates(&psi, &tl.base, usize::MAX)?.is_some() {
            out.push(f);
        }
    }
    Ok(out)
}

/// A transmission `α` with `ψ = α ∘ φ`, i.e. a witness that `φ` dominates `ψ`.
pub fn dominates(
    phi: &MSupervaluation,
    psi: &MSupervaluation,
    cap: usize,
) -> Result<Option<Transmission>, ValuationError> {
    let (a, b) = (&phi.target, &psi.target);
    let mut fixed: Vec<Option<ElementId>> = vec![None; a.size()];
    for r in phi.source.elements() {
        for (x, y) in [(phi.apply(r), psi.apply(r)), (a.ghost(phi.apply(r)), b.ghost(psi.apply(r)))] {
            match fixed[x.0] {
                Some(old) if old != y => return Ok(None),
                _ => fixed[x.0] = Some(y),
            }
        }
    }
    if fixed.iter().any(Option::is_none) && a.size().max(b.size()) > cap {
        return Err(ValuationError::TargetsTooLarge(a.size().max(b.size())));
    }
    Ok(enumerate_transmissions(a, b, &fixed).into_iter().next())
}

/// `φ̂`, the tangible lift outside `v(𝔮')`.
#[derive(Clone, Debug)]
pub struct AlmostTangibleLift {
    pub tangible: TangibleLift,
    pub partial: PartialLift,
    /// `Y(v)` inside `R`.
    pub nc_products: BTreeSet<ElementId>,
}

pub fn almost_tangible_lift(phi: &MSupervaluation) -> Result<AlmostTangibleLift, ValuationError> {
    if !phi.is_supervaluation() {
        return Err(ValuationError::TargetNotSemiring);
    }
    let v = phi.covered()?;
    let ideal: BTreeSet<ElementId> = extended_support(&v).into_iter().map(|a| v.apply(a)).collect();
    let tangible = tangible_lift(phi)?;
    let partial = partial_tangible_lift(&tangible, &ideal)?;
    Ok(AlmostTangibleLift { tangible, partial, nc_products: nc_products(&v) })
}

impl AlmostTangibleLift {
    /// Whether `E_{v(𝔮')}` is the relation of the reflection of `Ũ`.
    pub fn matches_reflection(&self) -> bool {
        let ut = &self.tangible.unfolding.monoid;
        compression_of_generated(ut, &ut.tangible_nc_products()) == self.partial.relation
    }
}
