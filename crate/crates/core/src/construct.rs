//! Building blocks for the gluing construction `STR(N, M, ρ)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::monoid::{
    validate_monoid, ElementId, MonoidError, MonoidSpec, SupertropicalMonoid,
};

/// Commutative monoid with an absorbing zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidWithZero {
    names: Vec<String>,
    table: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
}

impl MonoidWithZero {
    pub fn new(
        names: Vec<String>,
        table: Vec<ElementId>,
        zero: ElementId,
        one: ElementId,
    ) -> Result<Self, MonoidError> {
        let n = names.len();
        if n == 0 || table.len() != n * n || table.iter().any(|x| x.0 >= n) || zero.0 >= n || one.0 >= n
        {
            return Err(MonoidError::Malformed("bad monoid-with-zero table".into()));
        }
        let m = MonoidWithZero { names, table, zero, one };
        let nm = |x: ElementId| m.names[x.0].clone();
        for x in m.elements() {
            if m.mul(m.one, x) != x {
                return Err(MonoidError::BadUnit { x: nm(x) });
            }
            if m.mul(m.zero, x) != m.zero {
                return Err(MonoidError::BadZero { x: nm(x) });
            }
            for y in m.elements() {
                if m.mul(x, y) != m.mul(y, x) {
                    return Err(MonoidError::NonCommutative { x: nm(x), y: nm(y) });
                }
                for z in m.elements() {
                    if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                        return Err(MonoidError::NonAssociative { x: nm(x), y: nm(y), z: nm(z) });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size()).map(ElementId)
    }

    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.table[x.0 * self.size() + y.0]
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A totally ordered commutative monoid with absorbing bottom 0, i.e. a
/// bipotent semiring; stored as a monoid whose every element is a ghost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGhostSemiring {
    monoid: SupertropicalMonoid,
}

impl OrderedGhostSemiring {
    /// `order` lists every element ascending and must start at `zero`.
    pub fn new(
        name: &str,
        names: Vec<String>,
        table: Vec<ElementId>,
        zero: ElementId,
        one: ElementId,
        order: Vec<ElementId>,
    ) -> Result<Self, MonoidError> {
        let spec = MonoidSpec { name: name.into(), names, table, zero, one, e: one, ghost_order: order };
        Ok(OrderedGhostSemiring { monoid: validate_monoid(spec)? })
    }

    pub fn from_monoid(monoid: SupertropicalMonoid) -> Result<Self, MonoidError> {
        if monoid.e() != monoid.one() {
            return Err(MonoidError::Malformed("ghost semiring needs e = 1".into()));
        }
        Ok(OrderedGhostSemiring { monoid })
    }

    pub fn as_monoid(&self) -> &SupertropicalMonoid {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.monoid.mul(a, b)
    }

    pub fn zero(&self) -> ElementId {
        self.monoid.zero()
    }

    pub fn one(&self) -> ElementId {
        self.monoid.one()
    }

    pub fn order(&self) -> &[ElementId] {
        self.monoid.ghost_order()
    }

    pub fn rank(&self, a: ElementId) -> usize {
        self.monoid.rank(a).expect("every element is ranked")
    }

    pub fn name_of(&self, a: ElementId) -> &str {
        self.monoid.element_name(a)
    }

    /// Addition is the maximum.
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        if self.rank(a) >= self.rank(b) {
            a
        } else {
            b
        }
    }

    /// Whether `ab = ac` forces `b = c` for nonzero `a, b, c`.
    pub fn is_cancellative(&self) -> bool {
        let z = self.zero();
        let nz: Vec<ElementId> = self.monoid.elements().filter(|&x| x != z).collect();
        nz.iter().all(|&a| {
            nz.iter().all(|&b| nz.iter().all(|&c| b == c || self.mul(a, b) != self.mul(a, c)))
        })
    }
}

impl SupertropicalMonoid {
    /// The ghost ideal `M = eU` as a standalone bipotent semiring. Element `i`
    /// of the result is the `i`-th ghost in ascending order; the returned
    /// vector embeds it back into `U`.
    pub fn ghost_semiring(&self) -> (OrderedGhostSemiring, Vec<ElementId>) {
        let embed: Vec<ElementId> = self.ghost_order().to_vec();
        let k = embed.len();
        let pos = |x: ElementId| ElementId(self.rank(x).expect("ghost"));
        let mut table = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                table.push(pos(self.mul(a, b)));
            }
        }
        let names = embed.iter().map(|&a| self.element_name(a).to_string()).collect();
        let m = OrderedGhostSemiring::new(
            &format!("{}.ghosts", self.name()),
            names,
            table,
            pos(self.zero()),
            pos(self.e()),
            (0..k).map(ElementId).collect(),
        )
        .expect("ghost ideal of a valid monoid is a bipotent semiring");
        (m, embed)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("rho is not multiplicative at ({x}, {y})")]
    RhoNotMultiplicative { x: String, y: String },
    #[error("rho does not send 1 to 1 or 0 to 0")]
    RhoUnitMismatch,
    #[error("rho sends nonzero {x} to 0")]
    RhoKernelTooBig { x: String },
    #[error("rho table has the wrong length")]
    RhoShape,
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// Output of the gluing construction together with the two embeddings.
#[derive(Clone, Debug)]
pub struct StrConstruction {
    pub monoid: SupertropicalMonoid,
    /// Image of each element of `N`.
    pub n_embed: Vec<ElementId>,
    /// Image of each element of `M`.
    pub m_embed: Vec<ElementId>,
}

/// Glues `N` and `M` along their zeros with the product `x·y = ρ(x)y` across.
pub fn str_construct(
    name: &str,
    n: &MonoidWithZero,
    m: &OrderedGhostSemiring,
    rho: &[ElementId],
) -> Result<StrConstruction, ConstructError> {
    if rho.len() != n.size() || rho.iter().any(|r| r.0 >= m.size()) {
        return Err(ConstructError::RhoShape);
    }
    let nn = |x: ElementId| n.names()[x.0].clone();
    if rho[n.one().0] != m.one() || rho[n.zero().0] != m.zero() {
        return Err(ConstructError::RhoUnitMismatch);
    }
    for x in n.elements() {
        if x != n.zero() && rho[x.0] == m.zero() {
            return Err(ConstructError::RhoKernelTooBig { x: nn(x) });
        }
        for y in n.elements() {
            if rho[n.mul(x, y).0] != m.mul(rho[x.0], rho[y.0]) {
                return Err(ConstructError::RhoNotMultiplicative { x: nn(x), y: nn(y) });
            }
        }
    }

    let mut names = vec![m.name_of(m.zero()).to_string()];
    let m_names: BTreeSet<String> =
        m.as_monoid().element_names().iter().cloned().collect();
    let mut n_embed = vec![ElementId(0); n.size()];
    let mut m_embed = vec![ElementId(0); m.size()];
    for x in n.elements().filter(|&x| x != n.zero()) {
        let mut label = nn(x);
        while m_names.contains(&label) || names.contains(&label) {
            label.push('~');
        }
        n_embed[x.0] = ElementId(names.len());
        names.push(label);
    }
    for a in m.as_monoid().elements().filter(|&a| a != m.zero()) {
        m_embed[a.0] = ElementId(names.len());
        names.push(m.name_of(a).to_string());
    }
    let size = names.len();
    // Side of each element of the glued monoid.
    enum Side {
        Zero,
        N(ElementId),
        M(ElementId),
    }
    let mut side: Vec<Side> = (0..size).map(|_| Side::Zero).collect();
    for x in n.elements().filter(|&x| x != n.zero()) {
        side[n_embed[x.0].0] = Side::N(x);
    }
    for a in m.as_monoid().elements().filter(|&a| a != m.zero()) {
        side[m_embed[a.0].0] = Side::M(a);
    }
    let mut table = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let p = match (&side[i], &side[j]) {
                (Side::Zero, _) | (_, Side::Zero) => ElementId(0),
                (Side::N(x), Side::N(y)) => n_embed[n.mul(*x, *y).0],
                (Side::N(x), Side::M(b)) | (Side::M(b), Side::N(x)) => {
                    m_embed[m.mul(rho[x.0], *b).0]
                }
                (Side::M(a), Side::M(b)) => m_embed[m.mul(*a, *b).0],
            };
            table.push(p);
        }
    }
    let spec = MonoidSpec {
        name: name.to_string(),
        names,
        table,
        zero: ElementId(0),
        one: n_embed[n.one().0],
        e: m_embed[m.one().0],
        ghost_order: m.order().iter().map(|&a| m_embed[a.0]).collect(),
    };
    let monoid = validate_monoid(spec)?;
    Ok(StrConstruction { monoid, n_embed, m_embed })
}
