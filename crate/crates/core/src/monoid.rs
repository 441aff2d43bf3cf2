//! Finite supertropical monoids given by multiplication tables.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on the number of elements accepted by the validator.
pub const DEFAULT_SIZE_CAP: usize = 64;

/// Dense index of an element inside one monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The three kinds of elements: zero, tangible, nonzero ghost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Zero,
    Tangible,
    Ghost,
}

/// Shared handle to a validated monoid.
pub type MonoidRef = Arc<SupertropicalMonoid>;

/// Unvalidated description of a monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSpec {
    pub name: String,
    pub names: Vec<String>,
    /// Row-major `n × n` products.
    pub table: Vec<ElementId>,
    pub zero: ElementId,
    pub one: ElementId,
    pub e: ElementId,
    /// The ghost ideal `eU`, ascending.
    pub ghost_order: Vec<ElementId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("malformed monoid description: {0}")]
    Malformed(String),
    #[error("monoid has {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("not commutative: {x}·{y} ≠ {y}·{x}")]
    NonCommutative { x: String, y: String },
    #[error("unit fails: 1·{x} ≠ {x}")]
    BadUnit { x: String },
    #[error("zero not absorbing: 0·{x} ≠ 0")]
    BadZero { x: String },
    #[error("not associative: ({x}·{y})·{z} ≠ {x}·({y}·{z})")]
    NonAssociative { x: String, y: String, z: String },
    #[error("e·e ≠ e")]
    ENotIdempotent,
    #[error("e·{x} = 0 for nonzero {x}")]
    GhostKillsTangible { x: String },
    #[error("ghost order does not list the ghost ideal eU exactly: {0}")]
    GhostNotClosed(String),
    #[error("order incompatible with multiplication: {a} ≤ {b} but {a}·{c} > {b}·{c}")]
    OrderIncompatible { a: String, b: String, c: String },
    #[error("zero is not the bottom of the ghost order")]
    ZeroNotBottom,
    #[error("{0} is not in the ghost ideal")]
    NotGhost(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
}

/// A validated finite supertropical monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupertropicalMonoid {
    name: String,
    names: Vec<String>,
    table: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
    e: ElementId,
    ghost_order: Vec<ElementId>,
    rank: Vec<Option<usize>>,
}

/// Validates a raw description with the default size cap.
pub fn validate_monoid(spec: MonoidSpec) -> Result<SupertropicalMonoid, MonoidError> {
    validate_monoid_with_cap(spec, DEFAULT_SIZE_CAP)
}

/// Validates a raw description, rejecting monoids larger than `cap`.
pub fn validate_monoid_with_cap(
    spec: MonoidSpec,
    cap: usize,
) -> Result<SupertropicalMonoid, MonoidError> {
    let n = spec.names.len();
    if n == 0 {
        return Err(MonoidError::Malformed("no elements".into()));
    }
    if n > cap {
        return Err(MonoidError::TooLarge { size: n, cap });
    }
    if spec.table.len() != n * n {
        return Err(MonoidError::Malformed(format!(
            "table has {} entries, expected {}",
            spec.table.len(),
            n * n
        )));
    }
    let mut seen = BTreeSet::new();
    for name in &spec.names {
        if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
            return Err(MonoidError::Malformed(format!("bad element name {name:?}")));
        }
        if !seen.insert(name.as_str()) {
            return Err(MonoidError::Malformed(format!("duplicate element name {name}")));
        }
    }
    let in_range = |x: ElementId| x.0 < n;
    if !spec.table.iter().all(|&x| in_range(x))
        || !in_range(spec.zero)
        || !in_range(spec.one)
        || !in_range(spec.e)
        || !spec.ghost_order.iter().all(|&x| in_range(x))
    {
        return Err(MonoidError::Malformed("element id out of range".into()));
    }
    let nm = |x: usize| spec.names[x].clone();
    let mul = |x: usize, y: usize| spec.table[x * n + y].0;
    for x in 0..n {
        for y in x + 1..n {
            if mul(x, y) != mul(y, x) {
                return Err(MonoidError::NonCommutative { x: nm(x), y: nm(y) });
            }
        }
    }
    let (zero, one, e) = (spec.zero.0, spec.one.0, spec.e.0);
    for x in 0..n {
        if mul(one, x) != x {
            return Err(MonoidError::BadUnit { x: nm(x) });
        }
    }
    for x in 0..n {
        if mul(zero, x) != zero {
            return Err(MonoidError::BadZero { x: nm(x) });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = mul(x, y);
            for z in 0..n {
                if mul(xy, z) != mul(x, mul(y, z)) {
                    return Err(MonoidError::NonAssociative { x: nm(x), y: nm(y), z: nm(z) });
                }
            }
        }
    }
    if mul(e, e) != e {
        return Err(MonoidError::ENotIdempotent);
    }
    for x in 0..n {
        if x != zero && mul(e, x) == zero {
            return Err(MonoidError::GhostKillsTangible { x: nm(x) });
        }
    }
    let ideal: BTreeSet<usize> = (0..n).map(|x| mul(e, x)).collect();
    let mut rank = vec![None; n];
    for (i, g) in spec.ghost_order.iter().enumerate() {
        if rank[g.0].is_some() {
            return Err(MonoidError::GhostNotClosed(format!("{} listed twice", nm(g.0))));
        }
        if !ideal.contains(&g.0) {
            return Err(MonoidError::GhostNotClosed(format!("{} is not in eU", nm(g.0))));
        }
        rank[g.0] = Some(i);
    }
    if let Some(&missing) = ideal.iter().find(|&&g| rank[g].is_none()) {
        return Err(MonoidError::GhostNotClosed(format!("{} is missing", nm(missing))));
    }
    if rank[zero] != Some(0) {
        return Err(MonoidError::ZeroNotBottom);
    }
    let ghosts: Vec<usize> = spec.ghost_order.iter().map(|g| g.0).collect();
    for (i, &a) in ghosts.iter().enumerate() {
        for &b in &ghosts[i + 1..] {
            for &c in &ghosts {
                if rank[mul(a, c)] > rank[mul(b, c)] {
                    return Err(MonoidError::OrderIncompatible { a: nm(a), b: nm(b), c: nm(c) });
                }
            }
        }
    }
    Ok(SupertropicalMonoid {
        name: spec.name,
        names: spec.names,
        table: spec.table,
        zero: spec.zero,
        one: spec.one,
        e: spec.e,
        ghost_order: spec.ghost_order,
        rank,
    })
}

impl SupertropicalMonoid {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Same monoid under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.name = name.into();
        out
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

    pub fn lookup(&self, name: &str) -> Result<ElementId, MonoidError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(ElementId)
            .ok_or_else(|| MonoidError::UnknownElement(name.to_string()))
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn e(&self) -> ElementId {
        self.e
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.table[x.0 * self.size() + y.0]
    }

    pub fn mul3(&self, x: ElementId, y: ElementId, z: ElementId) -> ElementId {
        self.mul(self.mul(x, y), z)
    }

    /// The ghost map `x ↦ ex`.
    #[inline]
    pub fn ghost(&self, x: ElementId) -> ElementId {
        self.mul(self.e, x)
    }

    pub fn kind(&self, x: ElementId) -> Kind {
        if x == self.zero {
            Kind::Zero
        } else if self.ghost(x) == x {
            Kind::Ghost
        } else {
            Kind::Tangible
        }
    }

    pub fn is_tangible(&self, x: ElementId) -> bool {
        self.kind(x) == Kind::Tangible
    }

    /// Nonzero ghost.
    pub fn is_ghost(&self, x: ElementId) -> bool {
        self.kind(x) == Kind::Ghost
    }

    /// Member of `eU`, zero included.
    pub fn in_ghost_ideal(&self, x: ElementId) -> bool {
        self.rank[x.0].is_some()
    }

    /// Member of `𝒯(U) ∪ {0}`.
    pub fn is_tangible_or_zero(&self, x: ElementId) -> bool {
        x == self.zero || self.is_tangible(x)
    }

    pub fn tangibles(&self) -> Vec<ElementId> {
        self.elements().filter(|&x| self.is_tangible(x)).collect()
    }

    /// The ghost ideal `eU` in ascending order.
    pub fn ghost_order(&self) -> &[ElementId] {
        &self.ghost_order
    }

    /// Position of a ghost in the order.
    pub fn rank(&self, a: ElementId) -> Option<usize> {
        self.rank[a.0]
    }

    /// Compares two members of `eU`.
    pub fn cmp_ghosts(&self, a: ElementId, b: ElementId) -> Ordering {
        let ra = self.rank[a.0].expect("ghost expected");
        let rb = self.rank[b.0].expect("ghost expected");
        ra.cmp(&rb)
    }

    /// Compares the ghosts `ex` and `ey`.
    pub fn cmp_nu(&self, x: ElementId, y: ElementId) -> Ordering {
        self.cmp_ghosts(self.ghost(x), self.ghost(y))
    }

    pub fn fiber(&self, c: ElementId) -> Result<Vec<ElementId>, MonoidError> {
        if !self.in_ghost_ideal(c) {
            return Err(MonoidError::NotGhost(self.element_name(c).to_string()));
        }
        Ok(self.elements().filter(|&x| self.ghost(x) == c).collect())
    }

    /// Bipotent addition induced by the ghost order.
    pub fn add(&self, x: ElementId, y: ElementId) -> ElementId {
        match self.cmp_nu(x, y) {
            Ordering::Greater => x,
            Ordering::Less => y,
            Ordering::Equal => self.ghost(x),
        }
    }

    /// First triple `(z, x, y)` with `z(x+y) ≠ zx+zy`.
    pub fn distributivity_witness(&self) -> Option<(ElementId, ElementId, ElementId)> {
        for z in self.elements() {
            for x in self.elements() {
                for y in (0..=x.0).map(ElementId) {
                    let lhs = self.mul(z, self.add(x, y));
                    let rhs = self.add(self.mul(z, x), self.mul(z, y));
                    if lhs != rhs {
                        return Some((z, x, y));
                    }
                }
            }
        }
        None
    }

    pub fn is_semiring(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    pub fn is_unfolded(&self) -> bool {
        let t: Vec<ElementId> = self.tangibles();
        t.iter()
            .all(|&x| t.iter().all(|&y| self.is_tangible_or_zero(self.mul(x, y))))
    }

    /// Tangible `x = yz` admitting `y' ∈ eU` with `y' < ey` and `y'z = eyz ≠ 0`.
    pub fn tangible_nc_products(&self) -> BTreeSet<ElementId> {
        let mut out = BTreeSet::new();
        for y in self.elements() {
            let ey = self.ghost(y);
            let lower: Vec<ElementId> = self
                .ghost_order
                .iter()
                .copied()
                .take_while(|&g| g != ey)
                .collect();
            for z in self.elements() {
                let x = self.mul(y, z);
                if !self.is_tangible(x) {
                    continue;
                }
                let eyz = self.ghost(x);
                if lower.iter().any(|&yp| self.mul(yp, z) == eyz) {
                    out.insert(x);
                }
            }
        }
        out
    }

    /// Whether `z ∈ Ux`.
    pub fn divides(&self, x: ElementId, z: ElementId) -> bool {
        self.elements().any(|u| self.mul(u, x) == z)
    }

    /// The set `[z:x] = {u : ux = z}`.
    pub fn quotient_set(&self, z: ElementId, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&u| self.mul(u, x) == z).collect()
    }

    /// The principal ideal `Ux`.
    pub fn multiples(&self, x: ElementId) -> BTreeSet<ElementId> {
        self.elements().map(|u| self.mul(u, x)).collect()
    }

    /// `U·A`.
    pub fn ideal_generated(&self, a: &BTreeSet<ElementId>) -> BTreeSet<ElementId> {
        let mut out = BTreeSet::new();
        for &x in a {
            for u in self.elements() {
                out.insert(self.mul(u, x));
            }
        }
        out
    }

    pub fn is_ideal(&self, a: &BTreeSet<ElementId>) -> bool {
        a.contains(&self.zero)
            && a.iter().all(|&x| self.elements().all(|u| a.contains(&self.mul(u, x))))
    }

    /// The ghost ideal as a set.
    pub fn ghost_ideal(&self) -> BTreeSet<ElementId> {
        self.ghost_order.iter().copied().collect()
    }

    pub fn to_spec(&self) -> MonoidSpec {
        MonoidSpec {
            name: self.name.clone(),
            names: self.names.clone(),
            table: self.table.clone(),
            zero: self.zero,
            one: self.one,
            e: self.e,
            ghost_order: self.ghost_order.clone(),
        }
    }

    pub fn into_ref(self) -> MonoidRef {
        Arc::new(self)
    }

    /// Formats a set of elements as `{a b c}`.
    pub fn format_set<'a>(&self, xs: impl IntoIterator<Item = &'a ElementId>) -> String {
        let names: Vec<&str> = xs.into_iter().map(|&x| self.element_name(x)).collect();
        format!("{{{}}}", names.join(" "))
    }

    /// Multiplication table as aligned text.
    pub fn table_text(&self) -> String {
        let w = self.names.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        out.push_str(&format!("{:>w$} |", "·"));
        for y in self.elements() {
            out.push_str(&format!(" {:>w$}", self.element_name(y)));
        }
        out.push('\n');
        for x in self.elements() {
            out.push_str(&format!("{:>w$} |", self.element_name(x)));
            for y in self.elements() {
                out.push_str(&format!(" {:>w$}", self.element_name(self.mul(x, y))));
            }
            out.push('\n');
        }
        out
    }
}

/// Builds a monoid spec from element names and a product function on names.
pub fn spec_from_fn(
    name: &str,
    names: &[&str],
    zero: &str,
    one: &str,
    e: &str,
    ghost_order: &[&str],
    product: impl Fn(&str, &str) -> String,
) -> Result<MonoidSpec, MonoidError> {
    let find = |s: &str| {
        names
            .iter()
            .position(|n| *n == s)
            .map(ElementId)
            .ok_or_else(|| MonoidError::UnknownElement(s.to_string()))
    };
    let mut table = Vec::with_capacity(names.len() * names.len());
    for a in names {
        for b in names {
            table.push(find(&product(a, b))?);
        }
    }
    Ok(MonoidSpec {
        name: name.to_string(),
        names: names.iter().map(|s| s.to_string()).collect(),
        table,
        zero: find(zero)?,
        one: find(one)?,
        e: find(e)?,
        ghost_order: ghost_order.iter().map(|g| find(g)).collect::<Result<_, _>>()?,
    })
}
