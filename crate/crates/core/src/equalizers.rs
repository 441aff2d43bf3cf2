//! Labelled paths and the fiberwise equalizers they compute.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::monoid::{ElementId, SupertropicalMonoid};
use crate::partition::{Partition, UnionFind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EqualizerError {
    #[error("set spans more than one fiber")]
    NotSingleFiber,
    #[error("path has no labels")]
    EmptyPath,
    #[error("nodes disagree at step {0}")]
    NodeMismatch(usize),
    #[error("label member {0} is not in the set")]
    LabelNotInS(String),
    #[error("label ({0}, {1}) joins different fibers")]
    FiberMismatch(String, String),
}

/// One step `(s, u, t)` connecting `us` to `ut`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub s: ElementId,
    pub u: ElementId,
    pub t: ElementId,
}

/// A sequence of labels; nodes are derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SPath {
    pub labels: Vec<Label>,
}

impl SPath {
    pub fn new(labels: Vec<Label>) -> Self {
        SPath { labels }
    }

    /// The loop `(s, 1, s)`.
    pub fn trivial(u: &SupertropicalMonoid, s: ElementId) -> Self {
        SPath { labels: vec![Label { s, u: u.one(), t: s }] }
    }

    /// Number of labels.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn nodes(&self, u: &SupertropicalMonoid) -> Vec<ElementId> {
        let mut out: Vec<ElementId> = self.labels.iter().map(|l| u.mul(l.u, l.s)).collect();
        if let Some(l) = self.labels.last() {
            out.push(u.mul(l.u, l.t));
        }
        out
    }

    pub fn start(&self, u: &SupertropicalMonoid) -> Option<ElementId> {
        self.labels.first().map(|l| u.mul(l.u, l.s))
    }

    pub fn end(&self, u: &SupertropicalMonoid) -> Option<ElementId> {
        self.labels.last().map(|l| u.mul(l.u, l.t))
    }

    pub fn invert(&self) -> SPath {
        SPath {
            labels: self.labels.iter().rev().map(|l| Label { s: l.t, u: l.u, t: l.s }).collect(),
        }
    }

    pub fn concat(&self, u: &SupertropicalMonoid, other: &SPath) -> Result<SPath, EqualizerError> {
        if self.end(u) != other.start(u) {
            return Err(EqualizerError::NodeMismatch(self.len()));
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().copied());
        Ok(SPath { labels })
    }

    /// Multiplies every middle component by `v`.
    pub fn scale(&self, u: &SupertropicalMonoid, v: ElementId) -> SPath {
        SPath {
            labels: self.labels.iter().map(|l| Label { s: l.s, u: u.mul(v, l.u), t: l.t }).collect(),
        }
    }
}

/// Checks an `S`-path.
pub fn validate_path(
    u: &SupertropicalMonoid,
    path: &SPath,
    set: &BTreeSet<ElementId>,
) -> Result<(), EqualizerError> {
    validate_family_path(u, path, std::slice::from_ref(set))
}

/// Checks a path whose every label lies in one member of the family.
pub fn validate_family_path(
    u: &SupertropicalMonoid,
    path: &SPath,
    family: &[BTreeSet<ElementId>],
) -> Result<(), EqualizerError> {
    if path.is_empty() {
        return Err(EqualizerError::EmptyPath);
    }
    for l in &path.labels {
        if !family.iter().any(|s| s.contains(&l.s) && s.contains(&l.t)) {
            let bad = if family.iter().any(|s| s.contains(&l.s)) { l.t } else { l.s };
            return Err(EqualizerError::LabelNotInS(u.element_name(bad).into()));
        }
        if u.ghost(l.s) != u.ghost(l.t) {
            return Err(EqualizerError::FiberMismatch(
                u.element_name(l.s).into(),
                u.element_name(l.t).into(),
            ));
        }
    }
    for (k, w) in path.labels.windows(2).enumerate() {
        if u.mul(w[0].u, w[0].t) != u.mul(w[1].u, w[1].s) {
            return Err(EqualizerError::NodeMismatch(k + 1));
        }
    }
    Ok(())
}

fn elementary_steps<'a>(
    u: &'a SupertropicalMonoid,
    family: &'a [BTreeSet<ElementId>],
) -> impl Iterator<Item = Label> + 'a {
    family.iter().flat_map(move |set| {
        set.iter().flat_map(move |&s| {
            set.iter()
                .filter(move |&&t| u.ghost(s) == u.ghost(t))
                .flat_map(move |&t| u.elements().map(move |v| Label { s, u: v, t }))
        })
    })
}

/// `Feq(S)`: the components of `US` under elementary steps.
pub fn feq(u: &SupertropicalMonoid, set: &BTreeSet<ElementId>) -> Partition {
    let mut uf = UnionFind::new(u.size());
    for &s in set {
        for &t in set.range(s..) {
            if u.ghost(s) == u.ghost(t) {
                for v in u.elements() {
                    uf.union(u.mul(v, s).0, u.mul(v, t).0);
                }
            }
        }
    }
    uf.into_partition()
}

/// `Eq(S)` for a set inside one fiber.
pub fn eq(u: &SupertropicalMonoid, set: &BTreeSet<ElementId>) -> Result<Partition, EqualizerError> {
    let fibers: BTreeSet<ElementId> = set.iter().map(|&x| u.ghost(x)).collect();
    if fibers.len() > 1 {
        return Err(EqualizerError::NotSingleFiber);
    }
    Ok(feq(u, set))
}

/// `Feq(𝔖)` as the join of the members' equalizers.
pub fn feq_family(u: &SupertropicalMonoid, family: &[BTreeSet<ElementId>]) -> Partition {
    let joined = family
        .iter()
        .fold(Partition::discrete(u.size()), |acc, s| acc.join(&feq(u, s)));
    debug_assert_eq!(joined, family_path_components(u, family));
    joined
}

/// Components under elementary steps of the whole family.
pub fn family_path_components(u: &SupertropicalMonoid, family: &[BTreeSet<ElementId>]) -> Partition {
    let mut uf = UnionFind::new(u.size());
    for l in elementary_steps(u, family) {
        uf.union(u.mul(l.u, l.s).0, u.mul(l.u, l.t).0);
    }
    uf.into_partition()
}

/// Breadth-first search for a path from `z` to `w`.
pub fn witness_path(
    u: &SupertropicalMonoid,
    set: &BTreeSet<ElementId>,
    z: ElementId,
    w: ElementId,
) -> Option<SPath> {
    family_witness_path(u, std::slice::from_ref(set), z, w)
}

pub fn family_witness_path(
    u: &SupertropicalMonoid,
    family: &[BTreeSet<ElementId>],
    z: ElementId,
    w: ElementId,
) -> Option<SPath> {
    let tree = PathTree::new(u, family, z);
    tree.path_to(u, w)
}

/// Breadth-first tree of elementary steps rooted at one node.
pub struct PathTree {
    root: ElementId,
    parent: Vec<Option<Label>>,
    reached: Vec<bool>,
    root_label: Option<Label>,
}

impl PathTree {
    pub fn new(u: &SupertropicalMonoid, family: &[BTreeSet<ElementId>], root: ElementId) -> Self {
        let n = u.size();
        let mut out_edges: Vec<Vec<Label>> = vec![Vec::new(); n];
        let mut root_label = None;
        for l in elementary_steps(u, family) {
            let from = u.mul(l.u, l.s);
            if from == root && root_label.is_none() {
                root_label = Some(Label { s: l.s, u: l.u, t: l.s });
            }
            out_edges[from.0].push(l);
        }
        let mut parent = vec![None; n];
        let mut reached = vec![false; n];
        if root_label.is_some() {
            reached[root.0] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(p) = queue.pop_front() {
                for &l in &out_edges[p.0] {
                    let q = u.mul(l.u, l.t);
                    if !reached[q.0] {
                        reached[q.0] = true;
                        parent[q.0] = Some(l);
                        queue.push_back(q);
                    }
                }
            }
        }
        PathTree { root, parent, reached, root_label }
    }

    pub fn path_to(&self, u: &SupertropicalMonoid, w: ElementId) -> Option<SPath> {
        if !self.reached[w.0] {
            return None;
        }
        if w == self.root {
            return self.root_label.map(|l| SPath::new(vec![l]));
        }
        let mut labels = Vec::new();
        let mut cur = w;
        while cur != self.root {
            let l = self.parent[cur.0].expect("reached nodes have parents");
            labels.push(l);
            cur = u.mul(l.u, l.s);
        }
        labels.reverse();
        Some(SPath::new(labels))
    }
}

/// For every member `S_λ`, multiplier `v` and ghost `c`, the set `v(S_λ)_c`
/// lies in `𝒯`, lies in `𝒢`, or equals `{0}`.
pub fn is_ghost_separating_feq(u: &SupertropicalMonoid, family: &[BTreeSet<ElementId>]) -> bool {
    family.iter().all(|set| {
        u.ghost_order().iter().all(|&c| {
            let part: Vec<ElementId> = set.iter().copied().filter(|&s| u.ghost(s) == c).collect();
            u.elements().all(|v| {
                let prods: Vec<ElementId> = part.iter().map(|&s| u.mul(v, s)).collect();
                prods.iter().all(|&p| u.is_tangible(p))
                    || prods.iter().all(|&p| u.is_ghost(p))
                    || prods.iter().all(|&p| p == u.zero())
            })
        })
    })
}
