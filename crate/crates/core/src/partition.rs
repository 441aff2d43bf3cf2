//! Partitions of an element set, stored in canonical restricted-growth form.

use std::collections::BTreeSet;

use crate::monoid::ElementId;

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

/// An equivalence relation on `{0, …, n-1}`. Class indices are numbered by
/// first occurrence, so equal relations have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { class: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Partition { class: vec![0; n] }
    }

    /// Canonicalizes an arbitrary labelling.
    pub fn from_labels<T: Ord + Clone>(labels: &[T]) -> Self {
        let mut seen: Vec<(T, usize)> = Vec::new();
        let mut class = Vec::with_capacity(labels.len());
        for l in labels {
            let id = match seen.iter().find(|(k, _)| k == l) {
                Some(&(_, id)) => id,
                None => {
                    seen.push((l.clone(), seen.len()));
                    seen.len() - 1
                }
            };
            class.push(id);
        }
        Partition { class }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (ElementId, ElementId)>) -> Self {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            uf.union(a.0, b.0);
        }
        uf.into_partition()
    }

    /// Builds a partition from listed classes; unlisted elements are singletons.
    /// Returns `None` when the classes overlap or mention elements `≥ n`.
    pub fn from_classes(n: usize, classes: &[Vec<ElementId>]) -> Option<Self> {
        let mut seen = vec![false; n];
        let mut uf = UnionFind::new(n);
        for c in classes {
            for x in c {
                if x.0 >= n || seen[x.0] {
                    return None;
                }
                seen[x.0] = true;
            }
            for w in c.windows(2) {
                uf.union(w[0].0, w[1].0);
            }
        }
        Some(uf.into_partition())
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    pub fn class_of(&self, x: ElementId) -> usize {
        self.class[x.0]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class
    }

    pub fn num_classes(&self) -> usize {
        self.class.iter().max().map_or(0, |m| m + 1)
    }

    pub fn same(&self, x: ElementId, y: ElementId) -> bool {
        self.class[x.0] == self.class[y.0]
    }

    /// Classes ordered by least member, members ascending.
    pub fn classes(&self) -> Vec<Vec<ElementId>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class.iter().enumerate() {
            out[c].push(ElementId(x));
        }
        out
    }

    pub fn members(&self, x: ElementId) -> Vec<ElementId> {
        let c = self.class[x.0];
        (0..self.len()).filter(|&y| self.class[y] == c).map(ElementId).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes() == self.len()
    }

    /// `self ⊆ other` as relations.
    pub fn is_finer(&self, other: &Partition) -> bool {
        assert_eq!(self.len(), other.len());
        let mut image = vec![usize::MAX; self.num_classes()];
        for (x, &c) in self.class.iter().enumerate() {
            let o = other.class[x];
            if image[c] == usize::MAX {
                image[c] = o;
            } else if image[c] != o {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len());
        let labels: Vec<(usize, usize)> =
            self.class.iter().zip(&other.class).map(|(&a, &b)| (a, b)).collect();
        Partition::from_labels(&labels)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len());
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.num_classes()];
            for (x, &c) in p.class.iter().enumerate() {
                if first[c] == usize::MAX {
                    first[c] = x;
                } else {
                    uf.union(first[c], x);
                }
            }
        }
        uf.into_partition()
    }

    /// Pairs `x < y` in the same class.
    pub fn pairs(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if self.class[x] == self.class[y] {
                    out.push((ElementId(x), ElementId(y)));
                }
            }
        }
        out
    }

    /// The set of pairs, useful for subset reasoning in tests.
    pub fn pair_set(&self) -> BTreeSet<(ElementId, ElementId)> {
        self.pairs().into_iter().collect()
    }
}
