//! Brute-force ground truth: partition enumeration, closures, exhaustive
//! searches over maps. Independent of the structural algorithms it checks.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::monoid::{ElementId, MonoidRef, SupertropicalMonoid};
use crate::partition::{Partition, UnionFind};
use crate::relations::{ghost_kernel, is_ghost_separating_direct, validate_mfce};
use crate::sections::IgSection;
use crate::transmission::Transmission;

/// Default bound on the size of sets whose partitions are listed in full.
pub const DEFAULT_PARTITION_CAP: usize = 7;
/// Default bound on the number of candidates an enumeration may visit.
pub const DEFAULT_CANDIDATE_CAP: u64 = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{size} elements exceed the enumeration cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("search space of {0} candidates exceeds the cap")]
    TooManyCandidates(u64),
    #[error("seed ({0}, {1}) joins different fibers")]
    FiberIncompatibleSeed(String, String),
}

/// Calls `f` with every restricted-growth string of length `k`.
pub fn for_each_rgs(k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(i: usize, k: usize, max: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i == k {
            f(buf);
            return;
        }
        for v in 0..=max + usize::from(i > 0) {
            buf.push(v);
            rec(i + 1, k, if i == 0 { 0 } else { max.max(v) }, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(k);
    if k == 0 {
        f(&buf);
    } else {
        rec(0, k, 0, &mut buf, &mut f);
    }
}

/// Enumerates every partition of `{0, …, n-1}` exactly once.
#[derive(Clone, Debug)]
pub struct PartitionEnumerator {
    n: usize,
}

impl PartitionEnumerator {
    pub fn new(n: usize, cap: usize) -> Result<Self, OracleError> {
        if n > cap {
            return Err(OracleError::TooLarge { size: n, cap });
        }
        Ok(PartitionEnumerator { n })
    }

    pub fn for_u(u: &SupertropicalMonoid) -> Result<Self, OracleError> {
        Self::new(u.size(), DEFAULT_PARTITION_CAP)
    }

    pub fn all(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for_each_rgs(self.n, |labels| out.push(Partition::from_labels(labels)));
        out
    }
}

fn bell(k: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![*row.last().unwrap()];
        for &r in &row {
            next.push(next.last().unwrap().saturating_add(r));
        }
        row = next;
    }
    row[0]
}

/// Every partition finer than `p`, refining each class independently.
pub fn refinements(p: &Partition, cap: u64) -> Result<Vec<Partition>, OracleError> {
    let classes = p.classes();
    let total = classes.iter().fold(1u64, |acc, c| acc.saturating_mul(bell(c.len())));
    if total > cap {
        return Err(OracleError::TooManyCandidates(total));
    }
    let mut per_class: Vec<Vec<Vec<usize>>> = Vec::new();
    for c in &classes {
        let mut options = Vec::new();
        for_each_rgs(c.len(), |l| options.push(l.to_vec()));
        per_class.push(options);
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut choice = vec![0usize; classes.len()];
    let mut labels = vec![(0usize, 0usize); p.len()];
    loop {
        for (ci, c) in classes.iter().enumerate() {
            for (pos, &x) in c.iter().enumerate() {
                labels[x.0] = (ci, per_class[ci][choice[ci]][pos]);
            }
        }
        out.push(Partition::from_labels(&labels));
        let mut i = 0;
        loop {
            if i == classes.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < per_class[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The finest MFCE-relation containing the seed pairs, by fixpoint iteration.
pub fn closure_mfce(
    u: &SupertropicalMonoid,
    seeds: &[(ElementId, ElementId)],
) -> Result<Partition, OracleError> {
    for &(x, y) in seeds {
        if u.ghost(x) != u.ghost(y) {
            return Err(OracleError::FiberIncompatibleSeed(
                u.element_name(x).into(),
                u.element_name(y).into(),
            ));
        }
    }
    let mut uf = UnionFind::new(u.size());
    for &(x, y) in seeds {
        uf.union(x.0, y.0);
    }
    loop {
        let mut changed = false;
        for x in u.elements() {
            for y in u.elements() {
                if x < y && uf.find(x.0) == uf.find(y.0) {
                    for z in u.elements() {
                        changed |= uf.union(u.mul(x, z).0, u.mul(y, z).0);
                    }
                }
            }
        }
        if !changed {
            return Ok(uf.into_partition());
        }
    }
}

/// All MFCE-relations, found among the refinements of `E(ν)`.
pub fn enumerate_mfce(u: &SupertropicalMonoid) -> Result<Vec<Partition>, OracleError> {
    enumerate_mfce_with_cap(u, DEFAULT_CANDIDATE_CAP)
}

pub fn enumerate_mfce_with_cap(
    u: &SupertropicalMonoid,
    cap: u64,
) -> Result<Vec<Partition>, OracleError> {
    Ok(refinements(&ghost_kernel(u), cap)?
        .into_iter()
        .filter(|p| validate_mfce(u, p))
        .collect())
}

/// All MFCE-relations, found by filtering every partition of `U`.
pub fn enumerate_mfce_exhaustive(
    u: &SupertropicalMonoid,
    cap: usize,
) -> Result<Vec<Partition>, OracleError> {
    Ok(PartitionEnumerator::new(u.size(), cap)?
        .all()
        .into_iter()
        .filter(|p| validate_mfce(u, p))
        .collect())
}

/// Outcome of a search for the finest qualifying relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finest {
    Unique(Partition),
    /// Several minimal qualifying relations.
    Ambiguous(Vec<Partition>),
    None,
}

/// The finest MFCE-relation satisfying `pred`, if unique.
pub fn finest_with(
    u: &SupertropicalMonoid,
    mut pred: impl FnMut(&Partition) -> bool,
) -> Result<Finest, OracleError> {
    let ok: Vec<Partition> = enumerate_mfce(u)?.into_iter().filter(|p| pred(p)).collect();
    let minimal: Vec<Partition> = ok
        .iter()
        .filter(|p| !ok.iter().any(|q| q != *p && q.is_finer(p)))
        .cloned()
        .collect();
    Ok(match minimal.len() {
        0 => Finest::None,
        1 => Finest::Unique(minimal.into_iter().next().unwrap()),
        _ => Finest::Ambiguous(minimal),
    })
}

/// The coarsest ghost-separating MFCE-relation inside `e`, if unique.
pub fn coarsest_ghost_separating_within(
    u: &SupertropicalMonoid,
    e: &Partition,
) -> Result<Option<Partition>, OracleError> {
    let inside: Vec<Partition> = refinements(e, DEFAULT_CANDIDATE_CAP)?
        .into_iter()
        .filter(|p| validate_mfce(u, p) && is_ghost_separating_direct(u, p))
        .collect();
    let maximal: Vec<&Partition> = inside
        .iter()
        .filter(|p| !inside.iter().any(|q| q != *p && p.is_finer(q)))
        .collect();
    Ok(if maximal.len() == 1 { Some(maximal[0].clone()) } else { None })
}

/// Every transmission `a → b` agreeing with `fixed` where it is set.
pub fn enumerate_transmissions(
    a: &MonoidRef,
    b: &MonoidRef,
    fixed: &[Option<ElementId>],
) -> Vec<Transmission> {
    let n = a.size();
    let mut assign: Vec<Option<ElementId>> = fixed.to_vec();
    assign.resize(n, None);
    for (x, y) in [(a.zero(), b.zero()), (a.one(), b.one()), (a.e(), b.e())] {
        match assign[x.0] {
            Some(v) if v != y => return Vec::new(),
            _ => assign[x.0] = Some(y),
        }
    }
    let consistent = |assign: &[Option<ElementId>]| {
        a.elements().all(|x| {
            a.elements().filter(|&y| y >= x).all(|y| {
                match (assign[x.0], assign[y.0], assign[a.mul(x, y).0]) {
                    (Some(fx), Some(fy), Some(fxy)) => b.mul(fx, fy) == fxy,
                    _ => true,
                }
            })
        })
    };
    let mut out = Vec::new();
    if !consistent(&assign) {
        return out;
    }
    let free: Vec<ElementId> = a.elements().filter(|x| assign[x.0].is_none()).collect();
    fn rec(
        i: usize,
        free: &[ElementId],
        assign: &mut Vec<Option<ElementId>>,
        a: &MonoidRef,
        b: &MonoidRef,
        consistent: &dyn Fn(&[Option<ElementId>]) -> bool,
        out: &mut Vec<Transmission>,
    ) {
        if i == free.len() {
            let map: Vec<ElementId> = assign.iter().map(|v| v.unwrap()).collect();
            if let Ok(t) = Transmission::new(a.clone(), b.clone(), map) {
                out.push(t);
            }
            return;
        }
        let x = free[i];
        let ghost_only = a.in_ghost_ideal(x);
        for y in b.elements() {
            if ghost_only && !b.in_ghost_ideal(y) {
                continue;
            }
            assign[x.0] = Some(y);
            if consistent(assign) {
                rec(i + 1, free, assign, a, b, consistent, out);
            }
        }
        assign[x.0] = None;
    }
    rec(0, &free, &mut assign, a, b, &consistent, &mut out);
    out
}

/// Every isomorphism `a → b`.
pub fn isomorphisms(a: &MonoidRef, b: &MonoidRef) -> Vec<Transmission> {
    if a.size() != b.size() {
        return Vec::new();
    }
    enumerate_transmissions(a, b, &[])
        .into_iter()
        .filter(|t| t.is_injective())
        .collect()
}

/// Every ig-section of `U`, by enumerating all choices inside fibers.
pub fn enumerate_ig_sections(u: &SupertropicalMonoid) -> Vec<IgSection> {
    let ghosts: Vec<ElementId> = u.ghost_order().to_vec();
    let options: Vec<Vec<ElementId>> = ghosts
        .iter()
        .map(|&a| u.fiber(a).expect("ghost").into_iter().filter(|&x| x == a || u.is_tangible(x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; ghosts.len()];
    loop {
        let values: Vec<ElementId> = choice.iter().zip(&options).map(|(&c, o)| o[c]).collect();
        if let Ok(s) = IgSection::new(u, values) {
            out.push(s);
        }
        let mut i = 0;
        loop {
            if i == ghosts.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Subsets of a small set, as sorted sets.
pub fn subsets(items: &[ElementId]) -> Vec<BTreeSet<ElementId>> {
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}
