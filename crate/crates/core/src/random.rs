//! Seeded generation of small supertropical monoids.
//!
//! Instances are glued from a commutative monoid with zero `N`, a bipotent
//! semiring `M` and a homomorphism `ρ: N → M`, then optionally folded by the
//! closure of random fiber-compatible pairs.

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{str_construct, MonoidWithZero, OrderedGhostSemiring};
use crate::monoid::{ElementId, MonoidRef, SupertropicalMonoid};
use crate::oracle::closure_mfce;
use crate::relations::quotient_named;

/// Largest `N` and `M` used as building blocks.
pub const MAX_PART: usize = 5;

const N_NAMES: [&str; MAX_PART] = ["0", "1", "x", "y", "z"];

/// Calls `f` on every assignment of values `0..k` to `slots` positions.
fn for_each_assignment(slots: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut buf = vec![0usize; slots];
    loop {
        f(&buf);
        let mut i = 0;
        loop {
            if i == slots {
                return;
            }
            buf[i] += 1;
            if buf[i] < k {
                break;
            }
            buf[i] = 0;
            i += 1;
        }
    }
}

fn associative(n: usize, t: &[usize]) -> bool {
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]])))
}

/// Tables of every commutative monoid on `0..n` with zero `0` and unit `1`.
fn monoids_with_zero(n: usize) -> Vec<Vec<usize>> {
    let free: Vec<(usize, usize)> = (2..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for_each_assignment(free.len(), n, |vals| {
        let mut t = vec![0usize; n * n];
        for x in 1..n {
            t[n + x] = x;
            t[x * n + 1] = x;
        }
        for (&(x, y), &v) in free.iter().zip(vals) {
            t[x * n + y] = v;
            t[y * n + x] = v;
        }
        if associative(n, &t) {
            out.push(t);
        }
    });
    out
}

/// A bipotent semiring on `0 < 1 < … < n-1` with unit at position `unit`.
#[derive(Clone, Debug)]
struct OrderedTable {
    unit: usize,
    table: Vec<usize>,
}

fn ordered_monoids(n: usize) -> Vec<OrderedTable> {
    let mut out = Vec::new();
    for unit in 1..n {
        let others: Vec<usize> = (1..n).filter(|&x| x != unit).collect();
        let free: Vec<(usize, usize)> = others
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| others[i..].iter().map(move |&y| (x, y)))
            .collect();
        for_each_assignment(free.len(), n, |vals| {
            let mut t = vec![0usize; n * n];
            for x in 0..n {
                t[unit * n + x] = x;
                t[x * n + unit] = x;
            }
            for (&(x, y), &v) in free.iter().zip(vals) {
                t[x * n + y] = v;
                t[y * n + x] = v;
            }
            let monotone = (0..n).all(|a| (a..n).all(|b| (0..n).all(|c| t[a * n + c] <= t[b * n + c])));
            if monotone && associative(n, &t) {
                out.push(OrderedTable { unit, table: t.clone() });
            }
        });
    }
    out
}

struct Blocks {
    n: Vec<Vec<Vec<usize>>>,
    m: Vec<Vec<OrderedTable>>,
    /// The members of `m` without zero divisors.
    m_domains: Vec<Vec<OrderedTable>>,
}

fn blocks() -> &'static Blocks {
    static CACHE: OnceLock<Blocks> = OnceLock::new();
    CACHE.get_or_init(|| {
        let m: Vec<Vec<OrderedTable>> =
            (0..=MAX_PART).map(|k| if k >= 2 { ordered_monoids(k) } else { Vec::new() }).collect();
        let m_domains = m
            .iter()
            .enumerate()
            .map(|(k, list)| {
                list.iter()
                    .filter(|o| (1..k).all(|a| (1..k).all(|b| o.table[a * k + b] != 0)))
                    .cloned()
                    .collect()
            })
            .collect();
        Blocks {
            n: (0..=MAX_PART).map(|k| if k >= 2 { monoids_with_zero(k) } else { Vec::new() }).collect(),
            m,
            m_domains,
        }
    })
}

fn ids(t: &[usize]) -> Vec<ElementId> {
    t.iter().map(|&v| ElementId(v)).collect()
}

fn m_names(o: &OrderedTable, k: usize) -> Vec<String> {
    let mut level = 0;
    (0..k)
        .map(|i| {
            if i == 0 {
                "0".into()
            } else if i == o.unit {
                "e".into()
            } else {
                level += 1;
                format!("g{level}")
            }
        })
        .collect()
}

/// Every homomorphism `N → M` that is zero only at zero.
fn homomorphisms(nt: &[usize], nk: usize, mt: &OrderedTable, mk: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_assignment(nk.saturating_sub(2), mk - 1, |vals| {
        let mut rho = vec![0usize, mt.unit];
        rho.extend(vals.iter().map(|&v| v + 1));
        let ok = (0..nk).all(|x| (0..nk).all(|y| rho[nt[x * nk + y]] == mt.table[rho[x] * mk + rho[y]]));
        if ok {
            out.push(rho);
        }
    });
    out
}

/// Draws one instance with at most `size` elements (`size ≥ 4`).
pub fn random_monoid(rng: &mut impl Rng, size: usize, name: &str) -> SupertropicalMonoid {
    let size = size.max(4);
    let b = blocks();
    loop {
        let budget = (size + rng.gen_range(0..=2)).min(2 * MAX_PART - 1);
        let nk = rng.gen_range(3..=MAX_PART.min(budget - 1));
        let mk = rng.gen_range(2..=MAX_PART.min(budget + 1 - nk));
        let nt = b.n[nk].choose(rng).expect("at least the trivial monoid");
        let pool = if rng.gen_bool(0.5) { &b.m_domains[mk] } else { &b.m[mk] };
        let mt = pool.choose(rng).expect("at least one ordered monoid");
        let homs = homomorphisms(nt, nk, mt, mk);
        let Some(rho) = homs.choose(rng) else { continue };
        let n = MonoidWithZero::new(
            N_NAMES[..nk].iter().map(|s| s.to_string()).collect(),
            ids(nt),
            ElementId(0),
            ElementId(1),
        )
        .expect("enumerated tables are monoids");
        let m = OrderedGhostSemiring::new(
            "M",
            m_names(mt, mk),
            ids(&mt.table),
            ElementId(0),
            ElementId(mt.unit),
            (0..mk).map(ElementId).collect(),
        )
        .expect("enumerated tables are ordered");
        let glued: MonoidRef = Arc::new(
            str_construct(name, &n, &m, &ids(rho)).expect("homomorphism glues").monoid,
        );
        let mut u = glued;
        let fold = u.size() > size || rng.gen_bool(0.5);
        if fold {
            u = fold_randomly(rng, &u, size, name);
        }
        if u.size() <= size && !u.tangibles().is_empty() {
            return (*u).clone().renamed(name);
        }
    }
}

/// Quotients by closures of random same-fiber pairs until at most `size` elements remain.
fn fold_randomly(rng: &mut impl Rng, u: &MonoidRef, size: usize, name: &str) -> MonoidRef {
    let mut cur = u.clone();
    for _ in 0..3 {
        let pairs: Vec<(ElementId, ElementId)> = cur
            .elements()
            .flat_map(|x| cur.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| x < y && x != cur.one() && y != cur.one() && cur.ghost(x) == cur.ghost(y))
            .collect();
        let products: Vec<(ElementId, ElementId)> = pairs
            .iter()
            .copied()
            .filter(|&(x, y)| cur.is_tangible(x) && y == cur.ghost(x) && is_tangible_product(&cur, x))
            .collect();
        let pool = if !products.is_empty() && rng.gen_bool(0.5) { &products } else { &pairs };
        let Some(&pair) = pool.choose(rng) else { break };
        let e = closure_mfce(&cur, &[pair]).expect("same fiber");
        cur = quotient_named(&cur, &e, name).expect("closures are MFCE").monoid;
        if cur.size() <= size && rng.gen_bool(0.6) {
            break;
        }
    }
    cur
}

/// `x = yz` for tangibles `y, z` other than `x` and `1`.
fn is_tangible_product(u: &SupertropicalMonoid, x: ElementId) -> bool {
    let t = u.tangibles();
    t.iter().any(|&y| y != u.one() && y != x && t.iter().any(|&z| u.mul(y, z) == x))
}

/// `count` instances drawn from one seeded stream.
pub fn random_monoids(seed: u64, count: usize, size: usize) -> Vec<MonoidRef> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| Arc::new(random_monoid(&mut rng, size, &format!("r{seed}.{i}"))))
        .collect()
}

/// A seeded stream of instances.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
