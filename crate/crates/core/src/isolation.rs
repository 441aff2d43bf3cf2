//! The relations `T(x)`, `T_c(x)`, `Is(x)`, `Sis(x)` and the element-tuple
//! criteria deciding their outcome.

use std::collections::BTreeSet;
use std::fmt;

use crate::equalizers::{eq, feq, feq_family, Label, SPath};
use crate::monoid::{ElementId, SupertropicalMonoid};
use crate::partition::Partition;
use crate::sections::{sons, sons_over, SectionError};

/// Whether `[x]` stays tangible (`I`) or becomes ghost (`II`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolationReport {
    pub subject: ElementId,
    pub relation: Partition,
    pub case: Case,
    /// An obstruction tuple, present exactly in case II.
    pub witness: Option<Vec<ElementId>>,
}

impl IsolationReport {
    fn new(u: &SupertropicalMonoid, x: ElementId, relation: Partition, witness: Option<Vec<ElementId>>) -> Self {
        let case = if relation.same(x, u.ghost(x)) { Case::II } else { Case::I };
        IsolationReport { subject: x, relation, case, witness }
    }

    /// `isolation x=<id> case=<I|II> witness=(...)`.
    pub fn render(&self, u: &SupertropicalMonoid) -> String {
        let witness = self
            .witness
            .as_ref()
            .map(|w| w.iter().map(|&y| u.element_name(y)).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        format!(
            "isolation x={} case={} witness=({})",
            u.element_name(self.subject),
            self.case,
            witness
        )
    }
}

fn require_tangible(u: &SupertropicalMonoid, x: ElementId) -> Result<(), SectionError> {
    if u.is_tangible(x) {
        Ok(())
    } else {
        Err(SectionError::NotTangible(u.element_name(x).into()))
    }
}

fn son_set(u: &SupertropicalMonoid, x: ElementId) -> Result<BTreeSet<ElementId>, SectionError> {
    Ok(sons(u, x)?.sons.into_iter().collect())
}

fn sons_over_set(u: &SupertropicalMonoid, x: ElementId, c: ElementId) -> BTreeSet<ElementId> {
    sons_over(u, x, c).expect("tangible").into_iter().collect()
}

/// `T(x) = Feq(𝒮(x))`.
pub fn tyrant_relation(u: &SupertropicalMonoid, x: ElementId) -> Result<IsolationReport, SectionError> {
    let rel = feq(u, &son_set(u, x)?);
    let witness = tyrant_obstruction(u, x).map(|w| w.to_vec());
    Ok(IsolationReport::new(u, x, rel, witness))
}

/// `T_c(x) = Eq(𝒮_c(x))`.
pub fn tyrant_relation_over(
    u: &SupertropicalMonoid,
    x: ElementId,
    c: ElementId,
) -> Result<Partition, SectionError> {
    require_tangible(u, x)?;
    Ok(eq(u, &sons_over_set(u, x, c)).expect("sons over one ghost share a fiber"))
}

/// `(u, v, w)` with `evx = ewx`, `euvx = ex`, `wx, uvx ∈ 𝒯`, `uwx ∈ M`.
pub fn tyrant_obstruction(u: &SupertropicalMonoid, x: ElementId) -> Option<[ElementId; 3]> {
    let a = u.ghost(x);
    let all: Vec<ElementId> = u.elements().collect();
    for &v in &all {
        let vx = u.mul(v, x);
        for &w in &all {
            let wx = u.mul(w, x);
            if u.ghost(vx) != u.ghost(wx) || !u.is_tangible(wx) {
                continue;
            }
            for &m in &all {
                let uvx = u.mul(m, vx);
                if u.ghost(uvx) == a && u.is_tangible(uvx) && u.in_ghost_ideal(u.mul(m, wx)) {
                    return Some([m, v, w]);
                }
            }
        }
    }
    None
}

/// An elementary `𝒮(x)`-path from a son over `ex` to `ex`.
pub fn tyrant_path_witness(u: &SupertropicalMonoid, x: ElementId) -> Option<SPath> {
    let s = son_set(u, x).ok()?;
    elementary_path_to_ghost(u, &s, u.ghost(x))
}

fn elementary_path_to_ghost(u: &SupertropicalMonoid, set: &BTreeSet<ElementId>, a: ElementId) -> Option<SPath> {
    for &s in set {
        for &t in set.iter().filter(|&&t| u.ghost(t) == u.ghost(s)) {
            for m in u.elements() {
                let z = u.mul(m, s);
                if u.is_tangible(z) && u.ghost(z) == a && u.mul(m, t) == a {
                    return Some(SPath::new(vec![Label { s, u: m, t }]));
                }
            }
        }
    }
    None
}

/// Whether `T(x)` is tangible, via the `(u, v, w)` criterion.
pub fn is_t_tangible(u: &SupertropicalMonoid, x: ElementId) -> bool {
    let all: Vec<ElementId> = u.elements().collect();
    all.iter().all(|&v| {
        let vx = u.mul(v, x);
        all.iter().all(|&w| {
            let wx = u.mul(w, x);
            u.ghost(vx) != u.ghost(wx)
                || !u.is_tangible(wx)
                || all.iter().all(|&m| !u.is_tangible(u.mul(m, vx)) || u.is_tangible(u.mul(m, wx)))
        })
    })
}

/// `[x]_{T(x)}` is tangible iff every admissible `uwx` is tangible.
pub fn t_case_one_test(u: &SupertropicalMonoid, x: ElementId) -> bool {
    let a = u.ghost(x);
    let all: Vec<ElementId> = u.elements().collect();
    all.iter().all(|&v| {
        let vx = u.mul(v, x);
        all.iter().all(|&w| {
            let wx = u.mul(w, x);
            u.ghost(vx) != u.ghost(wx)
                || !u.is_tangible(wx)
                || all.iter().all(|&m| {
                    let uvx = u.mul(m, vx);
                    u.ghost(uvx) != a || !u.is_tangible(uvx) || u.is_tangible(u.mul(m, wx))
                })
        })
    })
}

/// `Is(x) = Eq(𝒮_a(x))` with `a = ex`.
pub fn isolate(u: &SupertropicalMonoid, x: ElementId) -> Result<IsolationReport, SectionError> {
    require_tangible(u, x)?;
    let rel = eq(u, &sons_over_set(u, x, u.ghost(x))).expect("one fiber");
    let witness = isolation_obstruction(u, x).map(|w| w.to_vec());
    Ok(IsolationReport::new(u, x, rel, witness))
}

/// `x` has no proper son over `ex`.
pub fn is_isolated(u: &SupertropicalMonoid, x: ElementId) -> Result<bool, SectionError> {
    Ok(sons_over(u, x, u.ghost(x))? == vec![x])
}

/// `(u, v, w) ∈ [a:a]³` with `uvx, wx ∈ 𝒯` and `uwx ∈ M`.
pub fn isolation_obstruction(u: &SupertropicalMonoid, x: ElementId) -> Option<[ElementId; 3]> {
    let a = u.ghost(x);
    let q = u.quotient_set(a, a);
    for &v in &q {
        for &w in &q {
            if !u.is_tangible(u.mul(w, x)) {
                continue;
            }
            for &m in &q {
                if u.is_tangible(u.mul3(m, v, x)) && u.in_ghost_ideal(u.mul3(m, w, x)) {
                    return Some([m, v, w]);
                }
            }
        }
    }
    None
}

/// `[a:a] ∩ 𝒯` is closed under multiplication.
pub fn tangible_stabilizer_closed(u: &SupertropicalMonoid, a: ElementId) -> bool {
    let t: Vec<ElementId> = u.quotient_set(a, a).into_iter().filter(|&y| u.is_tangible(y)).collect();
    t.iter().all(|&p| t.iter().all(|&q| t.contains(&u.mul(p, q))))
}

pub fn associated(u: &SupertropicalMonoid, x: ElementId, y: ElementId) -> bool {
    u.divides(x, y) && u.divides(y, x)
}

/// Comparison of `x` and an associated `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub associated: bool,
    pub same_relation: bool,
    pub same_isolated: bool,
    pub same_case: bool,
    /// `ux ∈ 𝒯 ⇔ uy ∈ 𝒯` and `eux = ex ⇔ euy = ey` for all `u`.
    pub transport: bool,
}

impl InvarianceReport {
    /// All comparisons agree, or the elements are not associated.
    pub fn holds(&self) -> bool {
        !self.associated || (self.same_relation && self.same_isolated && self.same_case && self.transport)
    }
}

pub fn isolation_invariance(
    u: &SupertropicalMonoid,
    x: ElementId,
    y: ElementId,
) -> Result<InvarianceReport, SectionError> {
    let (rx, ry) = (isolate(u, x)?, isolate(u, y)?);
    let transport = u.elements().all(|m| {
        let (mx, my) = (u.mul(m, x), u.mul(m, y));
        u.is_tangible(mx) == u.is_tangible(my) && (u.ghost(mx) == u.ghost(x)) == (u.ghost(my) == u.ghost(y))
    });
    Ok(InvarianceReport {
        associated: associated(u, x, y),
        same_relation: rx.relation == ry.relation,
        same_isolated: is_isolated(u, x)? == is_isolated(u, y)?,
        same_case: rx.case == ry.case,
        transport,
    })
}

/// `𝔖(x) = {𝒮_{ez}(z) : z ∈ 𝒮(x)}`.
pub fn son_family(u: &SupertropicalMonoid, x: ElementId) -> Result<Vec<BTreeSet<ElementId>>, SectionError> {
    Ok(son_set(u, x)?
        .into_iter()
        .map(|z| sons_over_set(u, z, u.ghost(z)))
        .collect())
}

/// `Sis(x) = Feq(𝔖(x))`.
pub fn son_isolating_relation(u: &SupertropicalMonoid, x: ElementId) -> Result<IsolationReport, SectionError> {
    let rel = feq_family(u, &son_family(u, x)?);
    let witness = sis_ghost_test(u, x).map(|w| w.to_vec());
    Ok(IsolationReport::new(u, x, rel, witness))
}

/// A son `z` and an elementary `Is(z)`-path from a son over `ex` to `ex`.
pub fn sis_path_witness(u: &SupertropicalMonoid, x: ElementId) -> Option<(ElementId, SPath)> {
    let a = u.ghost(x);
    son_set(u, x).ok()?.into_iter().find_map(|z| {
        elementary_path_to_ghost(u, &sons_over_set(u, z, u.ghost(z)), a).map(|p| (z, p))
    })
}

/// `(u, v, w, p)` with `epx = evpx = ewpx`, `euvpx = a`, `uvpx, wpx ∈ 𝒯`, `uwpx = a`.
pub fn sis_ghost_test(u: &SupertropicalMonoid, x: ElementId) -> Option<[ElementId; 4]> {
    let a = u.ghost(x);
    let all: Vec<ElementId> = u.elements().collect();
    for &p in &all {
        let px = u.mul(p, x);
        for &v in &all {
            let vpx = u.mul(v, px);
            if u.ghost(vpx) != u.ghost(px) {
                continue;
            }
            for &w in &all {
                let wpx = u.mul(w, px);
                if u.ghost(wpx) != u.ghost(px) || !u.is_tangible(wpx) {
                    continue;
                }
                for &m in &all {
                    let uvpx = u.mul(m, vpx);
                    if u.ghost(uvpx) == a && u.is_tangible(uvpx) && u.mul(m, wpx) == a {
                        return Some([m, v, w, p]);
                    }
                }
            }
        }
    }
    None
}

/// Whether `Sis(x)` is tangible, via the `(u, v, w, p)` criterion.
pub fn sis_tangible_test(u: &SupertropicalMonoid, x: ElementId) -> bool {
    let all: Vec<ElementId> = u.elements().collect();
    all.iter().all(|&p| {
        let px = u.mul(p, x);
        all.iter().all(|&v| {
            let vpx = u.mul(v, px);
            u.ghost(vpx) != u.ghost(px)
                || all.iter().all(|&w| {
                    let wpx = u.mul(w, px);
                    u.ghost(wpx) != u.ghost(px)
                        || !u.is_tangible(wpx)
                        || all.iter().all(|&m| !u.is_tangible(u.mul(m, vpx)) || u.is_tangible(u.mul(m, wpx)))
                })
        })
    })
}

/// Outcome of the cancellation check at `a = ex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Collapse {
    /// `abd = acd ⇒ ab = ac` for `b, c, d ∈ 𝒯(U)e`.
    pub hypothesis: bool,
    /// `Is(x) = Sis(x)`.
    pub equal: bool,
}

pub fn cancellation_collapse(u: &SupertropicalMonoid, x: ElementId) -> Result<Collapse, SectionError> {
    let a = u.ghost(x);
    let te: BTreeSet<ElementId> = u.tangibles().into_iter().map(|t| u.ghost(t)).collect();
    let hypothesis = te.iter().all(|&b| {
        te.iter().all(|&c| {
            te.iter().all(|&d| u.mul3(a, b, d) != u.mul3(a, c, d) || u.mul(a, b) == u.mul(a, c))
        })
    });
    let equal = isolate(u, x)?.relation == son_isolating_relation(u, x)?.relation;
    Ok(Collapse { hypothesis, equal })
}
