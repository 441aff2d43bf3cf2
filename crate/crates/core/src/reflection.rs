//! Ideal compressions and the reflection onto supertropical semirings.

use std::collections::BTreeSet;

use crate::monoid::{ElementId, MonoidRef, SupertropicalMonoid};
use crate::partition::Partition;
use crate::relations::{quotient_named, Quotient, RelationError};
use crate::transmission::Transmission;

/// The relation `E(U, A)`: each ghost `a` is merged with the tangibles of
/// `A` lying over it.
pub fn compression_partition(
    u: &SupertropicalMonoid,
    a: &BTreeSet<ElementId>,
) -> Result<Partition, RelationError> {
    let m = u.ghost_ideal();
    if !m.is_subset(a) || !u.is_ideal(a) {
        return Err(RelationError::NotAnIdeal(u.format_set(a)));
    }
    let labels: Vec<ElementId> =
        u.elements().map(|x| if a.contains(&x) { u.ghost(x) } else { x }).collect();
    Ok(Partition::from_labels(&labels))
}

/// `E(U, A)` and the quotient `U/E(U, A)`.
pub fn ideal_compression(
    u: &MonoidRef,
    a: &BTreeSet<ElementId>,
) -> Result<(Partition, Quotient), RelationError> {
    let e = compression_partition(u, a)?;
    let q = quotient_named(u, &e, format!("{}/A", u.name()))?;
    Ok((e, q))
}

/// `E(U, S) := E(U, M ∪ US)` for an arbitrary subset `S`.
pub fn compression_of_generated(u: &SupertropicalMonoid, s: &BTreeSet<ElementId>) -> Partition {
    let mut a = u.ideal_generated(s);
    a.extend(u.ghost_ideal());
    compression_partition(u, &a).expect("M ∪ US is an ideal")
}

/// The reflection `σ_U: U → Û` onto a supertropical semiring.
pub fn hat(u: &MonoidRef) -> (Transmission, MonoidRef) {
    let e = compression_of_generated(u, &u.tangible_nc_products());
    let name = if e.is_discrete() { u.name().to_string() } else { format!("{}^", u.name()) };
    let q = quotient_named(u, &e, name).expect("ideal compressions are MFCE");
    (q.projection, q.monoid)
}
