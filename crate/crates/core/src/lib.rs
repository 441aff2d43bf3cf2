//! Computation with finite supertropical monoids.
//!
//! A supertropical monoid is a commutative monoid `U` with absorbing `0` and an
//! idempotent `e` such that `ex = 0` forces `x = 0`, together with a total
//! order on the ghost ideal `eU` compatible with multiplication.

pub mod catalog;
pub mod construct;
pub mod equalizers;
pub mod format;
pub mod frozen;
pub mod isolation;
pub mod monoid;
pub mod oracle;
pub mod partition;
pub mod random;
pub mod reflection;
pub mod relations;
pub mod sections;
pub mod transmission;
pub mod unfold;
pub mod valuation;
pub mod verify;

pub use monoid::{ElementId, Kind, MonoidError, MonoidRef, MonoidSpec, SupertropicalMonoid};
pub use partition::Partition;
pub use transmission::Transmission;
