//! Obstruction instances found by seeded random search and frozen here.
//!
//! `knot` has every obstruction at `1`; `fork` has a tyrant relation that is
//! not ghost separating while staying in case I; `split` adds the same for
//! the son-isolating relation.

use crate::format::parse;
use crate::monoid::MonoidRef;

pub const OBSTRUCTIONS: &str = "\
monoid knot
elements 0 1 e y
zero 0
one 1
e e
order 0 e
row 0: 0 0 0 0
row 1: 0 1 e y
row e: 0 e e e
row y: 0 y e e

monoid fork
elements 0 1 x g1 z e
zero 0
one 1
e e
order 0 g1 e
row 0: 0 0 0 0 0 0
row 1: 0 1 x g1 z e
row x: 0 x x g1 g1 g1
row g1: 0 g1 g1 g1 g1 g1
row z: 0 z g1 g1 g1 g1
row e: 0 e g1 g1 g1 e

monoid split
elements 0 1 x g1 z e
zero 0
one 1
e e
order 0 g1 e
row 0: 0 0 0 0 0 0
row 1: 0 1 x g1 z e
row x: 0 x 0 0 g1 g1
row g1: 0 g1 0 0 g1 g1
row z: 0 z g1 g1 z e
row e: 0 e g1 g1 e e
";

pub fn obstruction_fixtures() -> Vec<MonoidRef> {
    parse(OBSTRUCTIONS).expect("frozen fixtures parse").monoids
}
