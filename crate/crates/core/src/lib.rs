//! Exact-arithmetic duality toolkit for additive codes whose weights come
//! from regular supports on graded lattices.
//!
//! The crate covers four layers:
//!
//! * finite abelian groups, characters and subgroup (code) enumeration
//!   ([`group`]), with exact root-of-unity arithmetic ([`cyclotomic`]);
//! * finite graded lattices, Möbius functions and the regularity invariants
//!   ([`lattice`]);
//! * regular supports, their duals and weight distributions ([`support`]),
//!   and the Krawtchouk/MacWilliams machinery built on top ([`macwilliams`]);
//! * closed-form counting of constrained matrices over finite fields
//!   ([`matrix_enum`]).
//!
//! Everything is exact: rationals over big integers, no floating point.

pub mod comb;
pub mod cyclotomic;
pub mod descriptor;
pub mod gf;
pub mod group;
pub mod lattice;
pub mod macwilliams;
pub mod matrix_enum;
pub mod support;

pub use group::{Code, FiniteAbelianGroup, GroupElement};
pub use lattice::{Lattice, LatticeFamily, LatticeInvariants};
pub use macwilliams::KrawtchoukTable;
pub use support::{RegularSupport, SupportMap, WeightDistribution};
