//! Exact combinatorics for intersecting and forbidden-subposet families of
//! subsets of `[n]`.
//!
//! Families are bitmask encoded ([`ground`]), posets are small transitively
//! closed relations ([`poset`]), and the extremal quantities are computed by
//! closed forms ([`construct`]), cyclic-permutation counting ([`cycle`]),
//! double chains ([`dchain`]), exact LYM-type sums ([`ineq`]) and an exact
//! branch-and-bound search ([`solver`]).

pub mod binom;
pub mod construct;
pub mod cycle;
pub mod dchain;
pub mod gen;
pub mod ground;
pub mod ineq;
pub mod json;
pub mod perm;
pub mod poset;
pub mod solver;

pub use ground::{SetFamily, Subset};
pub use poset::Poset;

/// Exact rational used by every reported inequality value.
pub type Rational = num_rational::Ratio<i128>;
