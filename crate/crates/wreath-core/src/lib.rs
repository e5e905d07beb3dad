//! Exact decision procedures for finitely generated subsemigroups of the
//! wreath product of the integers with themselves.
//!
//! The crate decides two questions about the semigroup generated by a finite
//! set of wreath-product elements: whether it contains the identity, and
//! whether it is a group. All arithmetic is exact (big rationals, algebraic
//! numbers as polynomial-plus-isolating-interval), and positive answers come
//! with checkable witnesses: explicit words over the generators, produced by
//! Eulerian-circuit constructions on arithmetic graphs.
//!
//! The crate is `no_std` (it needs only `alloc`); all IO and serialization
//! live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod decider;
pub mod ggraph;
pub mod initials;
pub mod linmod;
pub mod polyring;
pub mod realdec;
pub mod wreath;

pub use polyring::{ExtDegree, LaurentPoly, Rat, RatFunc, Sign};
