//! Exact-arithmetic toolkit for logarithmic differential forms with a
//! unique zero over small finite fields, the plane-tree combinatorics of
//! three-point branched covers, and the associated local lifting decision.
//!
//! The crate is organized around five modules:
//!
//! * [`algebra`] — fields F_{p^d}, polynomials, rational functions;
//! * [`forms`] — differential forms on the projective line: divisors,
//!   residues, the logarithmicity test, equivariance and goodness;
//! * [`types`] — residue types, integer lifts and their statistics,
//!   realizability and the lifting decision;
//! * [`dessins`] — permutation triples, cycle types, weighted plane trees
//!   and the constructive realizability algorithm;
//! * [`search`] — explicit constructions and the exhaustive search for
//!   forms of a prescribed residue type.
//!
//! All values are immutable after construction and safe to share across
//! threads.

pub mod algebra;
pub mod dessins;
pub mod error;
pub mod forms;
pub mod search;
pub mod types;

pub use algebra::{Field, FqElement, Polynomial, RationalFunction};
