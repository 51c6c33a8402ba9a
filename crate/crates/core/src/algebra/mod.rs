//! Exact arithmetic over F_p, extension fields F_{p^d}, univariate
//! polynomials and reduced rational functions.

pub(crate) mod fp;

mod field;
mod poly;
mod ratfn;

pub use field::{Field, FqElement};
pub use poly::{Polynomial, RootReport};
pub use ratfn::RationalFunction;
