//! Explicit constructions of good forms, the exhaustive finite-field
//! search for forms of a prescribed residue type, branch portraits of the
//! associated covers, and the order-2 symmetry reduction.

mod construct;
mod m2;
mod portrait;
mod scan;

pub use construct::{nonprimitive_datum, primitive_datum};
pub use m2::{m2_reduce, verify_m2_branching, M2BranchingReport};
pub use portrait::branch_portrait;
pub use scan::{
    search_good_deformation, PoleConfiguration, SearchOptions, SearchReport, DEFAULT_CANDIDATE_CAP,
};
