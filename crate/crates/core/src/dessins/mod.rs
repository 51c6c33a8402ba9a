//! Generating systems (permutation triples), cycle types and genus, the
//! combinatorial types forced by an integer lift, the brute-force
//! realizability oracle, and the constructive weighted-plane-tree algorithm.

mod perm;
mod tree;

pub use perm::{
    canonical_representative, centralizer, count_classes, count_classes_capped,
    permutations_of_type, search_generating_systems, search_generating_systems_capped,
    verify_cycle_identity, CombinatorialType, CycleType, GeneratingSystem, Permutation,
    DEFAULT_DEGREE_CAP,
};
pub use tree::{build_tree, tree_to_generating_system, Color, TreeEdge, WeightedPlaneTree};

use crate::error::DessinError;
use crate::types::LiftedType;

/// The cycle-type triple forced on a generating system by a zero-sum lift:
/// positives over 0, a single (r-1)-cycle over 1, negated negatives over
/// infinity, all padded with fixed points to degree n_A.
pub fn combinatorial_type_m1(lift: &LiftedType) -> Result<CombinatorialType, DessinError> {
    if !lift.is_zero_sum() {
        return Err(crate::error::TypesError::LiftNotZeroSum.into());
    }
    let (n, _) = lift.stats();
    let r = lift.len() as u64;
    if r < 2 {
        return Err(crate::error::TypesError::LiftTooShort.into());
    }
    if r - 1 > n {
        return Err(DessinError::CycleTooLong { len: r - 1, n });
    }
    let positives: Vec<u64> = lift
        .entries()
        .iter()
        .filter(|&&a| a > 0)
        .map(|&a| a as u64)
        .collect();
    let negatives: Vec<u64> = lift
        .entries()
        .iter()
        .filter(|&&a| a < 0)
        .map(|&a| a.unsigned_abs())
        .collect();
    let c1 = CycleType::with_degree(positives, n)?;
    let c2 = CycleType::with_degree(vec![r - 1], n)?;
    let c3 = CycleType::with_degree(negatives, n)?;
    CombinatorialType::new(n, c1, c2, c3)
}

/// The cycle-type triple for the order-2 symmetry reduction of an
/// all-positive lift: over 0 one (2r-1)-cycle plus floor((n-2r+1)/2)
/// 2-cycles, over 1 the lift entries themselves, over infinity
/// floor(n/2) 2-cycles, all padded with fixed points to degree n = sum A_i.
pub fn combinatorial_type_m2(lift: &LiftedType) -> Result<CombinatorialType, DessinError> {
    if !lift.is_all_positive() {
        return Err(crate::error::TypesError::ZeroLiftEntry.into());
    }
    let n: u64 = lift.entries().iter().map(|&a| a as u64).sum();
    let r = lift.len() as u64;
    let h = 2 * r - 1;
    if h > n {
        return Err(DessinError::CycleTooLong { len: h, n });
    }
    let mut c1_parts = vec![h];
    c1_parts.extend(std::iter::repeat_n(2, ((n - h) / 2) as usize));
    let c1 = CycleType::with_degree(c1_parts, n)?;
    let c2_parts: Vec<u64> = lift.entries().iter().map(|&a| a as u64).collect();
    let c2 = CycleType::with_degree(c2_parts, n)?;
    let c3_parts: Vec<u64> = std::iter::repeat_n(2, (n / 2) as usize).collect();
    let c3 = CycleType::with_degree(c3_parts, n)?;
    CombinatorialType::new(n, c1, c2, c3)
}
