//! Order-2 symmetry reduction: a good form with poles at +-z_i descends
//! to a cover g~ of the line with g~(z^2) = ((g-1)/(g+1))^2, whose
//! three-point branching encodes the form.

use serde::Serialize;

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::SearchError;
use crate::forms::{BranchValue, Point};
use crate::search::portrait::branch_portrait;
use crate::search::scan::PoleConfiguration;
use crate::types::LiftedType;

/// From an all-positive lift A and an order-2 pole configuration, form
/// g = prod ((z - z_i)/(z + z_i))^{A_i} and return the descended cover g~
/// with g~(z^2) = ((g - 1)/(g + 1))^2. The result has degree sum A_i.
pub fn m2_reduce(
    lift: &LiftedType,
    config: &PoleConfiguration,
) -> Result<RationalFunction, SearchError> {
    let field = config.field().clone();
    if field.p() == 2 {
        return Err(SearchError::EvenCharacteristic);
    }
    if config.m != 2 {
        return Err(SearchError::Degenerate(
            "configuration must carry the order-2 symmetry".into(),
        ));
    }
    if !lift.is_all_positive() {
        return Err(SearchError::Degenerate(
            "the lift must have positive entries".into(),
        ));
    }
    if lift.len() != config.poles.len() {
        return Err(SearchError::Degenerate(
            "lift and configuration lengths differ".into(),
        ));
    }
    let mut g = RationalFunction::one(&field);
    for (z, &a) in config.poles.iter().zip(lift.entries()) {
        let factor = RationalFunction::new(
            Polynomial::linear_root(z),
            Polynomial::linear_root(&z.neg()),
        );
        g = g.mul(&factor.pow(a));
    }
    let one = RationalFunction::one(&field);
    let num = g.sub(&one);
    let den = g.add(&one);
    if num.is_zero() || den.is_zero() {
        return Err(SearchError::Degenerate("g is identically +-1".into()));
    }
    let t = num.div(&den);
    let squared = t.mul(&t);
    // g(-z) = 1/g(z) makes the square even in z; oddness here is a bug.
    let even_num = squared
        .num()
        .decimate(2)
        .ok_or_else(|| SearchError::Degenerate("squared quotient is not even in z".into()))?;
    let even_den = squared
        .den()
        .decimate(2)
        .ok_or_else(|| SearchError::Degenerate("squared quotient is not even in z".into()))?;
    let gt = RationalFunction::new(even_num, even_den);
    let expected: u64 = lift.entries().iter().map(|&a| a as u64).sum();
    let actual = gt
        .num()
        .degree()
        .unwrap_or(0)
        .max(gt.den().degree().unwrap_or(0)) as u64;
    if actual != expected {
        return Err(SearchError::Degenerate(format!(
            "descended cover has degree {actual}, expected {expected}"
        )));
    }
    Ok(gt)
}

/// Clause-by-clause verification of the branching structure the descended
/// cover must have: fiber over 1 given by the lift entries, the
/// parity-split fibers over 0 and infinity, tameness, and no branching
/// outside the three values.
#[derive(Clone, Debug, Serialize)]
pub struct M2BranchingReport {
    pub pass: bool,
    pub clauses: Vec<(String, bool)>,
    /// Rational fiber points over 1 with their indices, for cross-checks
    /// against the squared poles.
    pub fiber_over_one: Vec<(Point, u64)>,
}

pub fn verify_m2_branching(
    gt: &RationalFunction,
    lift: &LiftedType,
) -> Result<M2BranchingReport, SearchError> {
    let portrait = branch_portrait(gt)?;
    let field = gt.field();
    let n: u64 = lift.entries().iter().map(|&a| a.unsigned_abs()).sum();
    let r = lift.len() as u64;
    let h = 2 * r - 1;
    let mut clauses: Vec<(String, bool)> = Vec::new();
    clauses.push(("degree equals the lift total".into(), portrait.degree == n));
    let mut expected_one: Vec<u64> = lift.entries().iter().map(|&a| a.unsigned_abs()).collect();
    expected_one.sort_unstable_by(|a, b| b.cmp(a));
    let over_one = portrait.fiber(BranchValue::One);
    clauses.push((
        "fiber over 1 realizes the lift entries".into(),
        over_one.index_multiset() == expected_one,
    ));
    let over_zero = portrait.fiber(BranchValue::Zero);
    let over_inf = portrait.fiber(BranchValue::Infinity);
    let zero_pt = Point::Finite(field.zero());
    // (n + 1 - 2r) / 2 double points over 0; degenerate lifts with
    // n < 2r - 1 simply fail the clause.
    let doubles_over_zero = (n + 1).checked_sub(2 * r).map(|k| k / 2);
    if n.is_multiple_of(2) {
        let expected_zero = doubles_over_zero.map(|k| {
            let mut v = vec![h, 1];
            v.extend(std::iter::repeat_n(2, k as usize));
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        });
        clauses.push((
            "fiber over 0: infinity with index h, origin simple, rest double".into(),
            expected_zero.is_some_and(|expected| over_zero.index_multiset() == expected)
                && over_zero.index_at(&Point::Infinity) == Some(h)
                && over_zero.index_at(&zero_pt) == Some(1),
        ));
        let expected_inf: Vec<u64> = std::iter::repeat_n(2, (n / 2) as usize).collect();
        clauses.push((
            "fiber over infinity: all double points".into(),
            over_inf.index_multiset() == expected_inf,
        ));
    } else {
        let expected_zero = doubles_over_zero.map(|k| {
            let mut v = vec![h];
            v.extend(std::iter::repeat_n(2, k as usize));
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        });
        clauses.push((
            "fiber over 0: infinity with index h, rest double".into(),
            expected_zero.is_some_and(|expected| over_zero.index_multiset() == expected)
                && over_zero.index_at(&Point::Infinity) == Some(h),
        ));
        let mut expected_inf: Vec<u64> = std::iter::repeat_n(2, ((n - 1) / 2) as usize).collect();
        expected_inf.push(1);
        expected_inf.sort_unstable_by(|a, b| b.cmp(a));
        clauses.push((
            "fiber over infinity: origin unramified, rest double".into(),
            over_inf.index_multiset() == expected_inf && over_inf.index_at(&zero_pt) == Some(1),
        ));
    }
    clauses.push(("tame everywhere".into(), portrait.is_tame()));
    clauses.push((
        "branched only over 0, 1, infinity".into(),
        !portrait.branched_outside,
    ));
    let pass = clauses.iter().all(|(_, ok)| *ok);
    Ok(M2BranchingReport {
        pass,
        clauses,
        fiber_over_one: over_one.points.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::forms::EquivariantContext;

    #[test]
    fn single_pole_reduction() {
        // A = (1), z_1 = 1 over F_5: g = (z-1)/(z+1), g~ = 1/x.
        let f5 = Field::prime(5).unwrap();
        let ctx = EquivariantContext::new(&f5, 2).unwrap();
        let config = PoleConfiguration::new(&ctx, vec![f5.one()]).unwrap();
        let lift = LiftedType::new(vec![1]).unwrap();
        let gt = m2_reduce(&lift, &config).unwrap();
        assert_eq!(*gt.num(), Polynomial::one(&f5));
        assert_eq!(*gt.den(), Polynomial::var(&f5));
        let report = verify_m2_branching(&gt, &lift).unwrap();
        assert!(report.pass, "clauses: {:?}", report.clauses);
    }

    #[test]
    fn degree_matches_lift_total() {
        let f11 = Field::prime(11).unwrap();
        let ctx = EquivariantContext::new(&f11, 2).unwrap();
        let config = PoleConfiguration::new(
            &ctx,
            vec![f11.one(), f11.from_residue(2), f11.from_residue(3)],
        )
        .unwrap();
        for entries in [[1i64, 1, 1], [1, 2, 1], [2, 1, 3]] {
            let lift = LiftedType::new(entries.to_vec()).unwrap();
            let gt = m2_reduce(&lift, &config).unwrap();
            let n: u64 = entries.iter().map(|&a| a as u64).sum();
            let deg = gt.num().degree().unwrap().max(gt.den().degree().unwrap()) as u64;
            assert_eq!(deg, n);
        }
    }

    #[test]
    fn non_good_configuration_fails_verification() {
        // A generic configuration does not give a good form, so the
        // branching clauses must fail somewhere.
        let f11 = Field::prime(11).unwrap();
        let ctx = EquivariantContext::new(&f11, 2).unwrap();
        let config = PoleConfiguration::new(
            &ctx,
            vec![f11.one(), f11.from_residue(2), f11.from_residue(4)],
        )
        .unwrap();
        let lift = LiftedType::new(vec![1, 1, 3]).unwrap();
        let gt = m2_reduce(&lift, &config).unwrap();
        let report = verify_m2_branching(&gt, &lift).unwrap();
        assert!(!report.pass);
    }
}
