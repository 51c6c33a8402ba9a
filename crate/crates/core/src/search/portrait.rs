//! Ramification portraits of rational maps over the branch values
//! 0, 1, infinity.
//!
//! Indices come from polynomial multiplicities, which are stable under
//! base change, so closure points that do not split over the ambient field
//! are still counted exactly (squarefree decomposition gives, for every
//! multiplicity e, the number of closure points with index e).

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::SearchError;
use crate::forms::{BranchValue, FiberPortrait, Point, RamificationPortrait};

/// Compute the fibers of g above 0, 1 and infinity, with exact indices for
/// rational points and aggregated (index, count) data for closure points,
/// plus a flag for branching anywhere outside the three values.
pub fn branch_portrait(g: &RationalFunction) -> Result<RamificationPortrait, SearchError> {
    if g.is_constant() {
        return Err(SearchError::Degenerate(
            "constant map has no portrait".into(),
        ));
    }
    let num = g.num();
    let den = g.den();
    let dn = num.degree().unwrap() as i64;
    let dd = den.degree().unwrap() as i64;
    let degree = dn.max(dd) as u64;
    let diff = num.sub(den);
    // Where the point at infinity goes, and with which index.
    let (inf_branch, inf_index): (Option<BranchValue>, u64) = if dn > dd {
        (Some(BranchValue::Infinity), (dn - dd) as u64)
    } else if dn < dd {
        (Some(BranchValue::Zero), (dd - dn) as u64)
    } else if num.leading().is_one() {
        // Monic denominator, equal degrees: g(inf) = lead(num) = 1; the
        // index is the degree drop of num - den (nonzero for nonconstant g).
        (
            Some(BranchValue::One),
            degree - diff.degree().unwrap() as u64,
        )
    } else {
        // g(inf) = lead(num) outside {0, 1, inf}; the index there is the
        // degree drop of num - lead(num) den.
        let drop = num.sub(&den.mul_scalar(&num.leading()));
        (None, degree - drop.degree().unwrap() as u64)
    };
    let mut fibers = Vec::with_capacity(3);
    for (branch, fiber_poly) in [
        (BranchValue::Zero, num.clone()),
        (BranchValue::One, diff.clone()),
        (BranchValue::Infinity, den.clone()),
    ] {
        let mut points: Vec<(Point, u64)> = Vec::new();
        let mut unsplit: Vec<(u64, u64)> = Vec::new();
        if !fiber_poly.is_constant() {
            for (e, squarefree) in fiber_poly.squarefree_decomposition() {
                let report = squarefree.roots_in_field();
                for (alpha, mult) in &report.roots {
                    debug_assert_eq!(*mult, 1);
                    points.push((Point::Finite(alpha.clone()), e));
                }
                let closure_count = report.unsplit_degree;
                if closure_count > 0 {
                    unsplit.push((e, closure_count));
                }
            }
        }
        if inf_branch == Some(branch) {
            points.push((Point::Infinity, inf_index));
        }
        points.sort_by(|(a, _), (b, _)| a.cmp(b));
        unsplit.sort_unstable();
        fibers.push(FiberPortrait {
            branch,
            points,
            unsplit,
        });
    }
    let branched_outside = branched_outside_three(g, inf_branch.is_none(), inf_index, &diff);
    Ok(RamificationPortrait::assemble(
        g.field().p(),
        degree,
        fibers,
        branched_outside,
    ))
}

/// A finite point x with g(x) outside {0, 1, inf} is ramified exactly when
/// the Wronskian num' den - num den' vanishes at x, so branching outside
/// the three values happens exactly when the Wronskian has a root off the
/// three fiber supports (or when the map is inseparable and the Wronskian
/// vanishes identically), plus the possible contribution of the point at
/// infinity itself.
fn branched_outside_three(
    g: &RationalFunction,
    inf_outside: bool,
    inf_index: u64,
    diff: &Polynomial,
) -> bool {
    if inf_outside && inf_index >= 2 {
        return true;
    }
    let num = g.num();
    let den = g.den();
    let wronskian = num.derivative().mul(den).sub(&num.mul(&den.derivative()));
    if wronskian.is_zero() {
        // Inseparable map: ramified everywhere.
        return true;
    }
    if wronskian.is_constant() {
        return false;
    }
    let support = num.mul(den).mul(diff);
    let radical_w = wronskian.squarefree_part();
    let shared = radical_w.gcd(&support);
    shared.degree() != radical_w.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn pure_power_portrait() {
        // g = z^3 over F_7: index 3 over 0 at z = 0, index 3 over inf at
        // inf, three simple points over 1.
        let g = RationalFunction::from_poly(Polynomial::monomial(f7().one(), 3));
        let portrait = branch_portrait(&g).unwrap();
        assert_eq!(portrait.degree, 3);
        let over0 = portrait.fiber(BranchValue::Zero);
        assert_eq!(over0.points, vec![(Point::Finite(f7().zero()), 3)]);
        let over_inf = portrait.fiber(BranchValue::Infinity);
        assert_eq!(over_inf.points, vec![(Point::Infinity, 3)]);
        let over1 = portrait.fiber(BranchValue::One);
        assert_eq!(over1.index_multiset(), vec![1, 1, 1]);
        assert!(!portrait.branched_outside);
        assert!(portrait.is_tame());
    }

    #[test]
    fn wild_index_flagged() {
        // g = z^7 over F_7 is wildly ramified.
        let g = RationalFunction::from_poly(Polynomial::monomial(f7().one(), 7));
        let portrait = branch_portrait(&g).unwrap();
        assert!(!portrait.is_tame());
        // z^7 - 1 = (z - 1)^7, so everything is accounted for, but the
        // inseparable structure branches everywhere.
        assert!(portrait.branched_outside);
    }

    #[test]
    fn separable_cover_with_extension_points() {
        // g = z^2 (z - 1)^2 over F_7, degree 4: over 0 two double points;
        // over 1 the roots of a quartic that need not split.
        let f7 = f7();
        let g = RationalFunction::from_poly(
            Polynomial::var(&f7)
                .mul(&Polynomial::linear_root(&f7.one()))
                .pow(2),
        );
        let portrait = branch_portrait(&g).unwrap();
        assert_eq!(portrait.degree, 4);
        let over0 = portrait.fiber(BranchValue::Zero);
        assert_eq!(over0.index_multiset(), vec![2, 2]);
        assert_eq!(
            portrait.fiber(BranchValue::Infinity).points,
            vec![(Point::Infinity, 4)]
        );
        assert_eq!(portrait.fiber(BranchValue::One).total_degree(), 4);
        // Branched over the critical value of the interior critical point
        // z = 1/2, which is outside {0, 1, inf}.
        assert!(portrait.branched_outside);
    }
}
