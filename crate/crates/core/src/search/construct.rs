//! Closed-form good deformation data.
//!
//! Two families cover all small conductors: for m | h the form
//! h dz / (z^{h+1} - z), and for the primitive range (m | p - 1, h < p,
//! h = -1 mod m) the form dz / prod_i (z^m - z_i^m) with r = (h+1)/m pole
//! orbits picked greedily from F_p^x.

use crate::algebra::{Field, Polynomial, RationalFunction};
use crate::error::SearchError;
use crate::forms::DifferentialForm;

/// The standard non-primitive datum of conductor h: h dz / (z^{h+1} - z)
/// over F_p. Requires m | h and gcd(h, p) = 1.
pub fn nonprimitive_datum(p: u64, m: u64, h: u64) -> Result<DifferentialForm, SearchError> {
    let field = Field::prime(p)?;
    if m == 0 || h == 0 || !h.is_multiple_of(m) {
        return Err(SearchError::NotMultiple { m, h });
    }
    if h.is_multiple_of(p) {
        return Err(SearchError::Types(
            crate::error::TypesError::ConductorDivisibleByP { p, h },
        ));
    }
    let num = Polynomial::constant(field.from_residue(h % p));
    let mut den_coeffs = vec![0i64; h as usize + 2];
    den_coeffs[1] = -1;
    den_coeffs[h as usize + 1] = 1;
    let den = Polynomial::from_residues(&field, &den_coeffs);
    Ok(DifferentialForm::new(RationalFunction::new(num, den))?)
}

/// A primitive datum of conductor h over F_p: dz / prod_i (z^m - z_i^m),
/// where the z_i are the first r = (h+1)/m elements of F_p^x (in integer
/// order) whose m-th power orbits are disjoint. Requires m | p - 1, h < p
/// and h = -1 mod m.
pub fn primitive_datum(p: u64, m: u64, h: u64) -> Result<DifferentialForm, SearchError> {
    let field = Field::prime(p)?;
    if m == 0 || h == 0 {
        return Err(SearchError::Types(crate::error::TypesError::NonPositive));
    }
    if !(p - 1).is_multiple_of(m) {
        return Err(SearchError::NotDividing { m, p });
    }
    if h >= p {
        return Err(SearchError::ConductorTooLarge { h, p });
    }
    if !(h + 1).is_multiple_of(m) {
        return Err(SearchError::WrongCongruence { m, h });
    }
    let r = ((h + 1) / m) as usize;
    // Greedy orbit representatives: walk 1, 2, ... and keep values whose
    // m-th power is new. For m >= 2, h < p guarantees enough nonzero
    // orbits; for m = 1 the case h = p - 1 needs all of F_p, so the
    // origin joins as the last pole.
    let mut reps = Vec::with_capacity(r);
    let mut seen_powers = Vec::new();
    for x in 1..p {
        let xe = field.from_residue(x);
        let power = xe.pow(m as u128);
        if seen_powers.contains(&power) {
            continue;
        }
        seen_powers.push(power);
        reps.push(xe);
        if reps.len() == r {
            break;
        }
    }
    if reps.len() < r && m == 1 {
        reps.push(field.zero());
    }
    assert_eq!(reps.len(), r, "h < p guarantees enough pole orbits");
    let mut den = Polynomial::one(&field);
    for z in &reps {
        // z^m - z_i^m
        let mut factor = Polynomial::monomial(field.one(), m as usize);
        factor = factor.sub(&Polynomial::constant(z.pow(m as u128)));
        den = den.mul(&factor);
    }
    Ok(DifferentialForm::new(RationalFunction::new(
        Polynomial::one(&field),
        den,
    ))?)
}
