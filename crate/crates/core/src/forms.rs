//! Differential forms w = f(z) dz on the projective line over F_{p^d}:
//! divisors and residues, the logarithmicity test (simple poles with
//! prime-field residues), equivariance under z -> zeta z, goodness (a
//! unique zero), conductor, and residue-type extraction.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Field, FqElement, Polynomial, RationalFunction};
use crate::error::FormsError;
use crate::types::ResidueType;

/// A point of the projective line over the ambient field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(FqElement),
    Infinity,
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Point::Finite(a), Point::Finite(b)) => a.cmp(b),
            (Point::Finite(_), Point::Infinity) => Ordering::Less,
            (Point::Infinity, Point::Finite(_)) => Ordering::Greater,
            (Point::Infinity, Point::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(a) => write!(f, "{}", a.to_wire()),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Finite(a) => a.serialize(s),
            Point::Infinity => s.serialize_str("inf"),
        }
    }
}

/// A nonzero differential form w = f(z) dz.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialForm {
    f: RationalFunction,
}

impl DifferentialForm {
    pub fn new(f: RationalFunction) -> Result<DifferentialForm, FormsError> {
        if f.is_zero() {
            return Err(FormsError::ZeroForm);
        }
        Ok(DifferentialForm { f })
    }

    /// dg/g for a nonzero rational g. Errors when the logarithmic
    /// derivative vanishes (g a constant or a p-th power times a constant).
    pub fn d_log(g: &RationalFunction) -> Result<DifferentialForm, FormsError> {
        if g.is_zero() {
            return Err(FormsError::ZeroForm);
        }
        DifferentialForm::new(g.dlog())
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    /// Scale by a nonzero constant.
    pub fn scale(&self, c: &FqElement) -> Result<DifferentialForm, FormsError> {
        DifferentialForm::new(self.f.mul(&RationalFunction::constant(c.clone())))
    }

    /// Order of vanishing of w at a point; at infinity the pole of dz
    /// contributes -2.
    pub fn ord_at(&self, point: &Point) -> i64 {
        match point {
            Point::Finite(a) => self.f.ord_at(a),
            Point::Infinity => self.f.ord_at_infinity() - 2,
        }
    }

    /// Residue at a finite point with at most a simple pole.
    pub fn residue_at(&self, alpha: &FqElement) -> Result<FqElement, FormsError> {
        let ord = self.f.ord_at(alpha);
        if ord >= 0 {
            return Ok(self.field().zero());
        }
        if ord < -1 {
            return Err(FormsError::HigherOrderPole {
                point: alpha.to_wire(),
                order: ord,
            });
        }
        // Reduced representation: a simple pole means den has a simple
        // root at alpha and num does not vanish, so num(a)/den'(a) works.
        let num = self.f.num().eval(alpha);
        let dprime = self.f.den().derivative().eval(alpha);
        debug_assert!(!dprime.is_zero());
        Ok(num.div(&dprime))
    }

    /// Residue at infinity, requiring at most a simple pole there. Computed
    /// from the expansion at infinity: minus the z^{-1} coefficient.
    pub fn residue_at_infinity(&self) -> Result<FqElement, FormsError> {
        let ord = self.ord_at(&Point::Infinity);
        if ord < -1 {
            return Err(FormsError::HigherOrderPole {
                point: "inf".into(),
                order: ord,
            });
        }
        let dn = self.f.num().degree().unwrap() as i64;
        let dd = self.f.den().degree().unwrap() as i64;
        if dn == dd - 1 {
            Ok(self.f.num().leading().div(&self.f.den().leading()).neg())
        } else {
            Ok(self.field().zero())
        }
    }

    /// The divisor of w: every point of nonzero order. Requires numerator
    /// and denominator to split over the ambient field.
    pub fn divisor(&self) -> Result<Vec<(Point, i64)>, FormsError> {
        let mut out = Vec::new();
        for (poly, sign) in [(self.f.num(), 1i64), (self.f.den(), -1i64)] {
            if poly.is_constant() {
                continue;
            }
            let report = poly.roots_in_field();
            if report.unsplit_degree > 0 {
                return Err(FormsError::ExtendField);
            }
            for (alpha, mult) in report.roots {
                out.push((Point::Finite(alpha), sign * mult as i64));
            }
        }
        let at_inf = self.ord_at(&Point::Infinity);
        if at_inf != 0 {
            out.push((Point::Infinity, at_inf));
        }
        out.sort_by(|(a, _), (b, _)| a.cmp(b));
        Ok(out)
    }

    /// Decides w = dg/g. `Ok(Some(g))` returns a witness with the residue
    /// lifts taken in (-p/2, p/2]; `Ok(None)` means not logarithmic.
    /// Errors when the poles do not split over the ambient field.
    pub fn is_logarithmic(&self) -> Result<Option<RationalFunction>, FormsError> {
        let field = self.field();
        let den = self.f.den();
        let mut witness_num = Polynomial::one(field);
        let mut witness_den = Polynomial::one(field);
        if !den.is_constant() {
            let report = den.roots_in_field();
            if report.unsplit_degree > 0 {
                return Err(FormsError::ExtendField);
            }
            for (alpha, mult) in report.roots {
                if mult > 1 {
                    return Ok(None);
                }
                let res = self.residue_at(&alpha)?;
                let lift = match res.symmetric_lift() {
                    Some(l) => l,
                    None => return Ok(None),
                };
                debug_assert!(lift != 0);
                let factor = Polynomial::linear_root(&alpha).pow(lift.unsigned_abs());
                if lift > 0 {
                    witness_num = witness_num.mul(&factor);
                } else {
                    witness_den = witness_den.mul(&factor);
                }
            }
        }
        if self.ord_at(&Point::Infinity) < -1 {
            return Ok(None);
        }
        if self.residue_at_infinity()?.as_prime_residue().is_none() {
            return Ok(None);
        }
        let witness = RationalFunction::new(witness_num, witness_den);
        debug_assert_eq!(
            DifferentialForm::d_log(&witness).map(|w| w.f),
            Ok(self.f.clone()),
            "witness must reproduce the form"
        );
        Ok(Some(witness))
    }

    /// Pullback under z -> 1/z, moving a zero between 0 and infinity.
    pub fn invert_coordinate(&self) -> DifferentialForm {
        let field = self.field();
        let zsq = RationalFunction::new(
            Polynomial::one(field).neg(),
            Polynomial::monomial(field.one(), 2),
        );
        DifferentialForm {
            f: self.f.invert_argument().mul(&zsq),
        }
    }

    /// Pullback under z -> a z + b (a nonzero): f(az + b) a dz.
    pub fn affine_substitution(&self, a: &FqElement, b: &FqElement) -> DifferentialForm {
        assert!(!a.is_zero());
        let scaled = self
            .f
            .compose_linear(a, b)
            .mul(&RationalFunction::constant(a.clone()));
        DifferentialForm { f: scaled }
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) dz", self.f)
    }
}

/// The order-m symmetry z -> zeta z with a fixed primitive m-th root zeta.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivariantContext {
    m: u64,
    zeta: FqElement,
}

impl EquivariantContext {
    /// Requires gcd(m, p) = 1 and m | p^d - 1 so that zeta exists; zeta is
    /// the smallest primitive m-th root in the field's total order.
    pub fn new(field: &Field, m: u64) -> Result<EquivariantContext, FormsError> {
        if m == 0 || m.is_multiple_of(field.p()) {
            return Err(FormsError::Algebra(
                crate::error::AlgebraError::InvalidRootOrder { p: field.p(), m },
            ));
        }
        let zeta = field.primitive_root_of_unity(m)?;
        Ok(EquivariantContext { m, zeta })
    }

    pub fn trivial(field: &Field) -> EquivariantContext {
        EquivariantContext {
            m: 1,
            zeta: field.one(),
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn zeta(&self) -> &FqElement {
        &self.zeta
    }

    pub fn field(&self) -> &Field {
        self.zeta.field()
    }
}

/// The unique c in Z/m with f(zeta z) zeta = zeta^c f(z), or `None` when
/// the form is not an eigenvector. For m = 1 this is always 0.
pub fn equivariance_exponent(form: &DifferentialForm, ctx: &EquivariantContext) -> Option<u64> {
    assert!(
        form.field() == ctx.field(),
        "context field must match the form's field"
    );
    if ctx.m == 1 {
        return Some(0);
    }
    let pulled = form
        .f
        .scale_argument(&ctx.zeta)
        .mul(&RationalFunction::constant(ctx.zeta.clone()));
    // Both sides are reduced with monic denominators, so an eigenvector
    // keeps its denominator and scales its numerator by zeta^c.
    if pulled.den() != form.f.den() {
        return None;
    }
    let lam = pulled.num().leading().div(&form.f.num().leading());
    let mut power = form.field().one();
    for c in 0..ctx.m {
        if power == lam {
            if &form.f.num().mul_scalar(&lam) == pulled.num() {
                return Some(c);
            }
            return None;
        }
        power = power.mul(&ctx.zeta);
    }
    None
}

/// Everything the goodness test learns about a form.
#[derive(Clone, Debug, Serialize)]
pub struct GoodnessReport {
    pub is_good: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_location: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conductor_h: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    /// The eigenvalue exponent c mod m.
    pub exponent: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue_type: Option<ResidueType>,
}

impl GoodnessReport {
    fn not_good(failure: String, exponent: u64) -> GoodnessReport {
        GoodnessReport {
            is_good: false,
            failure: Some(failure),
            zero_location: None,
            conductor_h: None,
            primitive: None,
            exponent,
            residue_type: None,
        }
    }
}

/// Full goodness pipeline: logarithmic, equivariant, and a zero divisor
/// concentrated at a single point. On success the report carries the
/// conductor h = ord + 1, primitivity, and (when the zero sits at
/// infinity and zeta lies in F_p) the residue type.
///
/// Consistency conditions that provably hold for every good form are
/// re-checked and raise `Inconsistency` when violated: h prime to p;
/// primitivity matching gcd(h, m) = 1 and gcd(c, m) = 1; for primitive
/// forms m | p - 1 and h = -1 mod m; for non-primitive forms m | h and
/// c = 0.
pub fn goodness(
    form: &DifferentialForm,
    ctx: &EquivariantContext,
) -> Result<GoodnessReport, FormsError> {
    if form.is_logarithmic()?.is_none() {
        return Err(FormsError::NotLogarithmic {
            reason: "a pole of order at least 2 or a residue outside F_p".into(),
        });
    }
    let exponent = equivariance_exponent(form, ctx).ok_or(FormsError::NotEquivariant)?;
    let num = form.f().num();
    let ord_inf = form.ord_at(&Point::Infinity);
    // Conductor 1 means an empty zero divisor: the "unique zero" has order
    // zero and sits, by convention, at the symmetry-fixed point where the
    // form is regular (infinity preferred, then the origin).
    let zero: Option<(Point, i64)> = if num.is_constant() {
        if ord_inf > 0 {
            Some((Point::Infinity, ord_inf))
        } else if ord_inf == 0 {
            Some((Point::Infinity, 0))
        } else if !form.f().den().coeff(0).is_zero() {
            Some((Point::Finite(form.field().zero()), 0))
        } else {
            None
        }
    } else {
        match num.linear_power() {
            Some((alpha, e)) => {
                if ord_inf > 0 {
                    return Ok(GoodnessReport::not_good(
                        "zeros at a finite point and at infinity".into(),
                        exponent,
                    ));
                }
                Some((Point::Finite(alpha), e as i64))
            }
            None => {
                return Ok(GoodnessReport::not_good(
                    "zero divisor is supported at more than one point".into(),
                    exponent,
                ));
            }
        }
    };
    let (zero_location, ord) = match zero {
        Some(z) => z,
        None => {
            return Ok(GoodnessReport::not_good(
                "the form has no zero and no regular fixed point to carry one".into(),
                exponent,
            ));
        }
    };
    let h = (ord + 1) as u64;
    let p = form.field().p();
    let m = ctx.m();
    // Cross-checks; failures signal a bug, not bad input.
    if h.is_multiple_of(p) {
        return Err(FormsError::Inconsistency(format!(
            "good form with conductor {h} divisible by p = {p}"
        )));
    }
    let primitive = num_integer::gcd(h, m) == 1;
    if primitive != (num_integer::gcd(exponent, m) == 1) {
        return Err(FormsError::Inconsistency(
            "gcd(h, m) = 1 and gcd(c, m) = 1 must agree".into(),
        ));
    }
    if primitive {
        if m > 1 && !(p - 1).is_multiple_of(m) {
            return Err(FormsError::Inconsistency(format!(
                "primitive form requires m | p - 1 (m = {m}, p = {p})"
            )));
        }
        if !(h + 1).is_multiple_of(m) {
            return Err(FormsError::Inconsistency(format!(
                "primitive form requires h = -1 mod m (h = {h}, m = {m})"
            )));
        }
    } else {
        if !h.is_multiple_of(m) {
            return Err(FormsError::Inconsistency(format!(
                "non-primitive form requires m | h (h = {h}, m = {m})"
            )));
        }
        if exponent % m != 0 {
            return Err(FormsError::Inconsistency(format!(
                "non-primitive form requires c = 0 (c = {exponent}, m = {m})"
            )));
        }
    }
    match &zero_location {
        Point::Infinity => {
            if !(h + exponent).is_multiple_of(m) {
                return Err(FormsError::Inconsistency(format!(
                    "zero at infinity forces h = -c mod m (h = {h}, c = {exponent})"
                )));
            }
        }
        Point::Finite(a) if a.is_zero() => {
            if !(h + m - exponent % m).is_multiple_of(m) {
                return Err(FormsError::Inconsistency(format!(
                    "zero at the origin forces h = c mod m (h = {h}, c = {exponent})"
                )));
            }
        }
        Point::Finite(_) => {
            // The zero of an eigenvector form is fixed by the symmetry.
            if m > 1 {
                return Err(FormsError::Inconsistency(
                    "equivariant form with a unique zero away from the fixed points".into(),
                ));
            }
        }
    }
    let residue_type = if zero_location.is_infinity() && (m == 1 || (p - 1).is_multiple_of(m)) {
        Some(extract_type(form, ctx)?)
    } else {
        None
    };
    Ok(GoodnessReport {
        is_good: true,
        failure: None,
        zero_location: Some(zero_location),
        conductor_h: Some(h),
        primitive: Some(primitive),
        exponent,
        residue_type,
    })
}

/// The residue type of a good form with its zero at infinity: poles are
/// partitioned into orbits under z -> zeta z, each orbit is represented by
/// its smallest point, and the tuple of residues there is canonicalized.
pub fn extract_type(
    form: &DifferentialForm,
    ctx: &EquivariantContext,
) -> Result<ResidueType, FormsError> {
    // Conductor 1 forms are regular at infinity with an empty zero divisor,
    // so order exactly 0 at infinity is accepted too.
    if form.ord_at(&Point::Infinity) < 0 {
        return Err(FormsError::ZeroNotAtInfinity);
    }
    let den = form.f().den();
    let report = den.roots_in_field();
    if report.unsplit_degree > 0 {
        return Err(FormsError::ExtendField);
    }
    let mut poles: Vec<FqElement> = report.roots.into_iter().map(|(a, _)| a).collect();
    poles.sort();
    let mut entries = Vec::new();
    let mut used = vec![false; poles.len()];
    for i in 0..poles.len() {
        if used[i] {
            continue;
        }
        // Orbit representative: poles are sorted, so the first unused pole
        // of an orbit is its minimum.
        let rep = poles[i].clone();
        let mut point = rep.clone();
        for _ in 0..ctx.m() {
            if let Ok(pos) = poles.binary_search(&point) {
                used[pos] = true;
            }
            point = point.mul(ctx.zeta());
        }
        let res = form.residue_at(&rep)?;
        let residue = res.as_prime_residue().ok_or(FormsError::NotLogarithmic {
            reason: format!("residue {res} at {rep} lies outside F_p"),
        })?;
        entries.push(residue);
    }
    Ok(ResidueType::new(form.field().p(), ctx.m(), &entries)?)
}

/// One of the three distinguished branch values of a three-point cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchValue {
    Zero,
    One,
    Infinity,
}

/// The fiber of a cover above one branch value: the rational fiber points
/// with their ramification indices, plus closure points that do not split
/// over the ambient field, aggregated as (index, count) pairs.
#[derive(Clone, Debug, Serialize)]
pub struct FiberPortrait {
    pub branch: BranchValue,
    pub points: Vec<(Point, u64)>,
    pub unsplit: Vec<(u64, u64)>,
}

impl FiberPortrait {
    /// Every ramification index in the fiber, one entry per closure point,
    /// sorted descending.
    pub fn index_multiset(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.points.iter().map(|(_, e)| *e).collect();
        for &(e, count) in &self.unsplit {
            out.extend(std::iter::repeat_n(e, count as usize));
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Sum of indices over the whole fiber; always the covering degree.
    pub fn total_degree(&self) -> u64 {
        self.points.iter().map(|(_, e)| e).sum::<u64>()
            + self.unsplit.iter().map(|&(e, c)| e * c).sum::<u64>()
    }

    pub fn index_at(&self, point: &Point) -> Option<u64> {
        self.points
            .iter()
            .find(|(q, _)| q == point)
            .map(|(_, e)| *e)
    }

    /// Number of closure points with the given index (split or not).
    pub fn count_with_index(&self, index: u64) -> u64 {
        let split = self.points.iter().filter(|(_, e)| *e == index).count() as u64;
        let unsplit: u64 = self
            .unsplit
            .iter()
            .filter(|(e, _)| *e == index)
            .map(|(_, c)| c)
            .sum();
        split + unsplit
    }
}

/// Ramification data of a cover of the line over the branch values
/// 0, 1, infinity, with a flag for branching anywhere else.
#[derive(Clone, Debug, Serialize)]
pub struct RamificationPortrait {
    pub degree: u64,
    pub fibers: Vec<FiberPortrait>,
    pub branched_outside: bool,
    p: u64,
}

impl RamificationPortrait {
    pub(crate) fn assemble(
        p: u64,
        degree: u64,
        fibers: Vec<FiberPortrait>,
        branched_outside: bool,
    ) -> RamificationPortrait {
        debug_assert_eq!(fibers.len(), 3);
        debug_assert!(fibers.iter().all(|f| f.total_degree() == degree));
        RamificationPortrait {
            degree,
            fibers,
            branched_outside,
            p,
        }
    }

    pub fn fiber(&self, branch: BranchValue) -> &FiberPortrait {
        self.fibers
            .iter()
            .find(|f| f.branch == branch)
            .expect("portraits always carry all three fibers")
    }

    /// Tame everywhere over the three branch values: no index divisible
    /// by the characteristic.
    pub fn is_tame(&self) -> bool {
        self.fibers.iter().all(|f| {
            f.points.iter().all(|(_, e)| e % self.p != 0)
                && f.unsplit.iter().all(|(e, _)| e % self.p != 0)
        })
    }
}

/// Lift an element of the prime subfield into a larger field.
pub fn lift_prime_element(x: &FqElement, target: &Field) -> Result<FqElement, FormsError> {
    if x.field() == target {
        return Ok(x.clone());
    }
    match x.as_prime_residue() {
        Some(r) if x.field().p() == target.p() => Ok(target.from_residue(r)),
        _ => Err(FormsError::ExtendField),
    }
}

/// View a prime-field polynomial inside an extension of the same p.
pub fn lift_prime_poly(f: &Polynomial, target: &Field) -> Result<Polynomial, FormsError> {
    let coeffs: Result<Vec<FqElement>, FormsError> = f
        .coeffs()
        .iter()
        .map(|c| lift_prime_element(c, target))
        .collect();
    Ok(Polynomial::new(target.clone(), coeffs?))
}

impl DifferentialForm {
    /// View a form with prime-subfield coefficients inside an extension.
    pub fn lift_to(&self, target: &Field) -> Result<DifferentialForm, FormsError> {
        let num = lift_prime_poly(self.f.num(), target)?;
        let den = lift_prime_poly(self.f.den(), target)?;
        DifferentialForm::new(RationalFunction::new(num, den))
    }
}

/// Run `goodness` over the smallest extension where the poles split and a
/// primitive m-th root of unity exists. The form must be defined over the
/// prime field. Returns the report together with the context used.
pub fn goodness_over_splitting_field(
    form: &DifferentialForm,
    m: u64,
) -> Result<(GoodnessReport, EquivariantContext), FormsError> {
    let base = form.field();
    assert!(base.is_prime_field(), "auto-extension starts from F_p");
    let e_split = form.f().den().splitting_degree();
    let e_root = Field::required_root_degree(base.p(), m).map_err(FormsError::Algebra)? as u64;
    let e = num_integer::lcm(e_split, e_root) as usize;
    if e == 1 {
        let ctx = EquivariantContext::new(base, m)?;
        return Ok((goodness(form, &ctx)?, ctx));
    }
    let ext = Field::extension(base.p(), e).map_err(FormsError::Algebra)?;
    let lifted = form.lift_to(&ext)?;
    let ctx = EquivariantContext::new(&ext, m)?;
    Ok((goodness(&lifted, &ctx)?, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn form_over(field: &Field, num: &[i64], den: &[i64]) -> DifferentialForm {
        DifferentialForm::new(RationalFunction::new(
            Polynomial::from_residues(field, num),
            Polynomial::from_residues(field, den),
        ))
        .unwrap()
    }

    #[test]
    fn dlog_of_z() {
        let g = RationalFunction::from_poly(Polynomial::var(&f5()));
        let w = DifferentialForm::d_log(&g).unwrap();
        assert_eq!(w, form_over(&f5(), &[1], &[0, 1]));
        assert_eq!(w.ord_at(&Point::Infinity), -1);
        assert_eq!(w.residue_at(&f5().zero()).unwrap(), f5().one());
    }

    #[test]
    fn dlog_of_standard_witness() {
        // g = (z^3 - 1)/z^3 over F_5 gives 3 dz / (z^4 - z).
        let num = Polynomial::from_residues(&f5(), &[-1, 0, 0, 1]);
        let den = Polynomial::monomial(f5().one(), 3);
        let g = RationalFunction::new(num, den);
        let w = DifferentialForm::d_log(&g).unwrap();
        assert_eq!(w, form_over(&f5(), &[3], &[0, -1, 0, 0, 1]));
        // ord at infinity is h - 1 = 2.
        assert_eq!(w.ord_at(&Point::Infinity), 2);
    }

    #[test]
    fn dlog_of_constant_is_rejected() {
        let g = RationalFunction::constant(f5().from_residue(3));
        assert_eq!(DifferentialForm::d_log(&g), Err(FormsError::ZeroForm));
    }

    #[test]
    fn ord_examples() {
        let w = form_over(&f5(), &[1], &[0, 1]);
        assert_eq!(w.ord_at(&Point::Infinity), -1);
        let dz = form_over(&f5(), &[1], &[1]);
        assert_eq!(dz.ord_at(&Point::Infinity), -2);
    }

    #[test]
    fn residue_computations() {
        // dz/(z^3 - 1) over F_7 at 1: 1/3 = 5.
        let w = form_over(&f7(), &[1], &[-1, 0, 0, 1]);
        assert_eq!(w.residue_at(&f7().one()).unwrap(), f7().from_residue(5));
        // d log((z^h - 1)/z^h) at 0 has residue -h.
        let h = 3u64;
        let g = RationalFunction::new(
            Polynomial::from_residues(&f5(), &[-1, 0, 0, 1]),
            Polynomial::monomial(f5().one(), h as usize),
        );
        let w = DifferentialForm::d_log(&g).unwrap();
        assert_eq!(w.residue_at(&f5().zero()).unwrap(), f5().from_int(-3));
    }

    #[test]
    fn residue_of_dlog_is_ord() {
        // residue of dg/g at a equals ord_a(g) mod p.
        let f5 = f5();
        let g = RationalFunction::new(
            Polynomial::linear_root(&f5.from_residue(2)).pow(3),
            Polynomial::linear_root(&f5.from_residue(4)).pow(7),
        );
        let w = DifferentialForm::d_log(&g).unwrap();
        assert_eq!(
            w.residue_at(&f5.from_residue(2)).unwrap(),
            f5.from_residue(3)
        );
        assert_eq!(w.residue_at(&f5.from_residue(4)).unwrap(), f5.from_int(-7));
    }

    #[test]
    fn logarithmic_detection() {
        let w = form_over(&f5(), &[1], &[0, 1]);
        let witness = w.is_logarithmic().unwrap().unwrap();
        assert_eq!(witness, RationalFunction::from_poly(Polynomial::var(&f5())));

        // Double pole.
        let w = form_over(&f5(), &[1], &[0, 0, 1]);
        assert_eq!(w.is_logarithmic().unwrap(), None);

        // Residue outside F_p.
        let f25 = Field::extension(5, 2).unwrap();
        let u = f25.from_coeffs(&[0, 1]).unwrap();
        let w = DifferentialForm::new(RationalFunction::new(
            Polynomial::constant(u),
            Polynomial::var(&f25),
        ))
        .unwrap();
        assert_eq!(w.is_logarithmic().unwrap(), None);

        // Unsplit poles.
        let w = form_over(&f7(), &[1], &[1, 0, 1]);
        assert_eq!(w.is_logarithmic(), Err(FormsError::ExtendField));
    }

    #[test]
    fn equivariance_exponents() {
        // dz/(z^3 - 1) with m = 3 over F_7: c = 1.
        let w = form_over(&f7(), &[1], &[-1, 0, 0, 1]);
        let ctx = EquivariantContext::new(&f7(), 3).unwrap();
        assert_eq!(equivariance_exponent(&w, &ctx), Some(1));

        // dz/z is invariant for every m.
        let w = form_over(&f5(), &[1], &[0, 1]);
        for m in [1u64, 2, 4] {
            let ctx = EquivariantContext::new(&f5(), m).unwrap();
            assert_eq!(equivariance_exponent(&w, &ctx), Some(0));
        }

        // dz/(z - 1) with m = 2 over F_5: poles not stable.
        let w = form_over(&f5(), &[1], &[-1, 1]);
        let ctx = EquivariantContext::new(&f5(), 2).unwrap();
        assert_eq!(equivariance_exponent(&w, &ctx), None);
    }

    #[test]
    fn goodness_of_standard_nonprimitive_form() {
        // 4 dz/(z^5 - z) over F_5, m = 4, conductor 4.
        let w = form_over(&f5(), &[4], &[0, -1, 0, 0, 0, 1]);
        let ctx = EquivariantContext::new(&f5(), 4).unwrap();
        let report = goodness(&w, &ctx).unwrap();
        assert!(report.is_good);
        assert_eq!(report.conductor_h, Some(4));
        assert_eq!(report.primitive, Some(false));
        assert_eq!(report.exponent, 0);
        assert_eq!(report.zero_location, Some(Point::Infinity));
    }

    #[test]
    fn goodness_of_primitive_form() {
        // dz/(z^3 - 1) over F_7, m = 3: good, conductor 2, primitive.
        let w = form_over(&f7(), &[1], &[-1, 0, 0, 1]);
        let ctx = EquivariantContext::new(&f7(), 3).unwrap();
        let report = goodness(&w, &ctx).unwrap();
        assert!(report.is_good);
        assert_eq!(report.conductor_h, Some(2));
        assert_eq!(report.primitive, Some(true));
        assert_eq!((report.conductor_h.unwrap() + 1) % 3, 0);
        // The raw residue at the representative z = 1 is 1/3 = 5, whose
        // orbit under multiplication by zeta_3 = 2 canonicalizes to 3.
        let t = report.residue_type.unwrap();
        assert_eq!(t.entries(), &[3]);
        assert_eq!(t, ResidueType::new(7, 3, &[5]).unwrap());
    }

    #[test]
    fn conductor_one_form_is_good_at_infinity() {
        // dz/(z^2 - 1) over F_5, m = 1: empty zero divisor, conductor 1,
        // with the zero carried by convention at infinity.
        let w = form_over(&f5(), &[1], &[-1, 0, 1]);
        let ctx = EquivariantContext::trivial(&f5());
        let report = goodness(&w, &ctx).unwrap();
        assert!(report.is_good);
        assert_eq!(report.conductor_h, Some(1));
        assert_eq!(report.zero_location, Some(Point::Infinity));
        let t = report.residue_type.unwrap();
        assert_eq!(t.entries(), &[2, 3]);
    }

    #[test]
    fn form_with_no_regular_fixed_point_is_not_good() {
        // dz/z has simple poles at both fixed points and no zero.
        let w = form_over(&f5(), &[1], &[0, 1]);
        let ctx = EquivariantContext::trivial(&f5());
        let report = goodness(&w, &ctx).unwrap();
        assert!(!report.is_good);
    }

    #[test]
    fn extract_type_scales_with_the_form() {
        // 3 dz/(z^4 - z) over F_5 has poles at the cube roots of unity,
        // so the analysis runs over F_25.
        let f25 = Field::extension(5, 2).unwrap();
        let w = form_over(&f5(), &[3], &[0, -1, 0, 0, 1])
            .lift_to(&f25)
            .unwrap();
        let ctx = EquivariantContext::trivial(&f25);
        let report = goodness(&w, &ctx).unwrap();
        let base_type = report.residue_type.unwrap();
        // Residues sum to zero: 2 at the origin, 1 at each cube root.
        assert_eq!(base_type.entries(), &[1, 1, 1, 2]);
        for unit in 2..5u64 {
            let scaled = w.scale(&f25.from_residue(unit)).unwrap();
            let scaled_type = goodness(&scaled, &ctx).unwrap().residue_type.unwrap();
            assert_eq!(scaled_type, base_type.scaled(unit).unwrap());
        }
    }

    #[test]
    fn divisor_degree_is_minus_two() {
        let f25 = Field::extension(5, 2).unwrap();
        let w = form_over(&f5(), &[3], &[0, -1, 0, 0, 1])
            .lift_to(&f25)
            .unwrap();
        let total: i64 = w.divisor().unwrap().iter().map(|(_, o)| o).sum();
        assert_eq!(total, -2);
    }

    #[test]
    fn auto_extension_for_unsplit_poles() {
        // 3 dz/(z^4 - z) over F_5 has poles at the cube roots of unity,
        // which only split over F_25.
        let w = form_over(&f5(), &[3], &[0, -1, 0, 0, 1]);
        let (report, ctx) = goodness_over_splitting_field(&w, 1).unwrap();
        assert_eq!(ctx.field().degree(), 2);
        assert!(report.is_good);
        assert_eq!(report.conductor_h, Some(3));
    }

    #[test]
    fn coordinate_inversion_moves_the_zero() {
        let w = form_over(&f7(), &[1], &[-1, 0, 0, 1]);
        let ctx = EquivariantContext::new(&f7(), 3).unwrap();
        let inverted = w.invert_coordinate();
        let report = goodness(&inverted, &ctx).unwrap();
        assert!(report.is_good);
        assert_eq!(report.zero_location, Some(Point::Finite(f7().zero())));
        assert_eq!(report.conductor_h, Some(2));
        // Inverting twice restores the original form.
        assert_eq!(inverted.invert_coordinate(), w);
    }
}
