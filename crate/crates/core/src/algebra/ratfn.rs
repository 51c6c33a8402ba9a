//! Rational functions over F_{p^d} in canonical form.
//!
//! The invariants: numerator and denominator coprime, denominator monic,
//! zero represented as 0/1. Construction normalizes, so order of vanishing
//! at every point is preserved.

use serde::Serialize;
use std::fmt;

use super::field::{Field, FqElement};
use super::poly::Polynomial;

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduce num/den to canonical form. Panics when den is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> RationalFunction {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let field = num.field().clone();
            return RationalFunction {
                num,
                den: Polynomial::one(&field),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead_inv = den.leading().inv();
        num = num.mul_scalar(&lead_inv);
        den = den.mul_scalar(&lead_inv);
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        let field = p.field().clone();
        RationalFunction {
            num: p,
            den: Polynomial::one(&field),
        }
    }

    pub fn constant(c: FqElement) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn zero(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RationalFunction) -> RationalFunction {
        assert!(!other.is_zero(), "division by the zero function");
        RationalFunction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> RationalFunction {
        assert!(!self.is_zero(), "inverse of the zero function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> RationalFunction {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = RationalFunction::one(self.field());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self) -> RationalFunction {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RationalFunction::new(n, self.den.mul(&self.den))
    }

    /// f'(z)/f(z); the zero function has no logarithmic derivative.
    pub fn dlog(&self) -> RationalFunction {
        assert!(!self.is_zero(), "logarithmic derivative of zero");
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RationalFunction::new(n, self.num.mul(&self.den))
    }

    /// Evaluate; `None` at a pole.
    pub fn eval(&self, x: &FqElement) -> Option<FqElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).div(&d))
    }

    /// Order of vanishing at a finite point.
    pub fn ord_at(&self, alpha: &FqElement) -> i64 {
        if self.is_zero() {
            panic!("order of the zero function");
        }
        let lf = Polynomial::linear_root(alpha);
        let mut ord = 0i64;
        let mut n = self.num.clone();
        loop {
            let (q, r) = n.divmod(&lf);
            if r.is_zero() {
                ord += 1;
                n = q;
            } else {
                break;
            }
        }
        let mut d = self.den.clone();
        loop {
            let (q, r) = d.divmod(&lf);
            if r.is_zero() {
                ord -= 1;
                d = q;
            } else {
                break;
            }
        }
        ord
    }

    /// Order of vanishing at infinity: deg den - deg num.
    pub fn ord_at_infinity(&self) -> i64 {
        assert!(!self.is_zero());
        self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
    }

    /// f(c z)
    pub fn scale_argument(&self, c: &FqElement) -> RationalFunction {
        RationalFunction::new(self.num.scale_argument(c), self.den.scale_argument(c))
    }

    /// f(a z + b)
    pub fn compose_linear(&self, a: &FqElement, b: &FqElement) -> RationalFunction {
        RationalFunction::new(self.num.compose_linear(a, b), self.den.compose_linear(a, b))
    }

    /// f(1/z)
    pub fn invert_argument(&self) -> RationalFunction {
        let dn = self.num.degree().expect("zero function") as i64;
        let dd = self.den.degree().unwrap() as i64;
        let rn = self.num.reverse();
        let rd = self.den.reverse();
        // f(1/z) = rev(num) z^{dd - dn} / rev(den) when dd >= dn.
        if dd >= dn {
            let shift = Polynomial::monomial(self.field().one(), (dd - dn) as usize);
            RationalFunction::new(rn.mul(&shift), rd)
        } else {
            let shift = Polynomial::monomial(self.field().one(), (dn - dd) as usize);
            RationalFunction::new(rn, rd.mul(&shift))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn cancellation() {
        // (z^2 - 1)/(z - 1) reduces to z + 1.
        let num = Polynomial::from_residues(&f5(), &[-1, 0, 1]);
        let den = Polynomial::from_residues(&f5(), &[-1, 1]);
        let f = RationalFunction::new(num, den);
        assert_eq!(*f.num(), Polynomial::from_residues(&f5(), &[1, 1]));
        assert!(f.den().is_constant());
    }

    #[test]
    fn monic_normalization_folds_unit_into_numerator() {
        // (2z)/2 over F_5 becomes z/1.
        let num = Polynomial::from_residues(&f5(), &[0, 2]);
        let den = Polynomial::from_residues(&f5(), &[2]);
        let f = RationalFunction::new(num, den);
        assert_eq!(*f.num(), Polynomial::var(&f5()));
        assert_eq!(*f.den(), Polynomial::one(&f5()));
    }

    #[test]
    fn z_over_z_is_one() {
        let z = Polynomial::var(&f5());
        let f = RationalFunction::new(z.clone(), z);
        assert_eq!(f, RationalFunction::one(&f5()));
    }

    #[test]
    fn ord_bookkeeping() {
        // f = (z-1)^2 / z over F_5.
        let num = Polynomial::linear_root(&f5().from_residue(1)).pow(2);
        let den = Polynomial::var(&f5());
        let f = RationalFunction::new(num, den);
        assert_eq!(f.ord_at(&f5().from_residue(1)), 2);
        assert_eq!(f.ord_at(&f5().zero()), -1);
        assert_eq!(f.ord_at(&f5().from_residue(2)), 0);
        assert_eq!(f.ord_at_infinity(), -1);
    }

    #[test]
    fn invert_argument_roundtrip() {
        let num = Polynomial::from_residues(&f5(), &[1, 2, 1]);
        let den = Polynomial::from_residues(&f5(), &[0, 3, 0, 1]);
        let f = RationalFunction::new(num, den);
        let g = f.invert_argument().invert_argument();
        assert_eq!(f, g);
    }
}
