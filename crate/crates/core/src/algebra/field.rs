//! Finite fields F_{p^d} and their elements.
//!
//! A `Field` is a cheap-to-clone handle. Elements carry their field handle
//! and are immutable, so everything here is safe to share across threads.
//! The extension modulus is chosen deterministically (the smallest monic
//! irreducible of degree d, coefficient tuples compared as base-p integers)
//! so runs are reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::fp;
use crate::error::AlgebraError;

#[derive(Debug)]
struct FieldInner {
    p: u64,
    d: usize,
    modulus: Vec<u64>,
}

/// Handle to a finite field F_{p^d}.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.d == other.0.d && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.d.hash(state);
        self.0.modulus.hash(state);
    }
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        Self::extension(p, 1)
    }

    /// F_{p^d} with the deterministic modulus.
    pub fn extension(p: u64, d: usize) -> Result<Field, AlgebraError> {
        if !fp::is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if d == 0 {
            return Err(AlgebraError::BadExtensionDegree(d));
        }
        if (d as u32) * (64 - p.leading_zeros()) > 120 {
            return Err(AlgebraError::FieldTooLarge { p, d });
        }
        let modulus = fp::smallest_irreducible(p, d);
        Ok(Field(Arc::new(FieldInner { p, d, modulus })))
    }

    /// F_{p^d} with a caller-supplied monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field, AlgebraError> {
        if !fp::is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let modulus = fp::trim(modulus.into_iter().map(|c| c % p).collect());
        let d = match fp::deg(&modulus) {
            Some(d) if d >= 1 => d,
            _ => return Err(AlgebraError::BadExtensionDegree(0)),
        };
        if d > 1 && !fp::is_irreducible(&modulus, p) {
            return Err(AlgebraError::ReducibleModulus);
        }
        if *modulus.last().unwrap() != 1 {
            return Err(AlgebraError::ReducibleModulus);
        }
        Ok(Field(Arc::new(FieldInner { p, d, modulus })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.d
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Number of elements p^d.
    pub fn order(&self) -> u128 {
        (self.0.p as u128).pow(self.0.d as u32)
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.d == 1
    }

    pub fn zero(&self) -> FqElement {
        FqElement {
            field: self.clone(),
            coeffs: vec![0; self.0.d],
        }
    }

    pub fn one(&self) -> FqElement {
        self.from_residue(1)
    }

    /// Embed a base-field residue as a constant.
    pub fn from_residue(&self, r: u64) -> FqElement {
        let mut coeffs = vec![0; self.0.d];
        coeffs[0] = r % self.0.p;
        FqElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_int(&self, n: i64) -> FqElement {
        let p = self.0.p as i64;
        let r = n.rem_euclid(p) as u64;
        self.from_residue(r)
    }

    /// Element with the given coordinates in the power basis (low to high).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElement, AlgebraError> {
        if coeffs.len() > self.0.d {
            return Err(AlgebraError::BadCoefficients {
                got: coeffs.len(),
                degree: self.0.d,
            });
        }
        let mut c = vec![0; self.0.d];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = x % self.0.p;
        }
        Ok(FqElement {
            field: self.clone(),
            coeffs: c,
        })
    }

    /// Inverse of `index`: the n-th element in the field's total order.
    pub fn element_from_index(&self, mut n: u128) -> FqElement {
        let p = self.0.p as u128;
        let mut coeffs = vec![0u64; self.0.d];
        for c in coeffs.iter_mut() {
            *c = (n % p) as u64;
            n /= p;
        }
        FqElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// All elements in the total order (0, 1, ..., p-1, z, z+1, ...).
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.order()).map(move |i| self.element_from_index(i))
    }

    /// Multiplicative order of `p` in (Z/m)^x, i.e. the least e with
    /// m | p^e - 1. Errors when gcd(m, p) > 1.
    pub fn required_root_degree(p: u64, m: u64) -> Result<usize, AlgebraError> {
        if m == 1 {
            return Ok(1);
        }
        if m == 0 || num_integer::gcd(p, m) != 1 {
            return Err(AlgebraError::InvalidRootOrder { p, m });
        }
        let base = p % m;
        let mut pow = base;
        for e in 1..=m {
            if pow == 1 {
                return Ok(e as usize);
            }
            pow = ((pow as u128 * base as u128) % m as u128) as u64;
        }
        Err(AlgebraError::InvalidRootOrder { p, m })
    }

    /// The smallest (in the total order) primitive m-th root of unity, if
    /// m divides p^d - 1.
    pub fn primitive_root_of_unity(&self, m: u64) -> Result<FqElement, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::InvalidRootOrder { p: self.0.p, m });
        }
        if m == 1 {
            return Ok(self.one());
        }
        let q1 = self.order() - 1;
        if !q1.is_multiple_of(m as u128) {
            return Err(AlgebraError::NoSuchRootOfUnity {
                m,
                p: self.0.p,
                d: self.0.d,
            });
        }
        let mut prime_divisors = Vec::new();
        let mut rest = m;
        let mut l = 2;
        while l * l <= rest {
            if rest.is_multiple_of(l) {
                prime_divisors.push(l);
                while rest.is_multiple_of(l) {
                    rest /= l;
                }
            }
            l += 1;
        }
        if rest > 1 {
            prime_divisors.push(rest);
        }
        // x^{(q-1)/m} has order dividing m; walk elements until the order
        // is exactly m, then minimize over the primitive powers.
        for x in self.elements().skip(1) {
            let candidate = x.pow(q1 / m as u128);
            let primitive = !candidate.is_one()
                && prime_divisors
                    .iter()
                    .all(|&l| !candidate.pow((m / l) as u128).is_one());
            if !primitive {
                continue;
            }
            let mut best = candidate.clone();
            let mut power = candidate.clone();
            for j in 2..=m {
                power = power.mul(&candidate);
                if num_integer::gcd(j, m) == 1 && power < best {
                    best = power.clone();
                }
            }
            return Ok(best);
        }
        unreachable!("m | q - 1 guarantees a primitive m-th root exists")
    }

    fn assert_same(&self, other: &Field) {
        assert!(
            self == other,
            "mixed field operands: F_{}^{} vs F_{}^{}",
            self.0.p,
            self.0.d,
            other.0.p,
            other.0.d
        );
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Field", 3)?;
        st.serialize_field("p", &self.0.p)?;
        st.serialize_field("d", &self.0.d)?;
        st.serialize_field("modulus", &self.0.modulus)?;
        st.end()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.d == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{{{}^{}}}", self.0.p, self.0.d)
        }
    }
}

/// An element of F_{p^d}: d residues mod p in the power basis of the modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl FqElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Key for the field's total order: the base-p integer with the highest
    /// coefficient most significant.
    pub fn index(&self) -> u128 {
        let p = self.field.p() as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    /// The residue when the element lies in the prime subfield.
    pub fn as_prime_residue(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &FqElement) -> FqElement {
        self.field.assert_same(&other.field);
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp::add(a, b, p))
            .collect();
        FqElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &FqElement) -> FqElement {
        self.field.assert_same(&other.field);
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp::sub(a, b, p))
            .collect();
        FqElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> FqElement {
        let p = self.field.p();
        FqElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| fp::neg(a, p)).collect(),
        }
    }

    pub fn mul(&self, other: &FqElement) -> FqElement {
        self.field.assert_same(&other.field);
        let p = self.field.p();
        let d = self.field.degree();
        if d == 1 {
            return FqElement {
                field: self.field.clone(),
                coeffs: vec![fp::mul(self.coeffs[0], other.coeffs[0], p)],
            };
        }
        // Schoolbook with u128 accumulators (p < 2^31 and d < 128 keep the
        // sums in range), then in-place reduction by the monic modulus.
        let mut acc = vec![0u128; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        let mut buf: Vec<u64> = acc.iter().map(|&x| (x % p as u128) as u64).collect();
        let modulus = self.field.modulus();
        for i in (d..buf.len()).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for (j, &mj) in modulus[..d].iter().enumerate() {
                if mj != 0 {
                    buf[i - d + j] = fp::sub(buf[i - d + j], fp::mul(c, mj, p), p);
                }
            }
        }
        buf.truncate(d);
        FqElement {
            field: self.field.clone(),
            coeffs: buf,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FqElement {
        assert!(!self.is_zero(), "division by zero in {}", self.field);
        let p = self.field.p();
        if self.field.degree() == 1 {
            return FqElement {
                field: self.field.clone(),
                coeffs: vec![fp::inv(self.coeffs[0], p)],
            };
        }
        let inv = fp::poly_modinv(&fp::trim(self.coeffs.clone()), self.field.modulus(), p);
        let mut coeffs = vec![0; self.field.degree()];
        coeffs[..inv.len()].copy_from_slice(&inv);
        FqElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn div(&self, other: &FqElement) -> FqElement {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut exp: u128) -> FqElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// The unique p-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self) -> FqElement {
        let d = self.field.degree() as u32;
        if d == 1 {
            return self.clone();
        }
        let exp = (self.field.p() as u128).pow(d - 1);
        self.pow(exp)
    }

    /// Integer lift of a prime-subfield element into (-p/2, p/2].
    pub fn symmetric_lift(&self) -> Option<i64> {
        let r = self.as_prime_residue()? as i64;
        let p = self.field.p() as i64;
        Some(if r > p / 2 { r - p } else { r })
    }

    /// Wire encoding: decimal residue for d = 1, bracketed coefficient list
    /// for d > 1.
    pub fn to_wire(&self) -> String {
        if self.field.degree() == 1 {
            format!("{}", self.coeffs[0])
        } else {
            let inner: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            format!("[{}]", inner.join(","))
        }
    }
}

impl PartialOrd for FqElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElement {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert!(self.field == other.field);
        self.index().cmp(&other.index())
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire())
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire())
    }
}

impl Serialize for FqElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.field.degree() == 1 {
            s.serialize_u64(self.coeffs[0])
        } else {
            let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
            for c in &self.coeffs {
                seq.serialize_element(c)?;
            }
            seq.end()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let two = f5.from_residue(2);
        let three = f5.from_residue(3);
        assert!(two.add(&three).is_zero());
        assert_eq!(two.mul(&three), f5.one());
        assert_eq!(two.inv(), three);
    }

    #[test]
    fn extension_field_fermat() {
        let f9 = Field::extension(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        for x in f9.elements().skip(1) {
            assert!(x.pow(8).is_one(), "x = {x}");
        }
    }

    #[test]
    fn index_roundtrip_and_order() {
        let f49 = Field::extension(7, 2).unwrap();
        let mut last = None;
        for (i, x) in f49.elements().enumerate() {
            assert_eq!(x.index(), i as u128);
            assert_eq!(f49.element_from_index(i as u128), x);
            if let Some(prev) = last {
                assert!(prev < x);
            }
            last = Some(x);
        }
    }

    #[test]
    fn roots_of_unity() {
        let f7 = Field::prime(7).unwrap();
        let z3 = f7.primitive_root_of_unity(3).unwrap();
        assert_eq!(z3, f7.from_residue(2));
        assert!(f7.primitive_root_of_unity(4).is_err());
        let f9 = Field::extension(3, 2).unwrap();
        let z4 = f9.primitive_root_of_unity(4).unwrap();
        assert!(z4.pow(4).is_one());
        assert!(!z4.pow(2).is_one());
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f81 = Field::extension(3, 4).unwrap();
        for x in f81.elements().take(30) {
            assert_eq!(x.pth_root().pow(3), x);
        }
    }
}
