//! Univariate polynomials over F_{p^d}.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty list and its degree is `None`. Root finding
//! reports exactly the roots lying in the ambient field, together with the
//! degree of the part that only splits in proper extensions.

use serde::{Serialize, Serializer};
use std::fmt;

use super::field::{Field, FqElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FqElement>,
}

/// Roots of a polynomial inside the ambient field.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub roots: Vec<(FqElement, u64)>,
    /// Degree of the cofactor with no roots in the ambient field.
    pub unsplit_degree: u64,
}

impl Polynomial {
    pub fn new(field: Field, mut coeffs: Vec<FqElement>) -> Polynomial {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    pub fn constant(c: FqElement) -> Polynomial {
        let field = c.field().clone();
        Polynomial::new(field, vec![c])
    }

    /// c * z^k
    pub fn monomial(c: FqElement, k: usize) -> Polynomial {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(field, coeffs)
    }

    /// The identity polynomial z.
    pub fn var(field: &Field) -> Polynomial {
        Polynomial::monomial(field.one(), 1)
    }

    /// z - a
    pub fn linear_root(a: &FqElement) -> Polynomial {
        let field = a.field().clone();
        Polynomial::new(field, vec![a.neg(), a.field().one()])
    }

    pub fn from_residues(field: &Field, coeffs: &[i64]) -> Polynomial {
        let cs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        Polynomial::new(field.clone(), cs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> FqElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Polynomial::new(self.field.clone(), out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Polynomial::new(self.field.clone(), out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Polynomial::new(self.field.clone(), out)
    }

    pub fn mul_scalar(&self, c: &FqElement) -> Polynomial {
        Polynomial::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Division with remainder. Panics when `other` is zero.
    pub fn divmod(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!other.is_zero(), "polynomial division by zero");
        let db = other.coeffs.len() - 1;
        if self.coeffs.len() < other.coeffs.len() {
            return (Polynomial::zero(&self.field), self.clone());
        }
        let lead_inv = other.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - db] = c.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[i - db + j] = rem[i - db + j].sub(&c.mul(b));
            }
        }
        (
            Polynomial::new(self.field.clone(), quot),
            Polynomial::new(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, other: &Polynomial) -> Polynomial {
        self.divmod(other).1
    }

    /// Exact division; panics when the remainder is nonzero.
    pub fn div_exact(&self, other: &Polynomial) -> Polynomial {
        let (q, r) = self.divmod(other);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.mul_scalar(&self.leading().inv())
    }

    /// Monic gcd; gcd(f, 0) = monic(f). Panics when both are zero.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        assert!(
            !(self.is_zero() && other.is_zero()),
            "gcd of two zero polynomials"
        );
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative; in characteristic p, (z^p)' = 0.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(&self.field);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let k = self.field.from_residue((i as u64) % self.field.p());
            out.push(c.mul(&k));
        }
        Polynomial::new(self.field.clone(), out)
    }

    pub fn eval(&self, x: &FqElement) -> FqElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Polynomial) -> Polynomial {
        let modulus = modulus.monic();
        let mut base = self.rem(&modulus);
        let mut acc = Polynomial::one(&self.field).rem(&modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_rem(&base, &modulus);
            }
            base = base.mul_rem(&base, &modulus);
            e >>= 1;
        }
        acc
    }

    /// self * other mod a monic modulus, fused to avoid building the
    /// quotient.
    fn mul_rem(&self, other: &Polynomial, modulus: &Polynomial) -> Polynomial {
        debug_assert!(modulus.leading().is_one());
        let dm = modulus.coeffs.len() - 1;
        if dm == 0 {
            return Polynomial::zero(&self.field);
        }
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut buf = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                buf[i + j] = buf[i + j].add(&a.mul(b));
            }
        }
        for i in (dm..buf.len()).rev() {
            if buf[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut buf[i], self.field.zero());
            for (j, mj) in modulus.coeffs[..dm].iter().enumerate() {
                if !mj.is_zero() {
                    buf[i - dm + j] = buf[i - dm + j].sub(&c.mul(mj));
                }
            }
        }
        buf.truncate(dm);
        Polynomial::new(self.field.clone(), buf)
    }

    /// f(c z)
    pub fn scale_argument(&self, c: &FqElement) -> Polynomial {
        let mut power = self.field.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&power));
            power = power.mul(c);
        }
        Polynomial::new(self.field.clone(), out)
    }

    /// f(a z + b)
    pub fn compose_linear(&self, a: &FqElement, b: &FqElement) -> Polynomial {
        let lin = Polynomial::new(self.field.clone(), vec![b.clone(), a.clone()]);
        let mut acc = Polynomial::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    /// f(z^k)
    pub fn substitute_power(&self, k: usize) -> Polynomial {
        assert!(k >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Polynomial::new(self.field.clone(), out)
    }

    /// If every exponent with a nonzero coefficient is divisible by k,
    /// returns g with g(z^k) = f(z).
    pub fn decimate(&self, k: usize) -> Option<Polynomial> {
        assert!(k >= 1);
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % k == 0 {
                out.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Polynomial::new(self.field.clone(), out))
    }

    /// Coefficients reversed: z^deg * f(1/z).
    pub fn reverse(&self) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial::new(self.field.clone(), coeffs)
    }

    /// The unique g with g^p = f, when f is a p-th power (zero derivative).
    pub fn pth_root(&self) -> Option<Polynomial> {
        let p = self.field.p() as usize;
        let g = self.decimate(p)?;
        Some(Polynomial::new(
            self.field.clone(),
            g.coeffs.iter().map(|c| c.pth_root()).collect(),
        ))
    }

    /// Squarefree decomposition over a perfect field of characteristic p:
    /// returns pairs (e, s_e) with f = lead * prod s_e^e, the s_e squarefree,
    /// pairwise coprime and monic, sorted by e.
    pub fn squarefree_decomposition(&self) -> Vec<(u64, Polynomial)> {
        assert!(!self.is_zero());
        let p = self.field.p();
        let mut result: Vec<(u64, Polynomial)> = Vec::new();
        let mut f = self.monic();
        let mut mult = 1u64;
        loop {
            if f.degree() == Some(0) || f.is_zero() {
                break;
            }
            let fd = f.derivative();
            if fd.is_zero() {
                f = f.pth_root().expect("zero derivative implies a p-th power");
                mult *= p;
                continue;
            }
            let mut c = f.gcd(&fd);
            let mut w = f.div_exact(&c);
            let mut k = 1u64;
            while w.degree() != Some(0) {
                let y = w.gcd(&c);
                let fac = w.div_exact(&y);
                if fac.degree().unwrap_or(0) > 0 {
                    result.push((k * mult, fac));
                }
                c = c.div_exact(&y);
                w = y;
                k += 1;
            }
            f = c;
        }
        result.sort_by_key(|(e, _)| *e);
        result
    }

    /// Product of the distinct irreducible factors (the radical), monic.
    pub fn squarefree_part(&self) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for (_, s) in self.squarefree_decomposition() {
            acc = acc.mul(&s);
        }
        acc
    }

    /// Least e such that every irreducible factor splits over F_{q^e}
    /// (the lcm of the factor degrees), found by distinct-degree analysis.
    pub fn splitting_degree(&self) -> u64 {
        assert!(!self.is_zero());
        let mut s = self.squarefree_part();
        let mut lcm = 1u64;
        let mut frob = Polynomial::var(&self.field).rem(&s);
        let mut k = 0u64;
        while s.degree().unwrap_or(0) > 0 {
            k += 1;
            frob = frob.pow_mod(self.field.order(), &s);
            let diff = frob.sub(&Polynomial::var(&self.field));
            let g = if diff.is_zero() {
                s.clone()
            } else {
                s.gcd(&diff)
            };
            if g.degree().unwrap_or(0) > 0 {
                lcm = num_integer::lcm(lcm, k);
                s = s.div_exact(&g);
                if s.degree().unwrap_or(0) > 0 {
                    frob = frob.rem(&s);
                }
            }
        }
        lcm
    }

    /// All roots in the ambient field with multiplicities, plus the degree
    /// of the rootless cofactor. Panics on the zero polynomial.
    pub fn roots_in_field(&self) -> RootReport {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        if self.degree() == Some(0) {
            return RootReport {
                roots: Vec::new(),
                unsplit_degree: 0,
            };
        }
        let field = &self.field;
        let work = self.monic();
        // gcd(f, z^q - z) collects the distinct rational roots.
        let xq = Polynomial::var(field).pow_mod(field.order(), &work);
        let diff = xq.sub(&Polynomial::var(field));
        let split = if diff.is_zero() {
            work.clone()
        } else {
            work.gcd(&diff)
        };
        let mut roots = Vec::new();
        let mut linear = Vec::new();
        collect_roots(&split, &mut linear);
        linear.sort();
        let mut remaining = work;
        for alpha in linear {
            let lf = Polynomial::linear_root(&alpha);
            let mut mult = 0u64;
            loop {
                let (q, r) = remaining.divmod(&lf);
                if r.is_zero() {
                    remaining = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            debug_assert!(mult >= 1);
            roots.push((alpha, mult));
        }
        RootReport {
            roots,
            unsplit_degree: remaining.degree().unwrap_or(0) as u64,
        }
    }

    /// Decides whether f = c (z - a)^e over the algebraic closure. For
    /// F_q-rational input the point a is automatically F_q-rational, so it
    /// is returned as an ambient element. Requires f nonconstant.
    pub fn linear_power(&self) -> Option<(FqElement, u64)> {
        let e = match self.degree() {
            Some(e) if e >= 1 => e as u64,
            _ => panic!("linear_power requires a nonconstant polynomial"),
        };
        let p = self.field.p();
        // Strip p-th powers: (z - a)^{p^v e'} is the p^v-th power of
        // (z - a)^{e'}, and taking p-th roots preserves the root a.
        let mut g = self.monic();
        while g.derivative().is_zero() {
            g = g.pth_root()?;
        }
        let ep = g.degree().unwrap() as u64;
        if ep == 0 || ep.is_multiple_of(p) {
            // A (y - a)^e with p | e has zero derivative; g does not.
            return None;
        }
        // For monic (y - a)^ep with p not dividing ep, a = -c_{ep-1} / ep.
        let ep_el = self.field.from_residue(ep % p);
        let alpha = g.coeff(ep as usize - 1).div(&ep_el).neg();
        let expanded = Polynomial::linear_root(&alpha).pow(ep);
        if expanded != g {
            return None;
        }
        debug_assert_eq!(
            Polynomial::linear_root(&alpha)
                .pow(e)
                .mul_scalar(&self.leading()),
            *self
        );
        Some((alpha, e))
    }

    pub fn to_wire(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_wire()).collect();
        parts.join(",")
    }
}

fn collect_roots(split: &Polynomial, out: &mut Vec<FqElement>) {
    // `split` is monic with distinct rational roots only.
    let field = split.field().clone();
    match split.degree() {
        None | Some(0) => {}
        Some(1) => {
            out.push(split.coeff(0).neg());
        }
        Some(_) => {
            let q = field.order();
            if q <= (1 << 12) {
                for x in field.elements() {
                    if split.eval(&x).is_zero() {
                        out.push(x);
                    }
                }
            } else if field.p() > 2 {
                // Deterministic splitting with quadratic residues: the
                // shift c walks the field from the top of the index order,
                // where elements lie outside proper subfields, because the
                // character of (root + c) is constant on Frobenius orbits
                // whenever c sits in a subfield fixed by them.
                let half = (q - 1) / 2;
                for idx in (0..field.order()).rev() {
                    let c = field.element_from_index(idx);
                    let shifted = Polynomial::new(field.clone(), vec![c.clone(), field.one()]);
                    let h = shifted.pow_mod(half, split).sub(&Polynomial::one(&field));
                    if h.is_zero() {
                        continue;
                    }
                    let g = split.gcd(&h);
                    let dg = g.degree().unwrap_or(0);
                    if dg > 0 && dg < split.degree().unwrap() {
                        collect_roots(&g, out);
                        collect_roots(&split.div_exact(&g), out);
                        return;
                    }
                }
                unreachable!("quadratic-character splitting always separates distinct roots");
            } else {
                panic!("root extraction over large characteristic-2 fields is not supported");
            }
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.to_wire())?,
                1 => write!(f, "{}*z", c.to_wire())?,
                _ => write!(f, "{}*z^{}", c.to_wire(), i)?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}
