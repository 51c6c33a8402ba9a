//! Residue arithmetic mod p and dense polynomials over F_p.
//!
//! Internal helpers used to build extension fields: modulus search,
//! irreducibility testing and the element arithmetic behind `FqElement`.
//! Polynomials here are coefficient vectors over u64 residues, lowest
//! degree first, with no trailing zeros.

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut base: u64, mut exp: u128, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod p. Panics on zero.
pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "division by zero in F_{}", p);
    pow(a, p as u128 - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    // Deterministic Miller-Rabin for u64.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---- dense polynomials over F_p ----

pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

#[allow(dead_code)] // exercised by tests; kept for symmetry with poly_sub
pub fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = add(x, y, p);
    }
    trim(out)
}

pub fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = sub(x, y, p);
    }
    trim(out)
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add(out[i + j], mul(x, y, p), p);
        }
    }
    trim(out)
}

/// Division with remainder. Panics if the divisor is zero.
pub fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead_inv = inv(b[db], p);
    let mut quot = vec![0u64; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = mul(rem[i], lead_inv, p);
        if c == 0 {
            continue;
        }
        quot[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i - db + j] = sub(rem[i - db + j], mul(c, bj, p), p);
        }
    }
    (trim(quot), trim(rem))
}

pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(a, b, p).1
}

pub fn poly_monic(f: &[u64], p: u64) -> Vec<u64> {
    if f.is_empty() {
        return Vec::new();
    }
    let li = inv(*f.last().unwrap(), p);
    f.iter().map(|&c| mul(c, li, p)).collect()
}

/// Monic gcd; gcd(f, 0) = monic(f).
pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    poly_monic(&a, p)
}

pub fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

/// Inverse of a mod m (both over F_p), via the extended Euclidean
/// algorithm. Panics when gcd(a, m) != 1.
pub fn poly_modinv(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // Invariants: old_r = old_s * a (mod m), r = s * a (mod m).
    let mut old_r = trim(a.to_vec());
    let mut r = trim(m.to_vec());
    let mut old_s: Vec<u64> = vec![1];
    let mut s: Vec<u64> = Vec::new();
    while !r.is_empty() {
        let (q, rem) = poly_divrem(&old_r, &r, p);
        let next_s = poly_sub(&old_s, &poly_mul(&q, &s, p), p);
        old_r = r;
        r = rem;
        old_s = s;
        s = next_s;
    }
    assert!(
        deg(&old_r) == Some(0),
        "element is not invertible modulo the given polynomial"
    );
    let scale = inv(old_r[0], p);
    poly_rem(
        &old_s.iter().map(|&c| mul(c, scale, p)).collect::<Vec<_>>(),
        m,
        p,
    )
}

pub fn poly_powmod(f: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(f, m, p);
    let mut acc = poly_rem(&[1], m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility over F_p via the Rabin test: z^{p^d} = z mod f and
/// gcd(z^{p^{d/l}} - z, f) = 1 for every prime l dividing d.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let z = vec![0, 1];
    // Frobenius powers z^{p^k} mod f for k = 1..=d.
    let mut frob = Vec::with_capacity(d);
    let mut cur = z.clone();
    for _ in 0..d {
        cur = poly_powmod(&cur, p as u128, f, p);
        frob.push(cur.clone());
    }
    if poly_sub(&frob[d - 1], &z, p) != Vec::<u64>::new() {
        return false;
    }
    let mut rem = d;
    let mut l = 2;
    let mut prime_divisors = Vec::new();
    while l * l <= rem {
        if rem % l == 0 {
            prime_divisors.push(l);
            while rem % l == 0 {
                rem /= l;
            }
        }
        l += 1;
    }
    if rem > 1 {
        prime_divisors.push(rem);
    }
    for l in prime_divisors {
        let k = d / l;
        let diff = poly_sub(&frob[k - 1], &z, p);
        if deg(&poly_gcd(&diff, f, p)) != Some(0) {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree d over F_p,
/// coefficient tuples (c_0, ..., c_{d-1}) compared as base-p integers with
/// c_{d-1} most significant.
pub fn smallest_irreducible(p: u64, d: usize) -> Vec<u64> {
    assert!(d >= 1);
    if d == 1 {
        // z itself; unused for arithmetic.
        return vec![0, 1];
    }
    let mut coeffs = vec![0u64; d];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // Increment the low-coefficient-first odometer with c_{d-1} most
        // significant so candidates come in the field's total order.
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < d, "no irreducible of degree {} over F_{}", d, p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(13));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn divrem_roundtrip() {
        let p = 7;
        let a = vec![3, 0, 2, 5];
        let b = vec![1, 4];
        let (q, r) = poly_divrem(&a, &b, p);
        let back = poly_add(&poly_mul(&q, &b, p), &r, p);
        assert_eq!(back, a);
    }

    #[test]
    fn irreducible_detection() {
        // z^2 + 1 over F_7: -1 is a non-square mod 7.
        assert!(is_irreducible(&[1, 0, 1], 7));
        // z^2 - 1 factors.
        assert!(!is_irreducible(&[6, 0, 1], 7));
    }

    #[test]
    fn modulus_search_is_deterministic() {
        let m1 = smallest_irreducible(3, 4);
        let m2 = smallest_irreducible(3, 4);
        assert_eq!(m1, m2);
        assert!(is_irreducible(&m1, 3));
        assert_eq!(m1.len(), 5);
        assert_eq!(*m1.last().unwrap(), 1);
    }
}
