//! Residue types, integer lifts and their statistics, the realizability
//! inequality, existence/nonexistence certificates, and the local lifting
//! decision for groups with a Sylow p-subgroup of order p.

use serde::Serialize;

use crate::algebra::fp;
use crate::error::TypesError;

/// A tuple of nonzero residues mod p attached to the pole orbits of a form,
/// stored canonically: every entry replaced by the smallest element of its
/// orbit under multiplication by the m-th roots of unity, then sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueType {
    p: u64,
    m: u64,
    entries: Vec<u64>,
}

impl ResidueType {
    /// Validate and canonicalize a residue tuple.
    ///
    /// For m = 1 the entries must sum to zero mod p. For m > 1 a primitive
    /// m-th root of unity must exist in F_p, i.e. m | p - 1.
    pub fn new(p: u64, m: u64, entries: &[u64]) -> Result<ResidueType, TypesError> {
        if !fp::is_prime(p) {
            return Err(TypesError::NotPrime(p));
        }
        if m == 0 {
            return Err(TypesError::NonPositive);
        }
        if entries.is_empty() {
            return Err(TypesError::EmptyType);
        }
        let reduced: Vec<u64> = entries.iter().map(|&a| a % p).collect();
        if reduced.contains(&0) {
            return Err(TypesError::ZeroEntry);
        }
        if m == 1 {
            let sum = reduced.iter().fold(0u64, |acc, &a| (acc + a) % p);
            if sum != 0 {
                return Err(TypesError::NonzeroSum);
            }
        } else if !(p - 1).is_multiple_of(m) {
            return Err(TypesError::NoRootOfUnity { p, m });
        }
        let mut canonical: Vec<u64> = if m == 1 {
            reduced
        } else {
            let zeta = smallest_primitive_root(p, m);
            reduced
                .into_iter()
                .map(|a| {
                    let mut best = a;
                    let mut cur = a;
                    for _ in 1..m {
                        cur = fp::mul(cur, zeta, p);
                        best = best.min(cur);
                    }
                    best
                })
                .collect()
        };
        canonical.sort_unstable();
        Ok(ResidueType {
            p,
            m,
            entries: canonical,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Canonical entries, ascending.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Construction already canonicalizes, so two tuples are equivalent
    /// exactly when their canonical forms agree.
    pub fn equivalent(&self, other: &ResidueType) -> bool {
        self == other
    }

    /// The type scaled coordinatewise by a unit mod p.
    pub fn scaled(&self, c: u64) -> Result<ResidueType, TypesError> {
        let scaled: Vec<u64> = self
            .entries
            .iter()
            .map(|&a| fp::mul(a, c % self.p, self.p))
            .collect();
        ResidueType::new(self.p, self.m, &scaled)
    }

    /// Largest integer lift of an entry, used for the default lift bound.
    pub fn max_lift(&self) -> u64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Default enumeration bound for integer lifts: max(3p, 3 * max lift).
    pub fn default_lift_bound(&self) -> u64 {
        (3 * self.p).max(3 * self.max_lift())
    }
}

/// The smallest primitive m-th root of unity mod p; requires m | p - 1.
fn smallest_primitive_root(p: u64, m: u64) -> u64 {
    debug_assert!(m >= 1 && (p - 1).is_multiple_of(m));
    if m == 1 {
        return 1;
    }
    for x in 2..p {
        if fp::pow(x, m as u128, p) == 1 {
            let primitive = (1..m).all(|j| !m.is_multiple_of(j) || fp::pow(x, j as u128, p) != 1);
            if primitive {
                return x;
            }
        }
    }
    unreachable!("m | p - 1 guarantees a primitive m-th root")
}

/// An integer lift (A_1, ..., A_r) of a residue type: nonzero integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LiftedType {
    entries: Vec<i64>,
}

impl LiftedType {
    pub fn new(entries: Vec<i64>) -> Result<LiftedType, TypesError> {
        if entries.is_empty() {
            return Err(TypesError::EmptyType);
        }
        if entries.contains(&0) {
            return Err(TypesError::ZeroLiftEntry);
        }
        Ok(LiftedType { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.entries.iter().sum::<i64>() == 0
    }

    pub fn is_all_positive(&self) -> bool {
        self.entries.iter().all(|&a| a > 0)
    }

    /// (n_A, k_A): the positive-part sum and the gcd of absolute values.
    pub fn stats(&self) -> (u64, u64) {
        let n: u64 = self.entries.iter().map(|&a| a.max(0) as u64).sum();
        let k = self
            .entries
            .iter()
            .fold(0u64, |acc, &a| num_integer::gcd(acc, a.unsigned_abs()));
        (n, k)
    }

    /// Whether this lift reduces to `a` mod p coordinatewise (in the given
    /// order).
    pub fn lifts_entries(&self, p: u64, entries: &[u64]) -> bool {
        self.entries.len() == entries.len()
            && self
                .entries
                .iter()
                .zip(entries)
                .all(|(&big, &small)| big.rem_euclid(p as i64) as u64 == small % p)
    }
}

/// Decides whether a three-point cover with the cycle data forced by a
/// zero-sum lift exists: k_A (r - 1) <= n_A.
pub fn realizable(lift: &LiftedType) -> Result<bool, TypesError> {
    if !lift.is_zero_sum() {
        return Err(TypesError::LiftNotZeroSum);
    }
    if lift.len() < 2 {
        return Err(TypesError::LiftTooShort);
    }
    let (n, k) = lift.stats();
    Ok(k * (lift.len() as u64 - 1) <= n)
}

/// All lifts of `a` with entries bounded by `bound` in absolute value,
/// subject to the pairing constraint (zero-sum for m = 1, all entries
/// positive for m = 2), in nondecreasing n_A order with lexicographic
/// tie-breaks.
pub fn enumerate_lifts(a: &ResidueType, bound: u64) -> Result<Vec<LiftedType>, TypesError> {
    match a.m() {
        1 | 2 => {}
        m => {
            return Err(TypesError::WrongSymmetryOrder {
                required: 2,
                got: m,
            })
        }
    }
    let p = a.p() as i64;
    let bound = bound as i64;
    let per_coordinate: Vec<Vec<i64>> = a
        .entries()
        .iter()
        .map(|&res| {
            let mut vals = Vec::new();
            let mut v = res as i64;
            while v > bound {
                v -= p;
            }
            // Walk down to the smallest admissible representative.
            while v - p >= -bound {
                v -= p;
            }
            while v <= bound {
                if v != 0 && v >= -bound && (a.m() != 2 || v > 0) {
                    vals.push(v);
                }
                v += p;
            }
            vals
        })
        .collect();
    if per_coordinate.iter().any(|v| v.is_empty()) {
        return Ok(Vec::new());
    }
    let zero_sum = a.m() == 1;
    // Suffix range of achievable sums, for pruning.
    let mut min_suffix = vec![0i64; per_coordinate.len() + 1];
    let mut max_suffix = vec![0i64; per_coordinate.len() + 1];
    for i in (0..per_coordinate.len()).rev() {
        let lo = *per_coordinate[i].iter().min().unwrap();
        let hi = *per_coordinate[i].iter().max().unwrap();
        min_suffix[i] = min_suffix[i + 1] + lo;
        max_suffix[i] = max_suffix[i + 1] + hi;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(per_coordinate.len());
    fn rec(
        per: &[Vec<i64>],
        min_suffix: &[i64],
        max_suffix: &[i64],
        zero_sum: bool,
        sum: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<LiftedType>,
    ) {
        let i = current.len();
        if i == per.len() {
            if !zero_sum || sum == 0 {
                out.push(LiftedType {
                    entries: current.clone(),
                });
            }
            return;
        }
        for &v in &per[i] {
            if zero_sum {
                let s = sum + v;
                if s + min_suffix[i + 1] > 0 || s + max_suffix[i + 1] < 0 {
                    continue;
                }
            }
            current.push(v);
            rec(per, min_suffix, max_suffix, zero_sum, sum + v, current, out);
            current.pop();
        }
    }
    rec(
        &per_coordinate,
        &min_suffix,
        &max_suffix,
        zero_sum,
        0,
        &mut current,
        &mut out,
    );
    out.sort_by(|x, y| {
        let nx = x.stats().0;
        let ny = y.stats().0;
        nx.cmp(&ny).then_with(|| x.entries.cmp(&y.entries))
    });
    Ok(out)
}

/// The first enumerated lift violating k_A min(r-1, p) <= n_A, which
/// certifies that no good form of this type exists. m = 1 only.
pub fn nonexistence_certificate(
    a: &ResidueType,
    bound: u64,
) -> Result<Option<LiftedType>, TypesError> {
    if a.m() != 1 {
        return Err(TypesError::WrongSymmetryOrder {
            required: 1,
            got: a.m(),
        });
    }
    let r = a.len() as u64;
    for lift in enumerate_lifts(a, bound)? {
        let (n, k) = lift.stats();
        if k * (r - 1).min(a.p()) > n {
            return Ok(Some(lift));
        }
    }
    Ok(None)
}

/// The first enumerated lift with k_A (r-1) <= n_A < k_A p, which certifies
/// that a good form of this type exists. m = 1 only.
pub fn existence_window(a: &ResidueType, bound: u64) -> Result<Option<LiftedType>, TypesError> {
    if a.m() != 1 {
        return Err(TypesError::WrongSymmetryOrder {
            required: 1,
            got: a.m(),
        });
    }
    let r = a.len() as u64;
    for lift in enumerate_lifts(a, bound)? {
        let (n, k) = lift.stats();
        if k * (r - 1) <= n && n < k * a.p() {
            return Ok(Some(lift));
        }
    }
    Ok(None)
}

/// Outcome of the parameter screening for a conductor/symmetry pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NecessaryVerdict {
    PrimitiveOk,
    NonprimitiveOk,
    Invalid { reason: String },
}

/// Screen (p, m, h) against the necessary conditions for a good form of
/// conductor h to exist: h prime to p, and either gcd(h, m) = 1 with
/// m | p - 1 and h = -1 mod m (primitive), or m | h (non-primitive).
pub fn necessary_conditions(p: u64, m: u64, h: u64) -> NecessaryVerdict {
    if m == 0 || h == 0 {
        return NecessaryVerdict::Invalid {
            reason: "m and h must be positive".into(),
        };
    }
    if h.is_multiple_of(p) {
        return NecessaryVerdict::Invalid {
            reason: format!("h = {h} is divisible by p = {p}"),
        };
    }
    if num_integer::gcd(h, m) == 1 {
        if !(p - 1).is_multiple_of(m) {
            return NecessaryVerdict::Invalid {
                reason: format!(
                    "gcd(h, m) = 1 but m = {m} does not divide p - 1 = {}",
                    p - 1
                ),
            };
        }
        if !(h + 1).is_multiple_of(m) {
            return NecessaryVerdict::Invalid {
                reason: format!("gcd(h, m) = 1 but h = {h} is not -1 mod m = {m}"),
            };
        }
        NecessaryVerdict::PrimitiveOk
    } else if h.is_multiple_of(m) {
        NecessaryVerdict::NonprimitiveOk
    } else {
        NecessaryVerdict::Invalid {
            reason: format!("h = {h} is neither prime to nor divisible by m = {m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftingReason {
    /// m | h: the group is cyclic and every action lifts.
    CyclicCase,
    /// h neither divisible by m nor prime to m.
    ConditionIFailed,
    /// h prime to m but not -1 mod m.
    ConditionIiFailed,
    /// h prime to m and h = -1 mod m.
    OkInjective,
}

/// Answer to the local lifting decision for the semidirect product of a
/// cyclic group of order p by a cyclic group of order m, acting with
/// conductor h.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingVerdict {
    pub lifts: bool,
    pub reason: LiftingReason,
    pub p: u64,
    pub m: u64,
    pub h: u64,
}

/// Decide the local lifting problem from (p, m, h) alone: the action lifts
/// exactly when m | h, or gcd(h, m) = 1 and h = -1 mod m.
pub fn decide_lifting(p: u64, m: u64, h: u64) -> Result<LiftingVerdict, TypesError> {
    if !fp::is_prime(p) {
        return Err(TypesError::NotPrime(p));
    }
    if m == 0 || h == 0 {
        return Err(TypesError::NonPositive);
    }
    if m.is_multiple_of(p) {
        return Err(TypesError::OrderDivisibleByP { p, m });
    }
    if h.is_multiple_of(p) {
        return Err(TypesError::ConductorDivisibleByP { p, h });
    }
    let (lifts, reason) = if h.is_multiple_of(m) {
        (true, LiftingReason::CyclicCase)
    } else if num_integer::gcd(h, m) != 1 {
        (false, LiftingReason::ConditionIFailed)
    } else if (h + 1).is_multiple_of(m) {
        (true, LiftingReason::OkInjective)
    } else {
        (false, LiftingReason::ConditionIiFailed)
    };
    Ok(LiftingVerdict {
        lifts,
        reason,
        p,
        m,
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lift(entries: &[i64]) -> LiftedType {
        LiftedType::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn stats_examples() {
        assert_eq!(lift(&[2, 4, -3, -2, -1]).stats(), (6, 1));
        assert_eq!(lift(&[1, 1, -1, -1]).stats(), (2, 1));
        assert_eq!(lift(&[2, 2, -2, -2]).stats(), (4, 2));
    }

    #[test]
    fn realizability_examples() {
        assert!(realizable(&lift(&[2, 4, -3, -2, -1])).unwrap());
        assert!(!realizable(&lift(&[1, 1, -1, -1])).unwrap());
        for k in 1..6 {
            assert!(realizable(&lift(&[k, -k])).unwrap());
        }
    }

    #[test]
    fn realizable_invariances() {
        let base = lift(&[2, 4, -3, -2, -1]);
        let truth = realizable(&base).unwrap();
        // Permutation.
        assert_eq!(realizable(&lift(&[-3, 2, -1, 4, -2])).unwrap(), truth);
        // Global negation.
        let negated: Vec<i64> = base.entries().iter().map(|a| -a).collect();
        assert_eq!(
            realizable(&LiftedType::new(negated).unwrap()).unwrap(),
            truth
        );
        // Positive scaling.
        let scaled: Vec<i64> = base.entries().iter().map(|a| 3 * a).collect();
        assert_eq!(
            realizable(&LiftedType::new(scaled).unwrap()).unwrap(),
            truth
        );
    }

    #[test]
    fn canonicalize_m1_sorts() {
        let t = ResidueType::new(5, 1, &[4, 1, 1, 4]).unwrap();
        assert_eq!(t.entries(), &[1, 1, 4, 4]);
    }

    #[test]
    fn canonicalize_m2_uses_sign_orbit() {
        // -4 = 1 mod 5, so (4, 1) canonicalizes to (1, 1).
        let t = ResidueType::new(5, 2, &[4, 1]).unwrap();
        assert_eq!(t.entries(), &[1, 1]);
    }

    #[test]
    fn equivalence_m4() {
        let a = ResidueType::new(5, 4, &[2]).unwrap();
        let b = ResidueType::new(5, 4, &[3]).unwrap();
        assert!(a.equivalent(&b));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for entries in [[1u64, 2, 3].as_slice(), &[4, 4, 2], &[6, 1]] {
            if let Ok(t) = ResidueType::new(7, 3, entries) {
                let again = ResidueType::new(7, 3, t.entries()).unwrap();
                assert_eq!(t, again);
            }
        }
    }

    #[test]
    fn residue_type_validation() {
        assert_eq!(
            ResidueType::new(5, 1, &[1, 2]).unwrap_err(),
            TypesError::NonzeroSum
        );
        assert_eq!(
            ResidueType::new(5, 1, &[5, 0]).unwrap_err(),
            TypesError::ZeroEntry
        );
        assert_eq!(
            ResidueType::new(7, 4, &[1]).unwrap_err(),
            TypesError::NoRootOfUnity { p: 7, m: 4 }
        );
    }

    #[test]
    fn lift_enumeration_minimal_first() {
        let a = ResidueType::new(5, 1, &[1, 1, 4, 4]).unwrap();
        let lifts = enumerate_lifts(&a, 5).unwrap();
        assert_eq!(lifts[0], lift(&[1, 1, -1, -1]));
        for w in lifts.windows(2) {
            assert!(w[0].stats().0 <= w[1].stats().0);
        }
        for l in &lifts {
            assert!(l.is_zero_sum());
            assert!(l.lifts_entries(5, a.entries()));
        }
    }

    #[test]
    fn lift_enumeration_m2_positive() {
        let a = ResidueType::new(5, 2, &[1]).unwrap();
        let lifts = enumerate_lifts(&a, 6).unwrap();
        assert_eq!(lifts, vec![lift(&[1]), lift(&[6])]);
    }

    #[test]
    fn certificate_example_r4() {
        let a = ResidueType::new(5, 1, &[1, 1, 4, 4]).unwrap();
        let cert = nonexistence_certificate(&a, a.default_lift_bound()).unwrap();
        assert_eq!(cert, Some(lift(&[1, 1, -1, -1])));
        assert_eq!(existence_window(&a, 25).unwrap(), None);
    }

    #[test]
    fn certificate_example_window() {
        // Residues (1, 1, 5) sum to 0 mod 7; (1, 1, -2) is in the window.
        let a = ResidueType::new(7, 1, &[1, 1, 5]).unwrap();
        let window = existence_window(&a, a.default_lift_bound()).unwrap();
        assert_eq!(window, Some(lift(&[1, 1, -2])));
        assert_eq!(
            nonexistence_certificate(&a, a.default_lift_bound()).unwrap(),
            None
        );
    }

    #[test]
    fn window_qualification_is_scaling_covariant() {
        // If a lift qualifies for a, the coordinatewise scaling by a unit
        // lift qualifies for c*a (both statistics scale together).
        let a = ResidueType::new(7, 1, &[1, 1, 5]).unwrap();
        let generous = 20 * 7;
        assert!(existence_window(&a, generous).unwrap().is_some());
        for c in 2..7u64 {
            let scaled = a.scaled(c).unwrap();
            assert!(
                existence_window(&scaled, generous).unwrap().is_some(),
                "scaled type {:?} lost its window",
                scaled.entries()
            );
        }
    }

    #[test]
    fn family_type_has_no_certificate() {
        let a = ResidueType::new(3, 1, &[1, 1, 1, 2, 2, 2]).unwrap();
        assert_eq!(
            nonexistence_certificate(&a, a.default_lift_bound()).unwrap(),
            None
        );
        // The window is empty too: n >= 5k and n < 3k cannot both hold.
        assert_eq!(existence_window(&a, a.default_lift_bound()).unwrap(), None);
    }

    #[test]
    fn certificates_are_mutually_exclusive() {
        // For r - 1 <= p, a violating lift and a window lift cannot coexist.
        let cases: Vec<(u64, Vec<u64>)> = vec![
            (5, vec![1, 1, 4, 4]),
            (5, vec![1, 2, 2]),
            (7, vec![1, 1, 5]),
            (7, vec![3, 4]),
            (3, vec![1, 1, 1]),
            (5, vec![2, 4, 2, 3, 4]),
            (11, vec![1, 1, 1, 8]),
        ];
        for (p, entries) in cases {
            let a = match ResidueType::new(p, 1, &entries) {
                Ok(a) => a,
                Err(_) => continue,
            };
            if a.len() as u64 - 1 > p {
                continue;
            }
            let bound = a.default_lift_bound();
            let cert = nonexistence_certificate(&a, bound).unwrap();
            let window = existence_window(&a, bound).unwrap();
            assert!(
                cert.is_none() || window.is_none(),
                "p = {p}, type {:?}",
                a.entries()
            );
        }
    }

    #[test]
    fn screening_examples() {
        assert_eq!(necessary_conditions(7, 3, 2), NecessaryVerdict::PrimitiveOk);
        assert_eq!(
            necessary_conditions(5, 4, 4),
            NecessaryVerdict::NonprimitiveOk
        );
        assert!(matches!(
            necessary_conditions(7, 3, 4),
            NecessaryVerdict::Invalid { .. }
        ));
        assert!(matches!(
            necessary_conditions(5, 1, 5),
            NecessaryVerdict::Invalid { .. }
        ));
    }

    #[test]
    fn lifting_decision_examples() {
        let v = decide_lifting(5, 2, 3).unwrap();
        assert!(v.lifts);
        assert_eq!(v.reason, LiftingReason::OkInjective);

        let v = decide_lifting(7, 3, 6).unwrap();
        assert!(v.lifts);
        assert_eq!(v.reason, LiftingReason::CyclicCase);

        let v = decide_lifting(7, 3, 4).unwrap();
        assert!(!v.lifts);
        assert_eq!(v.reason, LiftingReason::ConditionIiFailed);

        assert!(decide_lifting(5, 2, 10).is_err());
    }

    #[test]
    fn small_m_always_lifts() {
        for p in [3u64, 5, 7, 11] {
            for h in 1..30 {
                if h % p == 0 {
                    continue;
                }
                assert!(decide_lifting(p, 1, h).unwrap().lifts);
                assert!(decide_lifting(p, 2, h).unwrap().lifts);
            }
        }
    }
}
