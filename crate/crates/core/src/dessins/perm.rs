//! Permutations, cycle types, and brute-force enumeration of generating
//! systems (transitive permutation triples with product one).
//!
//! The composition convention is fixed repo-wide: (s . t)(x) = s(t(x)),
//! and a triple product s1 s2 s3 applies s3 first.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::DessinError;

/// Brute-force degree cap: the conjugacy class of the middle permutation is
/// enumerated in full, which stays cheap through S_9.
pub const DEFAULT_DEGREE_CAP: u64 = 9;

/// A permutation of {1..n}, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Permutation, DessinError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(DessinError::NotBijective);
            }
            seen[im - 1] = true;
            zero.push(im - 1);
        }
        Ok(Permutation { images: zero })
    }

    /// Internal constructor for images already known to be a bijection.
    pub(crate) fn from_zero_based_unchecked(images: Vec<usize>) -> Permutation {
        let perm = Permutation { images };
        debug_assert!(perm.is_valid());
        perm
    }

    /// From disjoint cycles in 1-based labels; omitted labels are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation, DessinError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from == 0 || from > n || to == 0 || to > n || touched[from - 1] {
                    return Err(DessinError::NotBijective);
                }
                touched[from - 1] = true;
                images[from - 1] = to - 1;
            }
        }
        let perm = Permutation { images };
        if !perm.is_valid() {
            return Err(DessinError::NotBijective);
        }
        Ok(perm)
    }

    fn is_valid(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        for &im in &self.images {
            if im >= n || seen[im] {
                return false;
            }
            seen[im] = true;
        }
        true
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based application.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "mixed degrees");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &im) in self.images.iter().enumerate() {
            images[im] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Disjoint cycles, each led by its smallest element, sorted by leader;
    /// fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<u64> = self.cycles().iter().map(|c| c.len() as u64).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// Cycle notation with 1-based labels, fixed points omitted.
    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            s.push('(');
            let labels: Vec<String> = cycle.iter().map(|&x| (x + 1).to_string()).collect();
            s.push_str(&labels.join(" "));
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }

    /// Parse cycle notation like "(1 2 3)(4 5)"; labels not mentioned are
    /// fixed. `n` is the degree.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Permutation, DessinError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest == "()" || rest.is_empty() {
            return Ok(Permutation::identity(n));
        }
        while !rest.is_empty() {
            let open = rest.find('(').ok_or(DessinError::NotBijective)?;
            let close = rest[open..]
                .find(')')
                .map(|i| i + open)
                .ok_or(DessinError::NotBijective)?;
            let inner = &rest[open + 1..close];
            let labels: Result<Vec<usize>, _> = inner
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect();
            let labels = labels.map_err(|_| DessinError::NotBijective)?;
            if !labels.is_empty() {
                cycles.push(labels);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_cycle_string())
    }
}

/// A conjugacy class of S_n: the multiset of cycle lengths, 1s explicit,
/// stored in decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycleType {
    parts: Vec<u64>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u64>) -> Result<CycleType, DessinError> {
        if parts.contains(&0) {
            return Err(DessinError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// Parts possibly omitting 1s, padded with fixed points up to degree n.
    pub fn with_degree(parts: Vec<u64>, n: u64) -> Result<CycleType, DessinError> {
        let mut t = CycleType::new(parts)?;
        let sum: u64 = t.parts.iter().sum();
        if sum > n {
            return Err(DessinError::DegreeMismatch { degree: n });
        }
        t.parts.extend(std::iter::repeat_n(1, (n - sum) as usize));
        Ok(t)
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn cycle_count(&self) -> u64 {
        self.parts.len() as u64
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .parts
            .iter()
            .filter(|&&p| p > 1)
            .map(|p| p.to_string())
            .collect();
        if shown.is_empty() {
            write!(f, "(1)")
        } else {
            write!(f, "({})", shown.join(","))
        }
    }
}

/// The triple of cycle types a generating system must realize over the
/// three branch points.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct CombinatorialType {
    pub n: u64,
    pub c1: CycleType,
    pub c2: CycleType,
    pub c3: CycleType,
}

impl CombinatorialType {
    pub fn new(
        n: u64,
        c1: CycleType,
        c2: CycleType,
        c3: CycleType,
    ) -> Result<CombinatorialType, DessinError> {
        for c in [&c1, &c2, &c3] {
            if c.degree() != n {
                return Err(DessinError::DegreeMismatch { degree: n });
            }
        }
        Ok(CombinatorialType { n, c1, c2, c3 })
    }

    /// Genus from 2 - 2g = c(s1) + c(s2) + c(s3) - n; errors when the
    /// formula yields an odd or negative value.
    pub fn genus(&self) -> Result<u64, DessinError> {
        let chi = (self.c1.cycle_count() + self.c2.cycle_count() + self.c3.cycle_count()) as i64
            - self.n as i64;
        if chi % 2 != 0 {
            return Err(DessinError::BadGenus {
                chi,
                problem: "odd".into(),
            });
        }
        if chi > 2 {
            return Err(DessinError::BadGenus {
                chi,
                problem: "negative genus".into(),
            });
        }
        Ok(((2 - chi) / 2) as u64)
    }
}

impl fmt::Debug for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[n={} {:?} {:?} {:?}]",
            self.n, self.c1, self.c2, self.c3
        )
    }
}

/// A transitive permutation triple with s1 s2 s3 = 1.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct GeneratingSystem {
    pub n: u64,
    pub sigma1: Permutation,
    pub sigma2: Permutation,
    pub sigma3: Permutation,
}

impl GeneratingSystem {
    pub fn new(
        sigma1: Permutation,
        sigma2: Permutation,
        sigma3: Permutation,
    ) -> Result<GeneratingSystem, DessinError> {
        let n = sigma1.degree();
        if sigma2.degree() != n || sigma3.degree() != n {
            return Err(DessinError::DegreeMismatch { degree: n as u64 });
        }
        let prod = sigma1.compose(&sigma2).compose(&sigma3);
        if !prod.is_identity() {
            return Err(DessinError::ProductNotIdentity);
        }
        if !is_transitive(&[&sigma1, &sigma2, &sigma3]) {
            return Err(DessinError::NotTransitive);
        }
        Ok(GeneratingSystem {
            n: n as u64,
            sigma1,
            sigma2,
            sigma3,
        })
    }

    pub fn combinatorial_type(&self) -> CombinatorialType {
        CombinatorialType {
            n: self.n,
            c1: self.sigma1.cycle_type(),
            c2: self.sigma2.cycle_type(),
            c3: self.sigma3.cycle_type(),
        }
    }
}

impl fmt::Debug for GeneratingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}, {}, {}>",
            self.sigma1.to_cycle_string(),
            self.sigma2.to_cycle_string(),
            self.sigma3.to_cycle_string()
        )
    }
}

pub(crate) fn is_transitive(perms: &[&Permutation]) -> bool {
    let n = perms[0].degree();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// The canonical class representative: cycles laid out on consecutive
/// integers, longest first. E.g. type (4,2) in S_6 gives (1 2 3 4)(5 6).
pub fn canonical_representative(c: &CycleType) -> Permutation {
    let n = c.degree() as usize;
    let mut images: Vec<usize> = (0..n).collect();
    let mut next = 0usize;
    for &len in c.parts() {
        let len = len as usize;
        for i in 0..len {
            images[next + i] = next + (i + 1) % len;
        }
        next += len;
    }
    Permutation { images }
}

/// Every permutation of the given cycle type, enumerated deterministically:
/// cycles are built with the smallest unplaced point as leader.
pub fn permutations_of_type(c: &CycleType) -> Vec<Permutation> {
    let n = c.degree() as usize;
    let mut remaining: Vec<u64> = c.parts().to_vec();
    remaining.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    build_class(&mut remaining, &mut images, &mut used, n, &mut out);
    out
}

fn build_class(
    remaining: &mut Vec<u64>,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    n: usize,
    out: &mut Vec<Permutation>,
) {
    let leader = match (0..n).find(|&x| !used[x]) {
        Some(x) => x,
        None => {
            out.push(Permutation {
                images: images.clone(),
            });
            return;
        }
    };
    // Choose the length of the cycle through `leader` among the distinct
    // remaining lengths, then an ordered arrangement for the rest of it.
    let mut lens: Vec<u64> = remaining.clone();
    lens.sort_unstable();
    lens.dedup();
    for len in lens {
        let pos = remaining
            .iter()
            .position(|&l| l == len)
            .expect("length taken from the remaining multiset");
        remaining.swap_remove(pos);
        used[leader] = true;
        let mut cycle = vec![leader];
        extend_cycle(remaining, images, used, n, &mut cycle, len as usize, out);
        used[leader] = false;
        remaining.push(len);
    }
}

fn extend_cycle(
    remaining: &mut Vec<u64>,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    n: usize,
    cycle: &mut Vec<usize>,
    len: usize,
    out: &mut Vec<Permutation>,
) {
    if cycle.len() == len {
        for i in 0..len {
            images[cycle[i]] = cycle[(i + 1) % len];
        }
        build_class(remaining, images, used, n, out);
        for &x in cycle.iter() {
            images[x] = x;
        }
        return;
    }
    for x in 0..n {
        if used[x] {
            continue;
        }
        used[x] = true;
        cycle.push(x);
        extend_cycle(remaining, images, used, n, cycle, len, out);
        cycle.pop();
        used[x] = false;
    }
}

/// The centralizer of a permutation, generated from its cycle structure:
/// permute cycles of equal length and rotate each cycle.
pub fn centralizer(p: &Permutation) -> Vec<Permutation> {
    let n = p.degree();
    let cycles = p.cycles();
    // Group cycle indices by length.
    let mut by_len: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, c) in cycles.iter().enumerate() {
        match by_len.iter_mut().find(|(l, _)| *l == c.len()) {
            Some((_, v)) => v.push(i),
            None => by_len.push((c.len(), vec![i])),
        }
    }
    let mut result = vec![Permutation::identity(n)];
    for (len, group) in by_len {
        let perms = orderings(group.len());
        let mut extended = Vec::new();
        for base in &result {
            for assignment in &perms {
                // offsets odometer in (Z/len)^group
                let mut offsets = vec![0usize; group.len()];
                loop {
                    let mut images = base.images.clone();
                    for (gi, &ci) in group.iter().enumerate() {
                        let src = &cycles[ci];
                        let dst = &cycles[group[assignment[gi]]];
                        for (j, &x) in src.iter().enumerate() {
                            images[x] = dst[(j + offsets[gi]) % len];
                        }
                    }
                    extended.push(Permutation { images });
                    // advance odometer
                    let mut k = 0;
                    loop {
                        if k == offsets.len() {
                            break;
                        }
                        offsets[k] += 1;
                        if offsets[k] < len {
                            break;
                        }
                        offsets[k] = 0;
                        k += 1;
                    }
                    if k == offsets.len() {
                        break;
                    }
                }
            }
        }
        result = extended;
    }
    debug_assert!(result.iter().all(|c| c.compose(p) == p.compose(c)));
    result
}

fn orderings(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut used = vec![false; k];
    fn rec(k: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                current.push(x);
                rec(k, current, used, out);
                current.pop();
                used[x] = false;
            }
        }
    }
    rec(k, &mut current, &mut used, &mut out);
    out
}

/// Brute-force search for generating systems of a prescribed combinatorial
/// type: s1 is pinned to the canonical representative of c1, s2 runs over
/// the full class of c2, and s3 = (s1 s2)^{-1} is filtered by type and
/// transitivity.
pub fn search_generating_systems(
    c: &CombinatorialType,
    limit: Option<usize>,
) -> Result<Vec<GeneratingSystem>, DessinError> {
    search_generating_systems_capped(c, limit, DEFAULT_DEGREE_CAP)
}

pub fn search_generating_systems_capped(
    c: &CombinatorialType,
    limit: Option<usize>,
    cap: u64,
) -> Result<Vec<GeneratingSystem>, DessinError> {
    if c.n > cap {
        return Err(DessinError::DegreeTooLarge { n: c.n, cap });
    }
    let sigma1 = canonical_representative(&c.c1);
    let mut out = Vec::new();
    for sigma2 in permutations_of_type(&c.c2) {
        let sigma3 = sigma1.compose(&sigma2).inverse();
        if sigma3.cycle_type() != c.c3 {
            continue;
        }
        if !is_transitive(&[&sigma1, &sigma2, &sigma3]) {
            continue;
        }
        out.push(GeneratingSystem {
            n: c.n,
            sigma1: sigma1.clone(),
            sigma2,
            sigma3,
        });
        if let Some(lim) = limit {
            if out.len() >= lim {
                break;
            }
        }
    }
    Ok(out)
}

/// Number of generating systems of the given type up to simultaneous
/// conjugation: with s1 pinned, orbits of the solution set under
/// conjugation by the centralizer of s1.
pub fn count_classes(c: &CombinatorialType) -> Result<u64, DessinError> {
    count_classes_capped(c, DEFAULT_DEGREE_CAP)
}

pub fn count_classes_capped(c: &CombinatorialType, cap: u64) -> Result<u64, DessinError> {
    let systems = search_generating_systems_capped(c, None, cap)?;
    if systems.is_empty() {
        return Ok(0);
    }
    let cent = centralizer(&systems[0].sigma1);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut classes = 0;
    for system in &systems {
        if seen.contains(&system.sigma2.images) {
            continue;
        }
        classes += 1;
        for t in &cent {
            let conj = t.compose(&system.sigma2).compose(&t.inverse());
            seen.insert(conj.images);
        }
    }
    Ok(classes)
}

/// Checks the composition identity that pins down the convention: for odd n,
/// (1 2 ... n) . (n n-2 ... 3 1) = (2 3)(4 5)...(n-1 n).
pub fn verify_cycle_identity(n: usize) -> bool {
    assert!(n >= 3 && n % 2 == 1, "n must be odd and at least 3");
    let full: Vec<usize> = (1..=n).collect();
    let mut descending = Vec::with_capacity(n / 2 + 1);
    let mut x = n;
    loop {
        descending.push(x);
        if x == 1 {
            break;
        }
        x -= 2;
    }
    let lhs1 = Permutation::from_cycles(n, &[full]).unwrap();
    let lhs2 = Permutation::from_cycles(n, &[descending]).unwrap();
    let lhs = lhs1.compose(&lhs2);
    let transpositions: Vec<Vec<usize>> =
        (1..=(n - 1) / 2).map(|i| vec![2 * i, 2 * i + 1]).collect();
    let rhs = Permutation::from_cycles(n, &transpositions).unwrap();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention() {
        // (1 2 3) . (3 1): apply (3 1) first, giving (2 3).
        let a = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![3, 1]]).unwrap();
        let expected = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        assert_eq!(a.compose(&b), expected);
    }

    #[test]
    fn cycle_identity_small() {
        for n in [3usize, 5, 7, 9, 15, 25] {
            assert!(verify_cycle_identity(n), "failed at n = {n}");
        }
    }

    #[test]
    fn cycle_string_roundtrip() {
        let p = Permutation::from_cycles(6, &[vec![1, 4, 2], vec![5, 6]]).unwrap();
        let s = p.to_cycle_string();
        let q = Permutation::parse_cycles(6, &s).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn class_enumeration_counts() {
        // Transpositions in S_4: 6 of them.
        let t = CycleType::with_degree(vec![2], 4).unwrap();
        assert_eq!(permutations_of_type(&t).len(), 6);
        // 3-cycles in S_4: 8.
        let t = CycleType::with_degree(vec![3], 4).unwrap();
        assert_eq!(permutations_of_type(&t).len(), 8);
        // (2,2) in S_4: 3.
        let t = CycleType::with_degree(vec![2, 2], 4).unwrap();
        assert_eq!(permutations_of_type(&t).len(), 3);
    }

    #[test]
    fn centralizer_sizes() {
        // Centralizer of an n-cycle has n elements.
        let c = CycleType::new(vec![5]).unwrap();
        let p = canonical_representative(&c);
        assert_eq!(centralizer(&p).len(), 5);
        // (2,2) in S_4: size 2^2 * 2! = 8.
        let c = CycleType::new(vec![2, 2]).unwrap();
        let p = canonical_representative(&c);
        assert_eq!(centralizer(&p).len(), 8);
    }

    #[test]
    fn class_and_centralizer_sizes_multiply_to_group_order() {
        let factorial = |n: u64| (1..=n).product::<u64>();
        for parts in [
            vec![5u64],
            vec![4, 1],
            vec![3, 2],
            vec![2, 2, 1],
            vec![3, 1, 1],
            vec![2, 1, 1, 1],
            vec![1, 1, 1, 1, 1],
        ] {
            let t = CycleType::new(parts.clone()).unwrap();
            let n = t.degree();
            let class = permutations_of_type(&t);
            let cent = centralizer(&canonical_representative(&t));
            assert_eq!(
                class.len() as u64 * cent.len() as u64,
                factorial(n),
                "orbit-stabilizer fails for {parts:?}"
            );
            // No duplicates in the class enumeration.
            let mut seen = HashSet::new();
            for p in &class {
                assert!(seen.insert(p.clone()), "duplicate in class {parts:?}");
                assert_eq!(p.cycle_type(), t);
            }
        }
    }

    #[test]
    fn genus_examples() {
        // n = 1 trivial triple.
        let one = CycleType::new(vec![1]).unwrap();
        let c = CombinatorialType::new(1, one.clone(), one.clone(), one).unwrap();
        assert_eq!(c.genus().unwrap(), 0);

        // Three 4-cycles in S_4: 2 - 2g = 3 - 4 = -1, parity failure.
        let four = CycleType::new(vec![4]).unwrap();
        let c = CombinatorialType::new(4, four.clone(), four.clone(), four).unwrap();
        assert!(c.genus().is_err());
    }

    #[test]
    fn parity_obstruction_gives_empty_search() {
        // c1 = (3), c2 = (3), c3 = (2,1) in S_3: product of even
        // permutations is even, so no system exists.
        let c = CombinatorialType::new(
            3,
            CycleType::with_degree(vec![3], 3).unwrap(),
            CycleType::with_degree(vec![3], 3).unwrap(),
            CycleType::with_degree(vec![2], 3).unwrap(),
        )
        .unwrap();
        assert!(search_generating_systems(&c, None).unwrap().is_empty());
    }

    #[test]
    fn unique_class_smallest_case() {
        // n-cycle, r-cycle, (r-1) transpositions at r = 2, n = 3.
        let c = CombinatorialType::new(
            3,
            CycleType::with_degree(vec![3], 3).unwrap(),
            CycleType::with_degree(vec![2], 3).unwrap(),
            CycleType::with_degree(vec![2], 3).unwrap(),
        )
        .unwrap();
        assert_eq!(search_generating_systems(&c, None).unwrap().len(), 3);
        assert_eq!(count_classes(&c).unwrap(), 1);
    }
}
