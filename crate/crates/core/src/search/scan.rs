//! Exhaustive search for good forms of a prescribed residue type.
//!
//! Pole configurations are normalized before enumeration: for m = 1 the
//! affine group pins the first two poles at 0 and 1; for m >= 2 scaling
//! pins the first pole at 1. Candidates are enumerated lexicographically
//! in the field's total order, the space is partitioned across threads by
//! the first free coordinate, and a start offset makes partial scans
//! resumable.
//!
//! The inner acceptance test runs in a log/antilog table field and checks
//! the power sums M_t = sum_i c_i u_i^t for t < r - 1 (the coefficient
//! conditions for the numerator to be constant, in Newton form), with the
//! last pole solved from the first vanishing condition rather than
//! enumerated. Accepted candidates are re-verified with the exact
//! goodness pipeline before they are reported.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Field, FqElement, Polynomial, RationalFunction};
use crate::error::SearchError;
use crate::forms::{goodness, DifferentialForm, EquivariantContext};
use crate::types::ResidueType;

/// Default cap on the number of candidate tuples a single search may scan.
pub const DEFAULT_CANDIDATE_CAP: u128 = 1_000_000_000;

/// Largest field for which the log/antilog tables are built.
const MAX_TABLE_FIELD: u128 = 1 << 20;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub cap: u128,
    pub start_offset: u128,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            cap: DEFAULT_CANDIDATE_CAP,
            start_offset: 0,
        }
    }
}

/// Orbit representatives of the poles of a candidate form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleConfiguration {
    pub m: u64,
    pub poles: Vec<FqElement>,
}

impl PoleConfiguration {
    /// Validates distinctness: for m = 1 the poles must be pairwise
    /// distinct; for m >= 2 they must be nonzero with pairwise distinct
    /// m-th powers (so the full orbits are disjoint).
    pub fn new(
        ctx: &EquivariantContext,
        poles: Vec<FqElement>,
    ) -> Result<PoleConfiguration, SearchError> {
        let m = ctx.m();
        if poles.is_empty() {
            return Err(SearchError::Degenerate("no poles".into()));
        }
        if m == 1 {
            for i in 0..poles.len() {
                for j in 0..i {
                    if poles[i] == poles[j] {
                        return Err(SearchError::Degenerate("repeated pole".into()));
                    }
                }
            }
        } else {
            let powers: Vec<FqElement> = poles.iter().map(|z| z.pow(m as u128)).collect();
            for i in 0..poles.len() {
                if poles[i].is_zero() {
                    return Err(SearchError::Degenerate("pole orbit through zero".into()));
                }
                for j in 0..i {
                    if powers[i] == powers[j] {
                        return Err(SearchError::Degenerate("pole orbits intersect".into()));
                    }
                }
            }
        }
        Ok(PoleConfiguration { m, poles })
    }

    pub fn field(&self) -> &Field {
        self.poles[0].field()
    }

    /// The standard form of the given type at these poles:
    /// sum a_i dz/(z - z_i) for m = 1, and
    /// sum m a_i z_i^{m-1} dz/(z^m - z_i^m) for m >= 2.
    pub fn form(&self, a: &ResidueType) -> Result<DifferentialForm, SearchError> {
        if a.m() != self.m || a.len() != self.poles.len() {
            return Err(SearchError::Degenerate(
                "type and configuration shapes differ".into(),
            ));
        }
        let field = self.field();
        let m = self.m;
        let mut acc = RationalFunction::zero(field);
        for (z, &res) in self.poles.iter().zip(a.entries()) {
            let term = if m == 1 {
                RationalFunction::new(
                    Polynomial::constant(field.from_residue(res)),
                    Polynomial::linear_root(z),
                )
            } else {
                let weight = field
                    .from_residue(m % field.p())
                    .mul(&field.from_residue(res))
                    .mul(&z.pow(m as u128 - 1));
                let mut den = Polynomial::monomial(field.one(), m as usize);
                den = den.sub(&Polynomial::constant(z.pow(m as u128)));
                RationalFunction::new(Polynomial::constant(weight), den)
            };
            acc = acc.add(&term);
        }
        Ok(DifferentialForm::new(acc)?)
    }
}

/// Outcome of an exhaustive (or offset-resumed) search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub p: u64,
    pub m: u64,
    pub residue_type: Vec<u64>,
    pub extension_degree: usize,
    pub normalization: String,
    /// Size of the candidate prefix space.
    pub candidates: u128,
    /// Candidates actually examined (candidates minus the start offset).
    pub scanned: u128,
    pub exhaustive: bool,
    pub solutions: Vec<PoleConfiguration>,
    /// Solutions modulo residue-preserving pole permutations, per-pole
    /// root-of-unity multiplication, and the normalization group.
    pub orbit_count: u64,
}

// ---- table field ----

struct TableField {
    p: u64,
    q: usize,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl TableField {
    fn build(field: &Field) -> TableField {
        let q = field.order() as usize;
        let p = field.p();
        // Find a generator: the smallest element whose order is q - 1,
        // detected through the prime factors of q - 1.
        let mut factors = Vec::new();
        let mut rest = (q - 1) as u64;
        let mut f = 2u64;
        while f * f <= rest {
            if rest.is_multiple_of(f) {
                factors.push(f);
                while rest.is_multiple_of(f) {
                    rest /= f;
                }
            }
            f += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        let generator = field
            .elements()
            .skip(1)
            .find(|x| {
                factors
                    .iter()
                    .all(|&l| !x.pow((q as u128 - 1) / l as u128).is_one())
            })
            .expect("a finite field has a multiplicative generator");
        let mut exp = vec![0u32; q - 1];
        let mut log = vec![u32::MAX; q];
        let mut cur = field.one();
        for (i, slot) in exp.iter_mut().enumerate() {
            let idx = cur.index() as u32;
            *slot = idx;
            log[idx as usize] = i as u32;
            cur = cur.mul(&generator);
        }
        TableField { p, q, exp, log }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[s % (self.q - 1)]
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        let p = self.p as u32;
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            let digit = a % p;
            if digit > 0 {
                out += (p - digit) * place;
            }
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let l = self.log[a as usize] as usize;
        if l == 0 {
            return a;
        }
        self.exp[self.q - 1 - l]
    }
}

// Number of ordered selections: pool * (pool-1) * ... (count factors).
fn falling_product(pool: u128, count: usize) -> u128 {
    let mut out = 1u128;
    for i in 0..count as u128 {
        if pool <= i {
            return 0;
        }
        out = out.saturating_mul(pool - i);
    }
    out
}

/// Exhaust pole configurations over F_{p^d} whose standard form of type
/// `a` is good. Every accepted candidate is re-verified with the exact
/// goodness pipeline; the report carries the solutions, the size of the
/// scanned space, and the orbit count under the declared symmetries.
pub fn search_good_deformation(
    a: &ResidueType,
    d: usize,
    opts: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    let p = a.p();
    let m = a.m();
    let field = Field::extension(p, d)?;
    if field.order() > MAX_TABLE_FIELD {
        return Err(SearchError::SearchSpaceTooLarge {
            candidates: field.order(),
            cap: MAX_TABLE_FIELD,
        });
    }
    let (raw, candidates) = if m == 1 {
        scan_m1(a, &field, opts)?
    } else {
        scan_higher(a, &field, opts)?
    };
    let ctx = EquivariantContext::new(&field, m)?;
    let mut solutions = Vec::with_capacity(raw.len());
    for poles in raw {
        let config = PoleConfiguration::new(&ctx, poles)?;
        let form = config.form(a)?;
        let report = goodness(&form, &ctx).map_err(|e| {
            SearchError::VerificationFailed(format!("goodness failed on {config:?}: {e}"))
        })?;
        let expected_h = m * a.len() as u64 - 1;
        if !report.is_good
            || report.conductor_h != Some(expected_h)
            || report.residue_type.as_ref() != Some(a)
        {
            return Err(SearchError::VerificationFailed(format!(
                "accepted configuration {config:?} does not re-verify: {report:?}"
            )));
        }
        solutions.push(config);
    }
    let orbit_count = count_orbits(a, &solutions, &ctx);
    Ok(SearchReport {
        p,
        m,
        residue_type: a.entries().to_vec(),
        extension_degree: d,
        normalization: if m == 1 {
            "z1=0, z2=1 (affine)".into()
        } else {
            "z1=1 (scaling)".into()
        },
        candidates,
        scanned: candidates.saturating_sub(opts.start_offset),
        exhaustive: opts.start_offset == 0,
        solutions,
        orbit_count,
    })
}

type RawSolutions = Vec<Vec<FqElement>>;

fn scan_m1(
    a: &ResidueType,
    field: &Field,
    opts: &SearchOptions,
) -> Result<(RawSolutions, u128), SearchError> {
    let q = field.order() as usize;
    let r = a.len();
    let entries = a.entries();
    if q < r {
        // Not enough points for r distinct poles.
        return Ok((Vec::new(), 0));
    }
    if r == 2 {
        // Poles pinned at 0 and 1; the form a/z - a/(z-1) is always good.
        let poles = vec![field.zero(), field.one()];
        let keep = opts.start_offset == 0;
        return Ok((if keep { vec![poles] } else { Vec::new() }, 1));
    }
    let tf = TableField::build(field);
    let weights: Vec<u32> = entries.iter().map(|&x| x as u32).collect();
    let tmax = r - 1;
    // pows[t - 1][x] = x^t in table indices.
    let mut pows: Vec<Vec<u32>> = Vec::with_capacity(tmax);
    let first: Vec<u32> = (0..q as u32).collect();
    pows.push(first);
    for t in 1..tmax {
        let prev = &pows[t - 1];
        let next: Vec<u32> = (0..q as u32).map(|x| tf.mul(prev[x as usize], x)).collect();
        pows.push(next);
    }
    // Base moments from the pinned poles 0 and 1: only z = 1 contributes,
    // with weight a_2, to every M_t.
    let base: Vec<u32> = vec![weights[1]; tmax];
    let free = r - 3;
    let pool = q - 2;
    let candidates = falling_product(pool as u128, free);
    if candidates > opts.cap {
        return Err(SearchError::SearchSpaceTooLarge {
            candidates,
            cap: opts.cap,
        });
    }
    let free_values: Vec<u32> = (2..q as u32).collect();
    let inv_last = tf.inv(weights[r - 1]);
    let leaf = |moments: &[u32], used: &[bool], chosen: &[u32], out: &mut RawSolutions| {
        // Solve the last pole from M_1 + a_r z = 0.
        let z = tf.mul(tf.neg(moments[0]), inv_last);
        if (z as usize) < 2 || used[z as usize] {
            // Collides with 0, 1 or a chosen pole (z = 0 also lands here).
            return;
        }
        for t in 2..=r - 2 {
            let contrib = tf.mul(weights[r - 1], pows[t - 1][z as usize]);
            if tf.add(moments[t - 1], contrib) != 0 {
                return;
            }
        }
        let top = tf.mul(weights[r - 1], pows[tmax - 1][z as usize]);
        if tf.add(moments[tmax - 1], top) == 0 {
            return;
        }
        let mut poles = Vec::with_capacity(r);
        poles.push(field.zero());
        poles.push(field.one());
        for &v in chosen {
            poles.push(field.element_from_index(v as u128));
        }
        poles.push(field.element_from_index(z as u128));
        out.push(poles);
    };
    let push_pole = |moments: &mut [u32], coordinate: usize, z: u32| {
        for t in 1..=tmax {
            let contrib = tf.mul(weights[coordinate], pows[t - 1][z as usize]);
            moments[t - 1] = tf.add(moments[t - 1], contrib);
        }
    };
    if free == 0 {
        let mut out = Vec::new();
        if opts.start_offset == 0 {
            let mut used = vec![false; q];
            used[0] = true;
            used[1] = true;
            leaf(&base, &used, &[], &mut out);
        }
        return Ok((out, candidates));
    }
    // Parallel over the first free coordinate; deterministic merge order.
    let subtree = falling_product(pool as u128 - 1, free - 1);
    let chunks: Vec<RawSolutions> = free_values
        .par_iter()
        .enumerate()
        .map(|(k, &v0)| {
            let mut out = Vec::new();
            let base_rank = k as u128 * subtree;
            let mut skip = opts.start_offset.saturating_sub(base_rank);
            if skip >= subtree {
                return out;
            }
            let mut used = vec![false; q];
            used[0] = true;
            used[1] = true;
            used[v0 as usize] = true;
            let mut moments = base.clone();
            push_pole(&mut moments, 2, v0);
            let mut chosen = vec![v0];
            descend_m1(
                &free_values,
                free,
                1,
                &mut chosen,
                &mut used,
                &mut moments,
                &mut skip,
                &leaf,
                &push_pole,
                &mut out,
                pool,
            );
            out
        })
        .collect();
    let merged: RawSolutions = chunks.into_iter().flatten().collect();
    Ok((merged, candidates))
}

#[allow(clippy::too_many_arguments)]
fn descend_m1(
    free_values: &[u32],
    free: usize,
    depth: usize,
    chosen: &mut Vec<u32>,
    used: &mut Vec<bool>,
    moments: &mut Vec<u32>,
    skip: &mut u128,
    leaf: &impl Fn(&[u32], &[bool], &[u32], &mut RawSolutions),
    push_pole: &impl Fn(&mut [u32], usize, u32),
    out: &mut RawSolutions,
    pool: usize,
) {
    if depth == free {
        if *skip > 0 {
            *skip -= 1;
            return;
        }
        leaf(moments, used, chosen, out);
        return;
    }
    let subtree = falling_product(pool as u128 - depth as u128 - 1, free - depth - 1);
    for &v in free_values {
        if used[v as usize] {
            continue;
        }
        if *skip >= subtree {
            *skip -= subtree;
            continue;
        }
        used[v as usize] = true;
        let saved = moments.clone();
        push_pole(moments, 2 + depth, v);
        chosen.push(v);
        descend_m1(
            free_values,
            free,
            depth + 1,
            chosen,
            used,
            moments,
            skip,
            leaf,
            push_pole,
            out,
            pool,
        );
        chosen.pop();
        *moments = saved;
        used[v as usize] = false;
    }
}

fn scan_higher(
    a: &ResidueType,
    field: &Field,
    opts: &SearchOptions,
) -> Result<(RawSolutions, u128), SearchError> {
    let q = field.order() as usize;
    let p = field.p();
    let m = a.m();
    let r = a.len();
    let entries = a.entries();
    if (q as u64 - 1) < m * r as u64 {
        return Ok((Vec::new(), 0));
    }
    let tf = TableField::build(field);
    // c_i = m a_i z_i^{m-1}; the residue multiplier m a_i sits in F_p.
    let coeff: Vec<u32> = entries.iter().map(|&x| ((m % p) * x % p) as u32).collect();
    // Power maps z -> z^{m-1} and z -> z^m, and preimages of z^{m-1}.
    let pow_m1: Vec<u32> = (0..q as u32).map(|z| table_pow(&tf, z, m - 1)).collect();
    let pow_m: Vec<u32> = (0..q as u32)
        .map(|z| tf.mul(pow_m1[z as usize], z))
        .collect();
    let mut preimages: Vec<Vec<u32>> = vec![Vec::new(); q];
    for z in 1..q as u32 {
        preimages[pow_m1[z as usize] as usize].push(z);
    }
    let tmax = r.max(1) - 1;
    // upows[t - 1][u] = u^t for t = 1..=tmax.
    let mut upows: Vec<Vec<u32>> = Vec::new();
    if tmax > 0 {
        upows.push((0..q as u32).collect());
        for t in 1..tmax {
            let prev = &upows[t - 1];
            upows.push((0..q as u32).map(|x| tf.mul(prev[x as usize], x)).collect());
        }
    }
    if r == 1 {
        // Single orbit pinned at z = 1: always good of conductor m - 1.
        let keep = opts.start_offset == 0;
        let poles = vec![field.one()];
        return Ok((if keep { vec![poles] } else { Vec::new() }, 1));
    }
    let free = r - 2;
    // Each placed orbit uses up m values of F_q^x.
    let mut candidates = 1u128;
    for dpt in 0..free {
        let avail = (q as i128 - 1) - ((dpt as i128 + 1) * m as i128);
        if avail <= 0 {
            candidates = 0;
            break;
        }
        candidates = candidates.saturating_mul(avail as u128);
    }
    if candidates > opts.cap {
        return Err(SearchError::SearchSpaceTooLarge {
            candidates,
            cap: opts.cap,
        });
    }
    if candidates == 0 {
        return Ok((Vec::new(), 0));
    }
    // Pinned z_1 = 1: u_1 = 1, contribution coeff[0] to every moment and to
    // the running coefficient sum.
    let mut base_moments = vec![0u32; tmax];
    for t in 1..=tmax {
        base_moments[t - 1] = coeff[0];
    }
    let base_csum = coeff[0];
    let inv_last = tf.inv(coeff[r - 1]);
    let leaf =
        |csum: u32, moments: &[u32], used_u: &[bool], chosen: &[u32], out: &mut RawSolutions| {
            // Solve m a_r z^{m-1} = -csum, i.e. z^{m-1} = gamma.
            let beta = tf.neg(csum);
            if beta == 0 {
                return;
            }
            let gamma = tf.mul(beta, inv_last);
            for &z in &preimages[gamma as usize] {
                let u = pow_m[z as usize];
                if used_u[u as usize] {
                    continue;
                }
                let mut ok = true;
                for t in 1..=r - 2 {
                    let contrib = tf.mul(beta, upows[t - 1][u as usize]);
                    if tf.add(moments[t - 1], contrib) != 0 {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let top = tf.mul(beta, upows[tmax - 1][u as usize]);
                if tf.add(moments[tmax - 1], top) == 0 {
                    continue;
                }
                let mut poles = Vec::with_capacity(r);
                poles.push(field.one());
                for &v in chosen {
                    poles.push(field.element_from_index(v as u128));
                }
                poles.push(field.element_from_index(z as u128));
                out.push(poles);
            }
        };
    if free == 0 {
        let mut out = Vec::new();
        if opts.start_offset == 0 {
            let mut used_u = vec![false; q];
            used_u[1] = true;
            leaf(base_csum, &base_moments, &used_u, &[], &mut out);
        }
        return Ok((out, candidates));
    }
    // First free coordinate values: nonzero z whose orbit is not the
    // pinned one.
    let first_values: Vec<u32> = (1..q as u32).filter(|&z| pow_m[z as usize] != 1).collect();
    let subtree = {
        let mut s = 1u128;
        for dpt in 1..free {
            s = s.saturating_mul(((q as i128 - 1) - ((dpt as i128 + 1) * m as i128)) as u128);
        }
        s
    };
    let chunks: Vec<RawSolutions> = first_values
        .par_iter()
        .enumerate()
        .map(|(k, &z0)| {
            let mut out = Vec::new();
            let base_rank = k as u128 * subtree;
            let mut skip = opts.start_offset.saturating_sub(base_rank);
            if skip >= subtree {
                return out;
            }
            let mut used_u = vec![false; q];
            used_u[1] = true;
            used_u[pow_m[z0 as usize] as usize] = true;
            let mut moments = base_moments.clone();
            let c0 = tf.mul(coeff[1], pow_m1[z0 as usize]);
            let u0 = pow_m[z0 as usize];
            for t in 1..=tmax {
                moments[t - 1] = tf.add(moments[t - 1], tf.mul(c0, upows[t - 1][u0 as usize]));
            }
            let mut csum = tf.add(base_csum, c0);
            let mut chosen = vec![z0];
            descend_higher(
                &tf,
                &pow_m1,
                &pow_m,
                &upows,
                &coeff,
                q,
                m,
                free,
                1,
                &mut chosen,
                &mut used_u,
                &mut moments,
                &mut csum,
                &mut skip,
                &leaf,
                &mut out,
            );
            out
        })
        .collect();
    let merged: RawSolutions = chunks.into_iter().flatten().collect();
    Ok((merged, candidates))
}

#[allow(clippy::too_many_arguments)]
fn descend_higher(
    tf: &TableField,
    pow_m1: &[u32],
    pow_m: &[u32],
    upows: &[Vec<u32>],
    coeff: &[u32],
    q: usize,
    m: u64,
    free: usize,
    depth: usize,
    chosen: &mut Vec<u32>,
    used_u: &mut Vec<bool>,
    moments: &mut Vec<u32>,
    csum: &mut u32,
    skip: &mut u128,
    leaf: &impl Fn(u32, &[u32], &[bool], &[u32], &mut RawSolutions),
    out: &mut RawSolutions,
) {
    let tmax = moments.len();
    if depth == free {
        if *skip > 0 {
            *skip -= 1;
            return;
        }
        leaf(*csum, moments, used_u, chosen, out);
        return;
    }
    let subtree = {
        let mut s = 1u128;
        for dpt in depth + 1..free {
            s = s.saturating_mul(((q as i128 - 1) - ((dpt as i128 + 1) * m as i128)) as u128);
        }
        s
    };
    for z in 1..q as u32 {
        let u = pow_m[z as usize];
        if used_u[u as usize] {
            continue;
        }
        if *skip >= subtree {
            *skip -= subtree;
            continue;
        }
        used_u[u as usize] = true;
        let saved_moments = moments.clone();
        let saved_csum = *csum;
        let c = tf.mul(coeff[depth + 1], pow_m1[z as usize]);
        for t in 1..=tmax {
            moments[t - 1] = tf.add(moments[t - 1], tf.mul(c, upows[t - 1][u as usize]));
        }
        *csum = tf.add(*csum, c);
        chosen.push(z);
        descend_higher(
            tf,
            pow_m1,
            pow_m,
            upows,
            coeff,
            q,
            m,
            free,
            depth + 1,
            chosen,
            used_u,
            moments,
            csum,
            skip,
            leaf,
            out,
        );
        chosen.pop();
        *moments = saved_moments;
        *csum = saved_csum;
        used_u[u as usize] = false;
    }
}

fn table_pow(tf: &TableField, base: u32, mut e: u64) -> u32 {
    if e == 0 {
        return 1;
    }
    let mut acc = 1u32;
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = tf.mul(acc, b);
        }
        b = tf.mul(b, b);
        e >>= 1;
    }
    acc
}

// ---- orbit counting ----

/// Signature of a solution modulo the declared symmetry group. For m = 1
/// the affine group plus residue-preserving permutations act; the
/// canonical form maps each ordered pole pair to (0, 1) and takes the
/// minimum. For m >= 2 scaling multiplies every orbit invariant u = z^m
/// by an m-th power, and per-pole root-of-unity twists leave u fixed.
fn count_orbits(a: &ResidueType, solutions: &[PoleConfiguration], ctx: &EquivariantContext) -> u64 {
    let mut signatures: Vec<Vec<(u64, u128)>> = Vec::new();
    for config in solutions {
        let sig = if a.m() == 1 {
            affine_signature(a, &config.poles)
        } else {
            scaling_signature(a, &config.poles, ctx)
        };
        if !signatures.contains(&sig) {
            signatures.push(sig);
        }
    }
    signatures.len() as u64
}

fn affine_signature(a: &ResidueType, poles: &[FqElement]) -> Vec<(u64, u128)> {
    let r = poles.len();
    let mut best: Option<Vec<(u64, u128)>> = None;
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let scale_inv = poles[j].sub(&poles[i]).inv();
            let mut mapped: Vec<(u64, u128)> = poles
                .iter()
                .zip(a.entries())
                .map(|(z, &res)| (res, z.sub(&poles[i]).mul(&scale_inv).index()))
                .collect();
            mapped.sort_unstable();
            if best.as_ref().is_none_or(|b| &mapped < b) {
                best = Some(mapped);
            }
        }
    }
    best.expect("configurations have at least two poles for m = 1")
}

fn scaling_signature(
    a: &ResidueType,
    poles: &[FqElement],
    ctx: &EquivariantContext,
) -> Vec<(u64, u128)> {
    let field = poles[0].field();
    let m = ctx.m();
    let us: Vec<FqElement> = poles.iter().map(|z| z.pow(m as u128)).collect();
    let mut best: Option<Vec<(u64, u128)>> = None;
    let mut seen_factors: Vec<u128> = Vec::new();
    for x in field.elements().skip(1) {
        let factor = x.pow(m as u128);
        let key = factor.index();
        if seen_factors.contains(&key) {
            continue;
        }
        seen_factors.push(key);
        let mut mapped: Vec<(u64, u128)> = us
            .iter()
            .zip(a.entries())
            .map(|(u, &res)| (res, u.mul(&factor).index()))
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| &mapped < b) {
            best = Some(mapped);
        }
    }
    best.expect("nonempty field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonexistent_type_is_exhaustively_empty() {
        let a = ResidueType::new(5, 1, &[1, 1, 4, 4]).unwrap();
        for d in [1usize, 2] {
            let report = search_good_deformation(&a, d, &SearchOptions::default()).unwrap();
            assert!(report.exhaustive);
            assert!(report.solutions.is_empty(), "d = {d}");
        }
    }

    #[test]
    fn primitive_singleton_type_found() {
        // Type (5) over F_7 with m = 3: z = 1 gives dz/(z^3 - 1).
        let a = ResidueType::new(7, 3, &[5]).unwrap();
        let report = search_good_deformation(&a, 1, &SearchOptions::default()).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.solutions.len(), 1);
        assert_eq!(report.solutions[0].poles[0], Field::prime(7).unwrap().one());
        assert_eq!(report.orbit_count, 1);
    }

    #[test]
    fn length_two_types_always_solvable() {
        let a = ResidueType::new(7, 1, &[2, 5]).unwrap();
        let report = search_good_deformation(&a, 1, &SearchOptions::default()).unwrap();
        assert_eq!(report.solutions.len(), 1);
        assert_eq!(report.candidates, 1);
    }

    #[test]
    fn three_pole_search_matches_theory() {
        // (1, 1, 5) over F_7 has an existence certificate, so the search
        // must find solutions at some small degree.
        let a = ResidueType::new(7, 1, &[1, 1, 5]).unwrap();
        let report = search_good_deformation(&a, 1, &SearchOptions::default()).unwrap();
        assert!(report.exhaustive);
        assert!(!report.solutions.is_empty());
        for config in &report.solutions {
            let form = config.form(&a).unwrap();
            let ctx = EquivariantContext::trivial(config.field());
            let rep = goodness(&form, &ctx).unwrap();
            assert!(rep.is_good);
            assert_eq!(rep.conductor_h, Some(2));
        }
    }

    #[test]
    fn two_orbit_search_solves_the_last_pole() {
        // Type (3,3) with m = 3 over F_7: the coefficient condition forces
        // z_2^2 = -1, a non-square mod 7, so d = 1 is exhaustively empty
        // and solutions appear over F_49.
        let a = ResidueType::new(7, 3, &[3, 3]).unwrap();
        let empty = search_good_deformation(&a, 1, &SearchOptions::default()).unwrap();
        assert!(empty.exhaustive && empty.solutions.is_empty());
        let found = search_good_deformation(&a, 2, &SearchOptions::default()).unwrap();
        assert!(!found.solutions.is_empty());
        for config in &found.solutions {
            let ctx = EquivariantContext::new(config.field(), 3).unwrap();
            let report = goodness(&config.form(&a).unwrap(), &ctx).unwrap();
            assert_eq!(report.conductor_h, Some(5));
        }
    }

    #[test]
    fn certificates_and_search_agree() {
        // A violating lift rules out solutions; solutions rule out
        // violating lifts.
        let cases: [(u64, &[u64]); 5] = [
            (5, &[1, 1, 4, 4]),
            (7, &[1, 1, 5]),
            (5, &[2, 2, 2, 2, 2]),
            (3, &[1, 1, 1, 2, 2, 2]),
            (7, &[2, 2, 3]),
        ];
        for (p, entries) in cases {
            let a = ResidueType::new(p, 1, entries).unwrap();
            let cert = crate::types::nonexistence_certificate(&a, a.default_lift_bound()).unwrap();
            for d in 1..=2usize {
                let report = search_good_deformation(&a, d, &SearchOptions::default()).unwrap();
                assert!(report.exhaustive);
                if cert.is_some() {
                    assert!(
                        report.solutions.is_empty(),
                        "certified-nonexistent type {entries:?} found at d = {d}"
                    );
                }
                if !report.solutions.is_empty() {
                    assert!(cert.is_none());
                }
            }
        }
    }

    #[test]
    fn offset_resume_partitions_the_scan() {
        let a = ResidueType::new(3, 1, &[1, 1, 1, 2, 2, 2]).unwrap();
        let full = search_good_deformation(&a, 2, &SearchOptions::default()).unwrap();
        assert!(full.exhaustive);
        // Resume from halfway: the solution lists glue back together.
        let offset = full.candidates / 2;
        let tail = search_good_deformation(
            &a,
            2,
            &SearchOptions {
                cap: DEFAULT_CANDIDATE_CAP,
                start_offset: offset,
            },
        )
        .unwrap();
        assert!(!tail.exhaustive);
        assert_eq!(tail.scanned, full.candidates - offset);
        assert!(tail.solutions.len() <= full.solutions.len());
        for sol in &tail.solutions {
            assert!(full.solutions.contains(sol));
        }
        let head_count = full.solutions.len() - tail.solutions.len();
        assert_eq!(
            &full.solutions[head_count..],
            &tail.solutions[..],
            "tail scan must reproduce the tail of the full scan"
        );
    }

    #[test]
    fn cap_is_enforced() {
        let a = ResidueType::new(3, 1, &[1, 1, 1, 2, 2, 2]).unwrap();
        let err = search_good_deformation(
            &a,
            4,
            &SearchOptions {
                cap: 10,
                start_offset: 0,
            },
        )
        .unwrap_err();
        assert!(matches!(err, SearchError::SearchSpaceTooLarge { .. }));
    }
}
