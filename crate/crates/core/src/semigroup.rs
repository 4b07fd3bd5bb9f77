//! Numerical semigroup arithmetic for almost arithmetic sequences.
//!
//! A curve is described by an arithmetic progression `m0 < m1 < ... < mp`
//! plus one free generator `mn` (with `n = p + 1`). Everything downstream
//! (the closed-form binomials, the ladder reductions, the sweep) is driven by
//! the constants computed in [`compute_parameters`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn add(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

/// A validated almost arithmetic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveInput {
    arith: Vec<u64>,
    mn: u64,
}

impl CurveInput {
    /// Validates `arith` (the progression `m0..mp`) and the free generator `mn`.
    pub fn new(arith: Vec<u64>, mn: u64) -> Result<Self> {
        if let Some(&bad) = arith.iter().chain(std::iter::once(&mn)).find(|&&v| v == 0) {
            return Err(Error::NonPositive(bad as i64));
        }
        if arith.len() < 2 {
            return Err(Error::TooShort);
        }
        for i in 1..arith.len() {
            if arith[i] <= arith[i - 1] {
                return Err(Error::NonIncreasing(i));
            }
        }
        let step = arith[1] - arith[0];
        if let Some(i) = (2..arith.len()).find(|&i| arith[i] - arith[i - 1] != step) {
            return Err(Error::NotArithmetic(i));
        }
        let gens: Vec<u64> = arith.iter().copied().chain(std::iter::once(mn)).collect();
        let g = gens.iter().fold(0, |acc, &v| gcd(acc, v));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        for (index, &value) in gens.iter().enumerate() {
            let mut others: Vec<u64> = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != index)
                .map(|(_, &v)| v)
                .collect();
            // smallest generator as modulus keeps the table small
            let min_pos = (0..others.len()).min_by_key(|&j| others[j]).unwrap_or(0);
            others.swap(0, min_pos);
            if SemigroupTable::partial(&others)?.contains(value) {
                return Err(Error::NotMinimallyGenerated { index, value });
            }
        }
        Ok(CurveInput { arith, mn })
    }

    /// Number of arithmetic terms minus one.
    pub fn p(&self) -> usize {
        self.arith.len() - 1
    }

    /// Index of the free generator.
    pub fn n(&self) -> usize {
        self.arith.len()
    }

    /// Number of polynomial variables `x0..xn`.
    pub fn num_vars(&self) -> usize {
        self.arith.len() + 1
    }

    pub fn arith(&self) -> &[u64] {
        &self.arith
    }

    pub fn mn(&self) -> u64 {
        self.mn
    }

    pub fn m0(&self) -> u64 {
        self.arith[0]
    }

    pub fn mp(&self) -> u64 {
        self.arith[self.p()]
    }

    /// Generator `m_i` for `0 <= i <= n`.
    pub fn m(&self, i: usize) -> u64 {
        if i == self.n() {
            self.mn
        } else {
            self.arith[i]
        }
    }

    /// All generators `m0..mn`, which are also the variable weights.
    pub fn weights(&self) -> Vec<u64> {
        self.arith.iter().copied().chain(std::iter::once(self.mn)).collect()
    }

    /// Splits `t = q*p + r` with `r` in `[1, p]` and returns `g_t = q*mp + m_r`.
    pub fn degree_split(&self, t: u64) -> Result<DegreeSplit> {
        let p = self.p() as u64;
        if t == 0 {
            return Ok(DegreeSplit { t, q: -1, r: self.p(), g: 0 });
        }
        let q = (t - 1) / p;
        let r = (t - q * p) as usize;
        let g = add(mul(q, self.mp(), "g_t")?, self.arith[r], "g_t")?;
        Ok(DegreeSplit { t, q: q as i64, r, g })
    }
}

impl fmt::Display for CurveInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arith.iter().map(u64::to_string).collect();
        write!(f, "({}; {})", parts.join(","), self.mn)
    }
}

/// Validates raw, possibly non-positive integers into a [`CurveInput`].
pub fn validate_input(raw_arith: &[i64], raw_mn: i64) -> Result<CurveInput> {
    if raw_arith.is_empty() {
        return Err(Error::TooShort);
    }
    let convert = |v: i64| u64::try_from(v).ok().filter(|&v| v > 0).ok_or(Error::NonPositive(v));
    let arith = raw_arith.iter().map(|&v| convert(v)).collect::<Result<Vec<_>>>()?;
    CurveInput::new(arith, convert(raw_mn)?)
}

/// Apéry table of a semigroup with respect to its first generator.
///
/// `apery[r]` is the least semigroup element congruent to `r` modulo the
/// modulus, or `None` when the residue class is never reached (only possible
/// for tables built with [`SemigroupTable::partial`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupTable {
    modulus: u64,
    apery: Vec<Option<u64>>,
}

impl SemigroupTable {
    /// Full table; every residue must be reachable.
    pub fn new(generators: &[u64]) -> Result<Self> {
        let table = Self::partial(generators)?;
        if table.apery.iter().any(Option::is_none) {
            let g = generators.iter().fold(0, |acc, &v| gcd(acc, v));
            return Err(Error::GcdNotOne(g));
        }
        Ok(table)
    }

    /// Table that tolerates unreachable residues (generators with gcd > 1).
    pub fn partial(generators: &[u64]) -> Result<Self> {
        let modulus = *generators.first().ok_or(Error::TooShort)?;
        if modulus == 0 {
            return Err(Error::NonPositive(0));
        }
        let size = usize::try_from(modulus).map_err(|_| Error::Overflow("Apery table size"))?;
        let mut apery: Vec<Option<u64>> = vec![None; size];
        apery[0] = Some(0);
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u64, 0usize)));
        while let Some(Reverse((dist, res))) = heap.pop() {
            if apery[res] != Some(dist) {
                continue;
            }
            for &g in &generators[1..] {
                let next = ((res as u64 + g % modulus) % modulus) as usize;
                let cand = add(dist, g, "Apery table")?;
                if apery[next].is_none_or(|cur| cand < cur) {
                    apery[next] = Some(cand);
                    heap.push(Reverse((cand, next)));
                }
            }
        }
        Ok(SemigroupTable { modulus, apery })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Least element of the semigroup congruent to `residue`.
    pub fn apery(&self, residue: u64) -> Option<u64> {
        self.apery[(residue % self.modulus) as usize]
    }

    pub fn contains(&self, gamma: u64) -> bool {
        self.apery(gamma).is_some_and(|a| a <= gamma)
    }

    /// Largest finite Apéry element.
    pub fn max_apery(&self) -> u64 {
        self.apery.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Builds the full Apéry table of `generators` with respect to the first one.
pub fn apery_table(generators: &[u64]) -> Result<SemigroupTable> {
    SemigroupTable::new(generators)
}

/// `t = q*p + r`, `r` in `[1, p]`, and `g = q*mp + m_r`. At `t = 0` this
/// gives `q = -1`, `r = p`, `g = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSplit {
    pub t: u64,
    pub q: i64,
    pub r: usize,
    pub g: u64,
}

pub fn degree_split(input: &CurveInput, t: u64) -> Result<DegreeSplit> {
    input.degree_split(t)
}

/// Closed integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub const EMPTY: Interval = Interval { lo: 0, hi: -1 };

    pub fn new(lo: i64, hi: i64) -> Self {
        if lo > hi {
            Self::EMPTY
        } else {
            Interval { lo, hi }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_empty() {
            s.serialize_none()
        } else {
            [self.lo, self.hi].serialize(s)
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "empty")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// All semigroup constants attached to a curve.
///
/// The defining identities hold exactly:
/// `g_u = lambda*m0 + w*mn`, `upsilon*mn = mu*m0 + g_z`, and
/// `g_{u-z} + (upsilon - w)*mn = nu*m0`.
#[derive(Clone, Debug, Serialize)]
pub struct CurveParameters {
    #[serde(skip)]
    pub input: CurveInput,
    #[serde(skip)]
    gamma: SemigroupTable,
    pub u: u64,
    pub upsilon: u64,
    pub w: u64,
    pub z: u64,
    pub lambda: u64,
    pub mu: u64,
    pub nu: u64,
    pub g_u: u64,
    pub g_z: u64,
    pub q: u64,
    pub r: usize,
    pub q_prime: u64,
    pub r_prime: usize,
    pub q_z: i64,
    pub r_z: usize,
    pub epsilon: u64,
    pub w_empty: bool,
    #[serde(rename = "I")]
    pub i_range: Interval,
    #[serde(rename = "J")]
    pub j_range: Interval,
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation(what()))
    }
}

/// Solves for every semigroup constant of the curve and checks the defining
/// identities, the scan uniqueness, and the derived relations between them.
pub fn compute_parameters(input: &CurveInput) -> Result<CurveParameters> {
    let m0 = input.m0();
    let mn = input.mn();
    let p = input.p();
    let gamma = SemigroupTable::new(&input.weights())?;
    let gamma_prime = SemigroupTable::partial(input.arith())?;

    // u = min{t : g_t - m0 in Gamma}; every large enough integer is in Gamma.
    let bound = add(gamma.max_apery(), m0, "u search bound")?;
    let mut u = 1;
    loop {
        let g = input.degree_split(u)?.g;
        if g >= m0 && gamma.contains(g - m0) {
            break;
        }
        if g > bound {
            return Err(Error::InvariantViolation("search for u did not terminate".into()));
        }
        u += 1;
    }

    // m0*mn is always in Gamma', so upsilon <= m0.
    let upsilon = (1..=m0)
        .find(|&b| mul(b, mn, "upsilon").is_ok_and(|v| gamma_prime.contains(v)))
        .ok_or(Error::Overflow("upsilon"))?;

    let split_u = input.degree_split(u)?;
    let g_u = split_u.g;
    let mut hits = Vec::new();
    for w in 0..upsilon {
        let wm = mul(w, mn, "w*mn")?;
        if g_u > wm && (g_u - wm) % m0 == 0 {
            hits.push((w, (g_u - wm) / m0));
        }
    }
    let [(w, lambda)] = hits[..] else {
        return Err(Error::UniquenessViolation { what: "(w, lambda)".into(), hits: hits.len() });
    };

    let vmn = mul(upsilon, mn, "upsilon*mn")?;
    let mut hits = Vec::new();
    for z in 0..u {
        let g_z = input.degree_split(z)?.g;
        if vmn >= g_z && (vmn - g_z) % m0 == 0 {
            hits.push((z, (vmn - g_z) / m0));
        }
    }
    let [(z, mu)] = hits[..] else {
        return Err(Error::UniquenessViolation { what: "(z, mu)".into(), hits: hits.len() });
    };

    let split_z = input.degree_split(z)?;
    let split_uz = input.degree_split(u - z)?;
    let (q, r) = (split_u.q as u64, split_u.r);
    let (q_prime, r_prime) = (split_uz.q as u64, split_uz.r);
    let (q_z, r_z) = (split_z.q, split_z.r);
    let nu = if r_prime < r { lambda + mu + 1 } else { lambda + mu };
    let epsilon: u64 = if r > r_z { 0 } else { 1 };
    let w_empty = z == 0 || w == 0;

    let pi = p as i64;
    let (ri, rzi, rpi) = (r as i64, r_z as i64, r_prime as i64);
    let i_range = if mu != 0 || w_empty {
        Interval::new(0, pi - ri)
    } else {
        Interval::new((rzi - ri + 1).max(0), pi - ri)
    };
    let j_range = if w_empty {
        Interval::EMPTY
    } else if q_z > 0 || epsilon > 0 {
        Interval::new(0, pi - rpi)
    } else {
        Interval::new(0, rzi - 1)
    };

    let lhs = add(split_uz.g, mul(upsilon - w, mn, "(upsilon-w)*mn")?, "identity (iii)")?;
    invariant(lhs == mul(nu, m0, "nu*m0")?, || {
        format!("g_(u-z) + (upsilon-w)*mn = {lhs} != nu*m0 with nu = {nu}")
    })?;
    invariant(vmn == mu * m0 + split_z.g, || "upsilon*mn != mu*m0 + g_z".into())?;
    invariant(u > p as u64 && q > 0, || format!("expected u > p and q > 0, got u = {u}"))?;
    invariant(nu >= 2 && lambda >= 1, || "expected nu >= 2 and lambda >= 1".into())?;
    invariant(q_prime as i64 == q as i64 - q_z - epsilon as i64, || "q' != q - q_z - eps".into())?;
    invariant(rpi == epsilon as i64 * pi + ri - rzi, || "r' != eps*p + r - r_z".into())?;
    if !w_empty {
        // J as first written, [0, min(z-1, p-r')], must match the case split.
        let literal = Interval::new(0, (z as i64 - 1).min(pi - rpi));
        invariant(literal == j_range, || format!("J = {j_range} but literal form gives {literal}"))?;
    }

    Ok(CurveParameters {
        input: input.clone(),
        gamma,
        u,
        upsilon,
        w,
        z,
        lambda,
        mu,
        nu,
        g_u,
        g_z: split_z.g,
        q,
        r,
        q_prime,
        r_prime,
        q_z,
        r_z,
        epsilon,
        w_empty,
        i_range,
        j_range,
    })
}

/// A representation `gamma = a*m0 + g_s + b*mn` with `(s, b)` in `V - W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub a: u64,
    pub s: u64,
    pub b: u64,
}

impl CurveParameters {
    /// Membership oracle for the full semigroup.
    pub fn semigroup(&self) -> &SemigroupTable {
        &self.gamma
    }

    /// `(s, b)` in `V = [0,u-1] x [0,upsilon-1]` and outside
    /// `W = [u-z, u-1] x [upsilon-w, upsilon-1]`.
    pub fn in_v_minus_w(&self, s: i64, b: i64) -> bool {
        let (u, v) = (self.u as i64, self.upsilon as i64);
        let in_v = (0..u).contains(&s) && (0..v).contains(&b);
        let in_w = s >= u - self.z as i64 && b >= v - self.w as i64;
        in_v && !in_w
    }

    /// Unique normal-form coordinates of `gamma`, found by exhaustive search.
    pub fn unique_representation(&self, gamma: u64) -> Result<Representation> {
        let m0 = self.input.m0();
        let mut hits = Vec::new();
        for s in 0..self.u {
            let g_s = self.input.degree_split(s)?.g;
            for b in 0..self.upsilon {
                if !self.in_v_minus_w(s as i64, b as i64) {
                    continue;
                }
                let used = add(g_s, mul(b, self.input.mn(), "b*mn")?, "representation")?;
                if gamma >= used && (gamma - used).is_multiple_of(m0) {
                    hits.push(Representation { a: (gamma - used) / m0, s, b });
                }
            }
        }
        match hits[..] {
            [rep] => Ok(rep),
            [] if !self.gamma.contains(gamma) => Err(Error::NotInSemigroup(gamma)),
            _ => Err(Error::UniquenessViolation {
                what: format!("representation of {gamma}"),
                hits: hits.len(),
            }),
        }
    }
}

pub fn in_v_minus_w(params: &CurveParameters, s: i64, b: i64) -> bool {
    params.in_v_minus_w(s, b)
}

pub fn unique_representation(params: &CurveParameters, gamma: u64) -> Result<Representation> {
    params.unique_representation(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(arith: &[u64], mn: u64) -> CurveInput {
        CurveInput::new(arith.to_vec(), mn).unwrap()
    }

    /// Bounded membership by dynamic programming, independent of the table.
    fn dp_members(gens: &[u64], limit: u64) -> Vec<bool> {
        let mut ok = vec![false; limit as usize + 1];
        ok[0] = true;
        for v in 1..=limit as usize {
            ok[v] = gens.iter().any(|&g| v as u64 >= g && ok[v - g as usize]);
        }
        ok
    }

    #[test]
    fn validation_examples() {
        let c = validate_input(&[7, 8], 6).unwrap();
        assert_eq!((c.p(), c.n()), (1, 2));
        let c = validate_input(&[20, 21, 22, 23, 24], 29).unwrap();
        assert_eq!((c.p(), c.n()), (4, 5));
        assert_eq!(
            validate_input(&[5, 6], 11),
            Err(Error::NotMinimallyGenerated { index: 2, value: 11 })
        );
    }

    #[test]
    fn validation_errors() {
        assert_eq!(validate_input(&[], 3), Err(Error::TooShort));
        assert_eq!(validate_input(&[7], 3), Err(Error::TooShort));
        assert_eq!(validate_input(&[7, -8], 3), Err(Error::NonPositive(-8)));
        assert_eq!(validate_input(&[7, 8], 0), Err(Error::NonPositive(0)));
        assert_eq!(validate_input(&[8, 7], 3), Err(Error::NonIncreasing(1)));
        assert_eq!(validate_input(&[7, 8, 10], 3), Err(Error::NotArithmetic(2)));
        assert_eq!(validate_input(&[6, 8], 10), Err(Error::GcdNotOne(2)));
        // duplicate of an arithmetic term
        assert!(matches!(
            validate_input(&[7, 8], 7),
            Err(Error::NotMinimallyGenerated { index: 0, .. })
        ));
        // 16 = 2*8 makes the free generator redundant
        assert!(matches!(
            validate_input(&[7, 8], 16),
            Err(Error::NotMinimallyGenerated { index: 2, value: 16 })
        ));
    }

    #[test]
    fn apery_examples() {
        let t = apery_table(&[7, 8, 6]).unwrap();
        assert_eq!(t.apery(0), Some(0));
        assert!(t.contains(13));
        assert!(!t.contains(5));
        let prime = SemigroupTable::partial(&[20, 21, 22, 23, 24]).unwrap();
        assert!(!prime.contains(29));
        assert!(prime.contains(87));
        assert_eq!(apery_table(&[4, 6]), Err(Error::GcdNotOne(2)));
    }

    #[test]
    fn apery_matches_dynamic_programming() {
        for gens in [&[7u64, 8, 6][..], &[5, 7, 9, 11], &[20, 21, 22, 23, 24, 29], &[9, 10, 8]] {
            let t = apery_table(gens).unwrap();
            let limit = 3 * t.max_apery();
            let dp = dp_members(gens, limit);
            for g in 0..=limit {
                assert_eq!(t.contains(g), dp[g as usize], "{gens:?} at {g}");
            }
            for r in 0..t.modulus() {
                assert_eq!(t.apery(r).unwrap() % t.modulus(), r);
            }
        }
    }

    #[test]
    fn degree_split_examples() {
        let c = curve(&[20, 21, 22, 23, 24], 29);
        assert_eq!(c.degree_split(7).unwrap(), DegreeSplit { t: 7, q: 1, r: 3, g: 47 });
        assert_eq!(c.degree_split(0).unwrap(), DegreeSplit { t: 0, q: -1, r: 4, g: 0 });
        let c = curve(&[7, 8], 6);
        assert_eq!(c.degree_split(3).unwrap(), DegreeSplit { t: 3, q: 2, r: 1, g: 24 });
    }

    #[test]
    fn parameters_example_7_8_6() {
        let k = compute_parameters(&curve(&[7, 8], 6)).unwrap();
        assert_eq!((k.u, k.upsilon, k.w, k.z), (4, 4, 3, 3));
        assert_eq!((k.lambda, k.mu, k.nu), (2, 0, 2));
        assert_eq!((k.q, k.r, k.q_prime, k.r_prime), (3, 1, 0, 1));
        assert_eq!((k.q_z, k.r_z, k.epsilon), (2, 1, 1));
        assert!(k.i_range.is_empty());
        assert_eq!(k.j_range, Interval::new(0, 0));
    }

    #[test]
    fn parameters_final_example() {
        // The published example states q' = 1, but u - z = 2 = q'*4 + r' with
        // r' in [1, 4] forces q' = 0; only q' = 0 keeps psi_j homogeneous.
        let k = compute_parameters(&curve(&[20, 21, 22, 23, 24], 29)).unwrap();
        assert_eq!((k.upsilon, k.mu, k.q_z, k.r_z, k.z), (3, 2, 1, 3, 7));
        assert_eq!((k.q, k.r, k.u, k.lambda, k.w), (2, 1, 9, 2, 1));
        assert_eq!((k.r_prime, k.q_prime, k.epsilon), (2, 0, 1));
        assert_eq!(k.j_range, Interval::new(0, 2));
    }

    #[test]
    fn parameters_odd_shift_family() {
        let k = compute_parameters(&curve(&[9, 10], 8)).unwrap();
        assert_eq!((k.u, k.upsilon, k.w, k.z, k.lambda, k.mu), (5, 5, 4, 4, 2, 0));
    }

    #[test]
    fn window_membership() {
        let k = compute_parameters(&curve(&[7, 8], 6)).unwrap();
        assert!(k.in_v_minus_w(0, 0));
        assert!(!k.in_v_minus_w(3, 3));
        assert!(!k.in_v_minus_w(1, 1));
        assert!(k.in_v_minus_w(0, 3));
        assert!(!k.in_v_minus_w(4, 0));
        assert!(!k.in_v_minus_w(-1, 0));
        // (4,6;5): w = 0, so W is empty
        let k = compute_parameters(&curve(&[4, 6], 5)).unwrap();
        assert_eq!((k.w, k.z), (0, 1));
        assert!(k.w_empty);
        for s in 0..k.u as i64 {
            for b in 0..k.upsilon as i64 {
                assert!(k.in_v_minus_w(s, b));
            }
        }
    }

    #[test]
    fn representation_examples() {
        let k = compute_parameters(&curve(&[7, 8], 6)).unwrap();
        assert_eq!(k.unique_representation(13).unwrap(), Representation { a: 1, s: 0, b: 1 });
        assert_eq!(k.unique_representation(0).unwrap(), Representation { a: 0, s: 0, b: 0 });
        assert_eq!(k.unique_representation(5), Err(Error::NotInSemigroup(5)));
    }

    #[test]
    fn overflow_is_reported() {
        let big = u64::MAX / 2;
        let c = CurveInput { arith: vec![3, 4], mn: big };
        assert!(c.degree_split(u64::MAX).is_err());
    }
}
