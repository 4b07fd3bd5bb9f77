//! Monomials and the weighted grevlex orders used throughout.
//!
//! Two tie-breaks are supported on top of the weighted degree
//! `wt(x_i) = m_i`: [`Direction::Ascending`] treats `x0` as the smallest
//! variable (`x0 < x1 < ... < xn`) and [`Direction::Descending`] treats `xn`
//! as the smallest. An elimination variant adds an auxiliary variable `t`
//! that dominates every `x` monomial.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};

type Exps = SmallVec<[u32; 8]>;

/// Exponent vector over `x0..xn`, plus the exponent of the elimination
/// variable `t` (zero outside elimination contexts).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exps,
    t: u32,
}

fn add_exp(a: u32, b: u32) -> u32 {
    a.checked_add(b).expect("monomial exponent overflow")
}

impl Monomial {
    /// The constant monomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), t: 0 }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps), t: 0 }
    }

    /// `x_i^e` in `nvars` variables.
    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m
    }

    /// `t^e` in `nvars` variables.
    pub fn t_power(nvars: usize, e: u32) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), t: e }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn t_exponent(&self) -> u32 {
        self.t
    }

    pub fn is_one(&self) -> bool {
        self.t == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Multiplies in `x_i^e`.
    pub fn times_var(mut self, i: usize, e: u32) -> Self {
        self.exps[i] = add_exp(self.exps[i], e);
        self
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.t <= other.t && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| add_exp(a, b)).collect(),
            t: add_exp(self.t, other.t),
        }
    }

    /// `self / other`; `other` must divide `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a - b).collect(),
            t: self.t - other.t,
        }
    }

    /// `self / divisor * replacement`, the result of one reduction step.
    pub fn replace(&self, divisor: &Monomial, replacement: &Monomial) -> Monomial {
        debug_assert!(divisor.divides(self));
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&divisor.exps)
                .zip(&replacement.exps)
                .map(|((&a, &d), &r)| add_exp(a - d, r))
                .collect(),
            t: add_exp(self.t - divisor.t, replacement.t),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
            t: self.t.max(other.t),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (self.t == 0 || other.t == 0)
            && self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// `sum e_i * w_i + t`.
    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.x_degree(weights) + self.t as u64
    }

    fn x_degree(&self, weights: &[u64]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| (e as u64).checked_mul(w).expect("weighted degree overflow"))
            .fold(0u64, |acc, v| acc.checked_add(v).expect("weighted degree overflow"))
    }

    /// Parses the `x0^2*x2^3` text form (`1` is the empty monomial; a
    /// leading `t^k` factor is accepted for elimination monomials).
    pub fn parse(text: &str, nvars: usize) -> Result<Monomial> {
        let bad = || Error::Parse { what: "monomial", input: text.to_string() };
        let text = text.trim();
        let mut m = Monomial::one(nvars);
        if text == "1" {
            return Ok(m);
        }
        for factor in text.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            if exp == 0 {
                return Err(bad());
            }
            if base == "t" {
                m.t = add_exp(m.t, exp);
                continue;
            }
            let idx: usize = base
                .strip_prefix('x')
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse().ok())
                .ok_or_else(bad)?;
            if idx >= nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: idx + 1 });
            }
            m.exps[idx] = add_exp(m.exps[idx], exp);
        }
        Ok(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut factor = |f: &mut fmt::Formatter<'_>, base: &str, e: u32| -> fmt::Result {
            if e == 0 {
                return Ok(());
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{base}"),
                _ => write!(f, "{base}^{e}"),
            }
        };
        factor(f, "t", self.t)?;
        for (i, &e) in self.exps.iter().enumerate() {
            factor(f, &format!("x{i}"), e)?;
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `x0 < x1 < ... < xn`: on weight ties the monomial whose left-most
    /// differing exponent is smaller wins.
    Ascending,
    /// `x0 > x1 > ... > xn`: on weight ties the monomial whose right-most
    /// differing exponent is smaller wins.
    Descending,
}

/// A weighted grevlex order, optionally with a dominating `t` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    weights: Vec<u64>,
    direction: Direction,
    elimination: bool,
}

impl OrderSpec {
    pub fn new(weights: Vec<u64>, direction: Direction) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        OrderSpec { weights, direction, elimination: false }
    }

    pub fn ascending(weights: Vec<u64>) -> Self {
        Self::new(weights, Direction::Ascending)
    }

    pub fn descending(weights: Vec<u64>) -> Self {
        Self::new(weights, Direction::Descending)
    }

    /// `t` first (block order), then ascending weighted grevlex on `x`.
    pub fn elimination(weights: Vec<u64>) -> Self {
        OrderSpec { elimination: true, ..Self::ascending(weights) }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_elimination(&self) -> bool {
        self.elimination
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// Same weights with the elimination block dropped.
    pub fn without_elimination(&self) -> Self {
        OrderSpec { elimination: false, ..self.clone() }
    }

    pub fn with_direction(&self, direction: Direction) -> Self {
        OrderSpec { direction, ..self.clone() }
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: m.nvars() });
        }
        Ok(())
    }

    pub fn weighted_degree(&self, m: &Monomial) -> Result<u64> {
        self.check(m)?;
        Ok(self.degree(m))
    }

    /// Unchecked weighted degree; panics on overflow.
    pub(crate) fn degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.weights)
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.compare(a, b))
    }

    /// Total order on monomials of matching dimension.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        if self.elimination {
            let by_t = a.t.cmp(&b.t);
            if by_t != Ordering::Equal {
                return by_t;
            }
        } else {
            debug_assert!(a.t == 0 && b.t == 0, "t exponent outside an elimination order");
        }
        let by_degree = a.x_degree(&self.weights).cmp(&b.x_degree(&self.weights));
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let pairs = a.exps.iter().zip(&b.exps);
        let first_diff = match self.direction {
            Direction::Ascending => pairs.clone().find(|(x, y)| x != y),
            // index 0 is consulted last; on weight ties it is forced equal
            // whenever every other index agrees
            Direction::Descending => pairs.clone().skip(1).rev().find(|(x, y)| x != y).or_else(|| {
                let (x, y) = (&a.exps[0], &b.exps[0]);
                (x != y).then_some((x, y))
            }),
        };
        match first_diff {
            // a smaller exponent in the least variable makes the monomial larger
            Some((x, y)) => y.cmp(x),
            None => Ordering::Equal,
        }
    }

    pub fn greater(&self, a: &Monomial, b: &Monomial) -> bool {
        self.compare(a, b) == Ordering::Greater
    }
}

pub fn weighted_degree(m: &Monomial, spec: &OrderSpec) -> Result<u64> {
    spec.weighted_degree(m)
}

pub fn compare(a: &Monomial, b: &Monomial, spec: &OrderSpec) -> Result<Ordering> {
    spec.try_compare(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    #[test]
    fn weighted_degree_examples() {
        let spec = OrderSpec::ascending(vec![7, 8, 6]);
        assert_eq!(spec.weighted_degree(&mono("x1*x2", 3)).unwrap(), 14);
        assert_eq!(spec.weighted_degree(&Monomial::one(3)).unwrap(), 0);
        let spec = OrderSpec::ascending(vec![20, 21, 22, 23, 24, 29]);
        assert_eq!(spec.weighted_degree(&mono("x0^2*x3*x4", 6)).unwrap(), 87);
        assert_eq!(spec.weighted_degree(&mono("x5^3", 6)).unwrap(), 87);
        assert!(matches!(
            spec.weighted_degree(&Monomial::one(3)),
            Err(Error::DimensionMismatch { expected: 6, found: 3 })
        ));
    }

    #[test]
    fn compare_examples() {
        let asc = OrderSpec::ascending(vec![7, 8, 6]);
        assert_eq!(asc.compare(&mono("x1*x2", 3), &mono("x0^2", 3)), Ordering::Greater);
        assert_eq!(asc.compare(&mono("x2^4", 3), &mono("x1^3", 3)), Ordering::Greater);
        let a = mono("x0*x2^5", 3);
        assert_eq!(asc.compare(&a, &a), Ordering::Equal);
        let desc = OrderSpec::descending(vec![20, 21, 22, 23, 24, 29]);
        assert_eq!(desc.compare(&mono("x0^2*x3*x4", 6), &mono("x5^3", 6)), Ordering::Greater);
        assert_eq!(desc.compare(&mono("x0^3*x2", 6), &mono("x4*x5^2", 6)), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_t_first() {
        let spec = OrderSpec::elimination(vec![7, 8, 6]);
        let t7 = Monomial::t_power(3, 7);
        assert!(spec.greater(&t7, &mono("x0", 3)));
        assert!(spec.greater(&Monomial::t_power(3, 1), &mono("x1^9", 3)));
        assert!(spec.greater(&mono("t*x1", 3), &mono("t*x0", 3)));
    }

    #[test]
    fn text_form() {
        for s in ["1", "x0^2*x2^3", "x1", "t^3*x0*x4^12", "t"] {
            assert_eq!(mono(s, 5).to_string(), s);
        }
        assert_eq!(mono("x2*x0^2*x2", 3).to_string(), "x0^2*x2^2");
        for bad in ["", "x", "y1", "x1^", "x1^0", "x1**x2", "x-1", "x1^-2"] {
            assert!(Monomial::parse(bad, 3).is_err(), "{bad:?} should not parse");
        }
        assert!(matches!(Monomial::parse("x3", 3), Err(Error::DimensionMismatch { .. })));
    }

    fn arb_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..5, n).prop_map(|e| Monomial::from_exponents(&e))
    }

    const WEIGHTS: [u64; 5] = [9, 11, 13, 15, 10];

    fn spec_for(desc: bool) -> OrderSpec {
        if desc {
            OrderSpec::descending(WEIGHTS.to_vec())
        } else {
            OrderSpec::ascending(WEIGHTS.to_vec())
        }
    }

    proptest! {
        #[test]
        fn order_is_total_and_antisymmetric(a in arb_monomial(5), b in arb_monomial(5), desc: bool) {
            let spec = spec_for(desc);
            let ab = spec.compare(&a, &b);
            prop_assert_eq!(ab, spec.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
        }

        #[test]
        fn order_is_transitive(a in arb_monomial(5), b in arb_monomial(5), c in arb_monomial(5), desc: bool) {
            let spec = spec_for(desc);
            if spec.greater(&a, &b) && spec.greater(&b, &c) {
                prop_assert!(spec.greater(&a, &c));
            }
        }

        #[test]
        fn order_is_multiplicative(a in arb_monomial(5), b in arb_monomial(5), c in arb_monomial(5), desc: bool) {
            let spec = spec_for(desc);
            prop_assert_eq!(spec.compare(&a, &b), spec.compare(&a.mul(&c), &b.mul(&c)));
        }

        #[test]
        fn text_round_trip(a in arb_monomial(5), t in 0u32..3) {
            let a = Monomial { t, ..a };
            prop_assert_eq!(Monomial::parse(&a.to_string(), 5).unwrap(), a);
        }
    }
}
