//! Binomials with unit coefficients and a Buchberger engine over them.
//!
//! Every ideal handled here is generated by differences of monomials, and
//! S-polynomials and reduction steps of such binomials are again binomials
//! (or zero). Coefficients therefore never leave `{+1, -1}` and no field
//! arithmetic is needed: a binomial is just an ordered pair of monomials.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{Monomial, OrderSpec};

/// `lead - tail` with `lead > tail` under the order it was built for.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Binomial {
    lead: Monomial,
    tail: Monomial,
}

impl Binomial {
    /// Orients `a - b` under `spec`; `None` when the terms cancel.
    pub fn new(a: Monomial, b: Monomial, spec: &OrderSpec) -> Option<Binomial> {
        match spec.compare(&a, &b) {
            Ordering::Greater => Some(Binomial { lead: a, tail: b }),
            Ordering::Less => Some(Binomial { lead: b, tail: a }),
            Ordering::Equal => None,
        }
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn tail(&self) -> &Monomial {
        &self.tail
    }

    /// Both terms, in the order they were written.
    pub fn terms(&self) -> (&Monomial, &Monomial) {
        (&self.lead, &self.tail)
    }

    pub fn reoriented(&self, spec: &OrderSpec) -> Binomial {
        Binomial::new(self.lead.clone(), self.tail.clone(), spec).expect("terms are distinct")
    }

    pub fn is_homogeneous(&self, weights: &[u64]) -> bool {
        self.lead.weighted_degree(weights) == self.tail.weighted_degree(weights)
    }

    /// Same two terms regardless of orientation.
    pub fn same_terms(&self, a: &Monomial, b: &Monomial) -> bool {
        (&self.lead == a && &self.tail == b) || (&self.lead == b && &self.tail == a)
    }

    /// Parses `lead - tail` and orients it under `spec`; both terms must
    /// have the same weighted degree.
    pub fn parse(text: &str, spec: &OrderSpec) -> Result<Binomial> {
        let bad = || Error::Parse { what: "binomial", input: text.to_string() };
        let (a, b) = text.split_once(" - ").ok_or_else(bad)?;
        let a = Monomial::parse(a, spec.nvars())?;
        let b = Monomial::parse(b, spec.nvars())?;
        let (wa, wb) = (spec.degree(&a), spec.degree(&b));
        if wa != wb {
            return Err(Error::UnequalWeights(wa, wb));
        }
        Binomial::new(a, b, spec).ok_or_else(bad)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.tail)
    }
}

impl Serialize for Binomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite set of binomials, each oriented under `spec`.
#[derive(Clone, Debug)]
pub struct BasisSet {
    elements: Vec<Binomial>,
    spec: OrderSpec,
}

impl BasisSet {
    /// Re-orients every element under `spec` and drops duplicates, keeping
    /// the first occurrence so that element positions stay meaningful.
    pub fn new(elements: impl IntoIterator<Item = Binomial>, spec: OrderSpec) -> Self {
        let mut seen = HashSet::new();
        let elements = elements
            .into_iter()
            .map(|b| b.reoriented(&spec))
            .filter(|b| seen.insert(b.clone()))
            .collect();
        BasisSet { elements, spec }
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn spec(&self) -> &OrderSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn with_spec(&self, spec: OrderSpec) -> BasisSet {
        BasisSet::new(self.elements.iter().cloned(), spec)
    }

    /// Elements in canonical order: by lead, then by tail.
    pub fn sorted(&self) -> Vec<Binomial> {
        let mut v = self.elements.clone();
        v.sort_by(|a, b| {
            self.spec.compare(&a.lead, &b.lead).then_with(|| self.spec.compare(&a.tail, &b.tail))
        });
        v
    }

    /// Deterministic text form, one `lead - tail` per line.
    pub fn to_lines(&self) -> Vec<String> {
        self.sorted().iter().map(Binomial::to_string).collect()
    }

    /// Set equality, ignoring element order.
    pub fn same_elements(&self, other: &BasisSet) -> bool {
        self.spec == other.spec && self.sorted() == other.sorted()
    }

    pub fn contains(&self, f: &Binomial) -> bool {
        self.elements.contains(f)
    }
}

impl Serialize for BasisSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_lines().serialize(s)
    }
}

/// Divisor lookup over the leads of a basis.
struct Reducer<'a> {
    spec: &'a OrderSpec,
    leads: Vec<(&'a Monomial, &'a Monomial, u64)>,
}

impl<'a> Reducer<'a> {
    fn new(elements: &'a [Binomial], spec: &'a OrderSpec) -> Self {
        let leads = elements.iter().map(|b| (&b.lead, &b.tail, spec.degree(&b.lead))).collect();
        Reducer { spec, leads }
    }

    fn reduce(&self, m: &Monomial) -> Monomial {
        let deg = self.spec.degree(m);
        let mut cur = m.clone();
        while let Some((lead, tail, _)) =
            self.leads.iter().find(|(lead, _, d)| *d <= deg && lead.divides(&cur))
        {
            let next = cur.replace(lead, tail);
            debug_assert!(self.spec.greater(&cur, &next), "reduction must decrease");
            cur = next;
        }
        cur
    }

    fn normal_form(&self, f: &Binomial) -> Option<Binomial> {
        Binomial::new(self.reduce(&f.lead), self.reduce(&f.tail), self.spec)
    }
}

/// `(L/lead_f)*f - (L/lead_g)*g` with `L = lcm(lead_f, lead_g)`; `None`
/// when the scaled tails coincide.
pub fn s_polynomial(f: &Binomial, g: &Binomial, spec: &OrderSpec) -> Option<Binomial> {
    let l = f.lead.lcm(&g.lead);
    let a = l.replace(&f.lead, &f.tail);
    let b = l.replace(&g.lead, &g.tail);
    let s = Binomial::new(a, b, spec);
    debug_assert!(s.as_ref().is_none_or(|s| s.is_homogeneous_for(spec)));
    s
}

impl Binomial {
    fn is_homogeneous_for(&self, spec: &OrderSpec) -> bool {
        spec.degree(&self.lead) == spec.degree(&self.tail)
    }
}

/// Fully reduces a monomial modulo `basis`.
pub fn reduce_monomial(m: &Monomial, basis: &BasisSet) -> Monomial {
    Reducer::new(&basis.elements, &basis.spec).reduce(m)
}

/// Reduces both terms of `f` modulo `basis`; `None` means `f` reduces to zero.
pub fn normal_form(f: &Binomial, basis: &BasisSet) -> Option<Binomial> {
    Reducer::new(&basis.elements, &basis.spec).normal_form(f)
}

/// A pair whose S-polynomial does not reduce to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub first: usize,
    pub second: usize,
    pub s_polynomial: Binomial,
    pub remainder: Binomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerCheck {
    Groebner,
    NotGroebner(Box<Witness>),
}

impl GroebnerCheck {
    pub fn is_groebner(&self) -> bool {
        matches!(self, GroebnerCheck::Groebner)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            GroebnerCheck::Groebner => None,
            GroebnerCheck::NotGroebner(w) => Some(w),
        }
    }
}

fn failing_pairs(basis: &BasisSet) -> impl Iterator<Item = Witness> + '_ {
    let reducer = Reducer::new(&basis.elements, &basis.spec);
    let n = basis.len();
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j))).filter_map(move |(i, j)| {
        let (f, g) = (&basis.elements[i], &basis.elements[j]);
        let s = s_polynomial(f, g, &basis.spec)?;
        let remainder = reducer.normal_form(&s)?;
        Some(Witness { first: i, second: j, s_polynomial: s, remainder })
    })
}

/// Buchberger's criterion over all pairs, in index order.
pub fn is_groebner(basis: &BasisSet) -> GroebnerCheck {
    match failing_pairs(basis).next() {
        None => GroebnerCheck::Groebner,
        Some(w) => GroebnerCheck::NotGroebner(Box::new(w)),
    }
}

/// Every pair whose S-polynomial has a nonzero remainder.
pub fn groebner_failures(basis: &BasisSet) -> Vec<Witness> {
    failing_pairs(basis).collect()
}

/// Caps for [`buchberger_close`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub max_elements: usize,
    pub max_degree: Option<u64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_elements: 10_000, max_degree: None }
    }
}

impl EngineConfig {
    pub const ENV_MAX_BASIS: &'static str = "CURVE_GB_MAX_BASIS";

    /// Default caps, with `CURVE_GB_MAX_BASIS` overriding the element cap.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(v) = std::env::var(Self::ENV_MAX_BASIS) {
            cfg.max_elements = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse { what: Self::ENV_MAX_BASIS, input: v.clone() })?;
        }
        Ok(cfg)
    }
}

/// Completes `basis` to a Gröbner basis of the ideal it generates.
///
/// Pairs are taken in increasing weighted degree of their lcm (first index
/// breaks ties) and pairs with coprime leads are skipped.
pub fn buchberger_close(basis: &BasisSet, config: &EngineConfig) -> Result<BasisSet> {
    let spec = &basis.spec;
    let mut elements = basis.elements.clone();
    if elements.len() > config.max_elements {
        return Err(Error::ResourceLimit(format!("more than {} elements", config.max_elements)));
    }
    let mut queue = BinaryHeap::new();
    let push_pairs = |queue: &mut BinaryHeap<_>, elements: &[Binomial], j: usize| {
        for i in 0..j {
            let (f, g) = (&elements[i], &elements[j]);
            if !f.lead.is_coprime(&g.lead) {
                queue.push(Reverse((spec.degree(&f.lead.lcm(&g.lead)), i, j)));
            }
        }
    };
    for j in 1..elements.len() {
        push_pairs(&mut queue, &elements, j);
    }
    while let Some(Reverse((degree, i, j))) = queue.pop() {
        if config.max_degree.is_some_and(|cap| degree > cap) {
            return Err(Error::ResourceLimit(format!("pair degree {degree} above cap")));
        }
        let Some(s) = s_polynomial(&elements[i], &elements[j], spec) else {
            continue;
        };
        let Some(rem) = Reducer::new(&elements, spec).normal_form(&s) else {
            continue;
        };
        if elements.len() >= config.max_elements {
            return Err(Error::ResourceLimit(format!("more than {} elements", config.max_elements)));
        }
        elements.push(rem);
        push_pairs(&mut queue, &elements, elements.len() - 1);
    }
    Ok(BasisSet { elements, spec: spec.clone() })
}

/// Minimal and fully interreduced form of a basis already known to be
/// Gröbner. Unique for the ideal and order.
pub(crate) fn interreduce(basis: &BasisSet) -> BasisSet {
    let spec = &basis.spec;
    let mut by_lead = basis.elements.clone();
    by_lead.sort_by(|a, b| spec.compare(&a.lead, &b.lead));
    let mut kept: Vec<Binomial> = Vec::new();
    for b in by_lead {
        // divisors of a lead are never larger than it
        if !kept.iter().any(|k| k.lead.divides(&b.lead)) {
            kept.push(b);
        }
    }
    let reducer = Reducer::new(&kept, spec);
    let reduced: Vec<Binomial> = kept
        .iter()
        .map(|b| {
            let tail = reducer.reduce(&b.tail);
            debug_assert!(spec.greater(&b.lead, &tail));
            Binomial { lead: b.lead.clone(), tail }
        })
        .collect();
    let set = BasisSet { elements: reduced, spec: spec.clone() };
    BasisSet { elements: set.sorted(), spec: spec.clone() }
}

/// The reduced Gröbner basis; errors when `basis` is not Gröbner.
pub fn reduced_basis(basis: &BasisSet) -> Result<BasisSet> {
    if !is_groebner(basis).is_groebner() {
        return Err(Error::NotAGroebnerBasis);
    }
    Ok(interreduce(basis))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Minimality {
    Minimal,
    /// The lead of element `divisor` divides the lead of element `multiple`.
    Violation { divisor: usize, multiple: usize },
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Minimality::Minimal)
    }
}

/// Leads-only minimality test, for a basis already known to be Gröbner.
pub fn minimality(basis: &BasisSet) -> Minimality {
    let els = &basis.elements;
    for (j, b) in els.iter().enumerate() {
        for (i, a) in els.iter().enumerate() {
            if i != j && a.lead.divides(&b.lead) {
                return Minimality::Violation { divisor: i, multiple: j };
            }
        }
    }
    Minimality::Minimal
}

/// Gröbner and no lead divides another element's lead.
pub fn is_minimal_gb(basis: &BasisSet) -> Result<Minimality> {
    if !is_groebner(basis).is_groebner() {
        return Err(Error::NotAGroebnerBasis);
    }
    Ok(minimality(basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec786() -> OrderSpec {
        OrderSpec::ascending(vec![7, 8, 6])
    }

    fn bin(text: &str, spec: &OrderSpec) -> Binomial {
        Binomial::parse(text, spec).unwrap()
    }

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn omega786() -> BasisSet {
        let spec = spec786();
        BasisSet::new([bin("x1*x2 - x0^2", &spec), bin("x2^4 - x1^3", &spec)], spec)
    }

    fn phi786() -> BasisSet {
        let spec = spec786();
        let mut els = omega786().elements().to_vec();
        els.insert(0, bin("x1^4 - x0^2*x2^3", &spec));
        BasisSet::new(els, spec)
    }

    #[test]
    fn s_polynomial_examples() {
        let spec = spec786();
        let (psi0, theta) = (bin("x1*x2 - x0^2", &spec), bin("x2^4 - x1^3", &spec));
        let s = s_polynomial(&psi0, &theta, &spec).unwrap();
        assert!(s.same_terms(&mono("x1^4", 3), &mono("x0^2*x2^3", 3)));
        assert_eq!(s_polynomial(&psi0, &psi0, &spec), None);

        let desc = OrderSpec::descending(vec![20, 21, 22, 23, 24, 29]);
        let theta = bin("x5^3 - x0^2*x3*x4", &desc);
        let xi13 = bin("x1*x3 - x0*x4", &desc);
        let s = s_polynomial(&theta, &xi13, &desc).unwrap();
        assert!(s.same_terms(&mono("x1*x5^3", 6), &mono("x0^3*x4^2", 6)));
    }

    #[test]
    fn normal_form_examples() {
        let spec = spec786();
        let s = bin("x1^4 - x0^2*x2^3", &spec);
        assert_eq!(normal_form(&s, &omega786()), Some(s.clone()));
        assert_eq!(reduce_monomial(&mono("x2^4", 3), &phi786()), mono("x1^3", 3));
        assert_eq!(reduce_monomial(&Monomial::one(3), &phi786()), Monomial::one(3));
        // x1*x2 -> x0^2 leaves x1^3*x2^4 ~ ... all the way down
        let f = bin("x1^2*x2^2 - x0^2*x1*x2", &spec);
        assert_eq!(normal_form(&f, &phi786()), None);
    }

    #[test]
    fn groebner_examples() {
        let check = is_groebner(&omega786());
        let w = check.witness().expect("Omega(7,8;6) is not Groebner");
        assert_eq!((w.first, w.second), (0, 1));
        assert!(w.remainder.same_terms(&mono("x1^4", 3), &mono("x0^2*x2^3", 3)));

        let spec = spec786();
        let single = BasisSet::new([bin("x2^4 - x1^3", &spec)], spec);
        assert!(is_groebner(&single).is_groebner());
        assert!(is_groebner(&phi786()).is_groebner());
        assert_eq!(groebner_failures(&omega786()).len(), 1);
    }

    #[test]
    fn closure_examples() {
        let closed = buchberger_close(&omega786(), &EngineConfig::default()).unwrap();
        assert!(closed.same_elements(&phi786()));
        let again = buchberger_close(&phi786(), &EngineConfig::default()).unwrap();
        assert!(again.same_elements(&phi786()));

        let tight = EngineConfig { max_elements: 2, max_degree: None };
        assert!(matches!(buchberger_close(&omega786(), &tight), Err(Error::ResourceLimit(_))));
        let low = EngineConfig { max_elements: 100, max_degree: Some(10) };
        assert!(matches!(buchberger_close(&omega786(), &low), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn reduced_basis_examples() {
        let reduced = reduced_basis(&phi786()).unwrap();
        assert!(reduced.same_elements(&phi786()));
        assert_eq!(reduced_basis(&omega786()).unwrap_err(), Error::NotAGroebnerBasis);

        let spec = spec786();
        let mut extra = phi786().elements().to_vec();
        extra.push(bin("x0*x1*x2 - x0^3", &spec));
        let extra = BasisSet::new(extra, spec);
        assert!(reduced_basis(&extra).unwrap().same_elements(&reduced));
    }

    #[test]
    fn minimality_examples() {
        assert_eq!(is_minimal_gb(&phi786()).unwrap(), Minimality::Minimal);
        let spec = spec786();
        let mut extra = phi786().elements().to_vec();
        extra.push(bin("x0*x1*x2 - x0^3", &spec));
        let extra = BasisSet::new(extra, spec);
        assert_eq!(
            is_minimal_gb(&extra).unwrap(),
            Minimality::Violation { divisor: 1, multiple: 3 }
        );
        assert_eq!(is_minimal_gb(&omega786()).unwrap_err(), Error::NotAGroebnerBasis);
    }

    #[test]
    fn serialization_is_sorted_and_parseable() {
        let lines = phi786().to_lines();
        assert_eq!(lines, ["x1*x2 - x0^2", "x2^4 - x1^3", "x1^4 - x0^2*x2^3"]);
        let spec = spec786();
        let back = BasisSet::new(lines.iter().map(|l| bin(l, &spec)), spec.clone());
        assert!(back.same_elements(&phi786()));
        assert!(Binomial::parse("x1 - x1", &spec786()).is_err());
        assert!(Binomial::parse("x1-x0", &spec786()).is_err());
    }

    /// Reduction with a random choice of divisor at every step.
    fn reduce_shuffled(m: &Monomial, basis: &BasisSet, rng: &mut ChaCha8Rng) -> Monomial {
        let mut cur = m.clone();
        loop {
            let divisors: Vec<&Binomial> =
                basis.elements().iter().filter(|b| b.lead().divides(&cur)).collect();
            match divisors.choose(rng) {
                Some(b) => cur = cur.replace(b.lead(), b.tail()),
                None => return cur,
            }
        }
    }

    fn arb_mono3() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..7, 3).prop_map(|e| Monomial::from_exponents(&e))
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent_and_path_independent(m in arb_mono3(), seed: u64) {
            let phi = phi786();
            let nf = reduce_monomial(&m, &phi);
            prop_assert_eq!(reduce_monomial(&nf, &phi), nf.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(reduce_shuffled(&m, &phi, &mut rng), nf.clone());
            let w = phi.spec().weights();
            prop_assert_eq!(nf.weighted_degree(w), m.weighted_degree(w));
        }

        #[test]
        fn reduced_basis_ignores_permutation(seed: u64) {
            let closed = buchberger_close(&omega786(), &EngineConfig::default()).unwrap();
            let mut els = closed.elements().to_vec();
            els.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let shuffled = BasisSet::new(els, spec786());
            let a = reduced_basis(&shuffled).unwrap();
            prop_assert!(a.same_elements(&reduced_basis(&closed).unwrap()));
            prop_assert!(reduced_basis(&a).unwrap().same_elements(&a));
        }

        #[test]
        fn s_polynomials_stay_homogeneous(a in arb_mono3(), b in arb_mono3(), c in arb_mono3()) {
            let spec = spec786();
            let w = spec.weights().to_vec();
            // x0^7 = x2^... style homogeneous pairs via weight-equal products
            let f = Binomial::new(a.mul(&Monomial::from_exponents(&[6, 0, 0])), a.mul(&Monomial::from_exponents(&[0, 0, 7])), &spec).unwrap();
            let g = Binomial::new(b.mul(&Monomial::from_exponents(&[0, 3, 0])), b.mul(&Monomial::from_exponents(&[0, 0, 4])), &spec).unwrap();
            if let Some(s) = s_polynomial(&f, &g, &spec) {
                prop_assert!(s.is_homogeneous(&w));
                let basis = BasisSet::new([f.clone(), g.clone()], spec.clone());
                if let Some(r) = normal_form(&s.clone(), &basis) {
                    prop_assert!(r.is_homogeneous(&w));
                }
            }
            let _ = c;
        }
    }
}
