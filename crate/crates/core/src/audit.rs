//! Per-instance property audit and sweep domains.
//!
//! An audit runs every structural check on one curve: the closed-form bases
//! against the elimination oracle, representation uniqueness in `V - W`,
//! ladder/generic normal-form agreement on random monomials, equal-weight
//! pair reduction, and the lead choices of both order variants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binalg::{
    buchberger_close, interreduce, is_groebner, is_minimal_gb, reduce_monomial, BasisSet, EngineConfig,
};
use crate::closedform::{assemble, build_family, family_labels, BasisKind, FamilyLabel};
use crate::error::{Error, Result};
use crate::ladder::{state_monomial, Ladder};
use crate::order::{Direction, Monomial, OrderSpec};
use crate::semigroup::{compute_parameters, CurveInput, CurveParameters};
use crate::toric::defining_ideal_gb;

/// Random monomials drawn per instance for the ladder comparison.
pub const LADDER_SAMPLES: usize = 500;
/// Largest exponent per variable in the random monomials.
pub const LADDER_MAX_EXPONENT: u32 = 6;
/// Equal-weight pairs checked per instance.
pub const PAIR_SAMPLES: usize = 200;

/// Every monomial in `x0..` of the given weighted degree.
pub fn monomials_of_weight(weights: &[u64], weight: u64) -> Vec<Monomial> {
    fn go(weights: &[u64], i: usize, left: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == weights.len() {
            if left.is_multiple_of(weights[i]) {
                exps[i] = (left / weights[i]) as u32;
                out.push(Monomial::from_exponents(exps));
            }
            return;
        }
        for e in 0..=left / weights[i] {
            exps[i] = e as u32;
            go(weights, i + 1, left - e * weights[i], exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    if !weights.is_empty() {
        go(weights, 0, weight, &mut vec![0; weights.len()], &mut out);
    }
    out
}

/// Whether some variable among `x1..xp` occurs in `m`.
pub fn has_mid_support(m: &Monomial, p: usize) -> bool {
    m.exponents()[1..=p].iter().any(|&e| e > 0)
}

/// Bounds of the full sweep; every validated input inside them is audited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepBounds {
    pub max_m0: u64,
    pub max_p: usize,
    pub max_mn: u64,
    /// Bound on the largest arithmetic term `mp`.
    pub max_mp: u64,
}

/// All valid inputs `(m0, m0+d, ..., m0+p*d; mn)` within `bounds`, ordered
/// by `(m0, p, d, mn)`. The common difference `d` ranges up to the bound on
/// `mp`.
pub fn sweep_instances(bounds: &SweepBounds) -> Vec<CurveInput> {
    let mut out = Vec::new();
    for m0 in 2..=bounds.max_m0 {
        for p in 1..=bounds.max_p {
            let max_d = bounds.max_mp.saturating_sub(m0) / p as u64;
            for d in 1..=max_d {
                let arith: Vec<u64> = (0..=p as u64).map(|i| m0 + i * d).collect();
                for mn in 1..=bounds.max_mn {
                    if let Ok(input) = CurveInput::new(arith.clone(), mn) {
                        out.push(input);
                    }
                }
            }
        }
    }
    out
}

/// The inputs `(m0, m0+1; m0-1)` for odd `m0 >= 5` in the range.
pub fn odd_shift_instances(lo: u64, hi: u64) -> Vec<CurveInput> {
    (lo.max(5)..=hi)
        .filter(|m0| m0 % 2 == 1)
        .filter_map(|m0| CurveInput::new(vec![m0, m0 + 1], m0 - 1).ok())
        .collect()
}

/// One named check and what went wrong, if anything.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn from_failures(name: &'static str, failures: Vec<String>) -> Self {
        let detail = failures.first().map(|f| {
            if failures.len() > 1 {
                format!("{f} (and {} more)", failures.len() - 1)
            } else {
                f.clone()
            }
        });
        CheckOutcome { name, passed: failures.is_empty(), detail }
    }

    fn from_result(name: &'static str, result: Result<Vec<String>>) -> Self {
        match result {
            Ok(failures) => Self::from_failures(name, failures),
            Err(e) => Self::from_failures(name, vec![format!("{}: {e}", e.name())]),
        }
    }
}

/// Audit of one instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceAudit {
    pub instance: String,
    pub arith: Vec<u64>,
    pub mn: u64,
    pub checks: Vec<CheckOutcome>,
}

impl InstanceAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_PARAMETERS: &str = "parameters";
pub const CHECK_PHI: &str = "phi-minimal-gb";
pub const CHECK_ORACLE: &str = "phi-matches-oracle";
pub const CHECK_OMEGA_CLOSURE: &str = "omega-generates-ideal";
pub const CHECK_PATIL_SINGH: &str = "patil-singh-gb-ascending";
pub const CHECK_REPRESENTATION: &str = "unique-representation";
pub const CHECK_LADDER: &str = "ladder-agrees";
pub const CHECK_PAIRS: &str = "equal-weight-pairs";
pub const CHECK_LEADS: &str = "lead-terms";
pub const CHECK_ODD_SHIFT: &str = "odd-shift-closed-forms";

/// Runs the full property suite on one input.
pub fn audit_instance(input: &CurveInput, config: &EngineConfig) -> InstanceAudit {
    let mut checks = Vec::new();
    let params = compute_parameters(input);
    checks.push(CheckOutcome::from_result(CHECK_PARAMETERS, params.as_ref().map(|_| vec![]).map_err(Clone::clone)));
    if let Ok(params) = params {
        let oracle = defining_ideal_gb(input, config);
        checks.push(CheckOutcome::from_result(CHECK_PHI, check_phi(&params)));
        checks.push(CheckOutcome::from_result(CHECK_ORACLE, check_phi_oracle(&params, &oracle)));
        checks.push(CheckOutcome::from_result(CHECK_OMEGA_CLOSURE, check_omega_closure(&params, &oracle, config)));
        checks.push(CheckOutcome::from_result(CHECK_PATIL_SINGH, check_patil_singh(&params)));
        checks.push(CheckOutcome::from_result(CHECK_REPRESENTATION, check_representations(&params)));
        checks.push(CheckOutcome::from_result(CHECK_LADDER, check_ladder(&params, LADDER_SAMPLES)));
        checks.push(CheckOutcome::from_result(CHECK_PAIRS, check_pairs(&params, PAIR_SAMPLES)));
        checks.push(CheckOutcome::from_result(CHECK_LEADS, check_leads(&params)));
    }
    InstanceAudit { instance: input.to_string(), arith: input.arith().to_vec(), mn: input.mn(), checks }
}

/// Audit for the odd-shift family: closed-form parameters, `Omega` not
/// Gröbner, `Phi` minimal Gröbner and equal to the oracle after reduction.
pub fn audit_odd_shift(input: &CurveInput, config: &EngineConfig) -> InstanceAudit {
    let mut checks = Vec::new();
    match compute_parameters(input) {
        Err(e) => checks.push(CheckOutcome::from_result(CHECK_PARAMETERS, Err(e))),
        Ok(params) => {
            checks.push(CheckOutcome::from_result(CHECK_ODD_SHIFT, check_odd_shift(&params)));
            checks.push(CheckOutcome::from_result(CHECK_PHI, check_phi(&params)));
            let oracle = defining_ideal_gb(input, config);
            checks.push(CheckOutcome::from_result(CHECK_ORACLE, check_phi_oracle(&params, &oracle)));
        }
    }
    InstanceAudit { instance: input.to_string(), arith: input.arith().to_vec(), mn: input.mn(), checks }
}

/// Audits every input; results keep input order.
pub fn audit_all(
    inputs: &[CurveInput],
    config: &EngineConfig,
    audit: fn(&CurveInput, &EngineConfig) -> InstanceAudit,
) -> Vec<InstanceAudit> {
    inputs.par_iter().map(|input| audit(input, config)).collect()
}

fn check_odd_shift(params: &CurveParameters) -> Result<Vec<String>> {
    let m0 = params.input.m0();
    let half = m0.div_ceil(2);
    let got = (params.upsilon, params.u, params.lambda, params.mu, params.w, params.z);
    let want = (half, half, 2, 0, half - 1, half - 1);
    let mut failures = Vec::new();
    if got != want {
        failures.push(format!("(upsilon, u, lambda, mu, w, z) = {got:?}, expected {want:?}"));
    }
    let omega = assemble(params, BasisKind::Omega, Direction::Ascending)?;
    if is_groebner(&omega.basis).is_groebner() {
        failures.push("Omega is a Groebner basis".into());
    }
    Ok(failures)
}

fn check_phi(params: &CurveParameters) -> Result<Vec<String>> {
    let phi = assemble(params, BasisKind::Phi, Direction::Ascending)?;
    Ok(match is_minimal_gb(&phi.basis) {
        Ok(m) if m.is_minimal() => vec![],
        Ok(m) => vec![format!("Phi is not minimal: {m:?}")],
        Err(Error::NotAGroebnerBasis) => {
            let w = is_groebner(&phi.basis);
            vec![format!("Phi is not a Groebner basis: {:?}", w.witness())]
        }
        Err(e) => return Err(e),
    })
}

fn compare_with_oracle(what: &str, basis: &BasisSet, oracle: &BasisSet) -> Vec<String> {
    if basis.same_elements(oracle) {
        return vec![];
    }
    let ours = basis.to_lines();
    let theirs = oracle.to_lines();
    let first = ours.iter().zip(&theirs).find(|(a, b)| a != b);
    vec![match first {
        Some((a, b)) => format!("{what} differs from the oracle: {a} vs {b}"),
        None => format!("{what} has {} elements, the oracle {}", ours.len(), theirs.len()),
    }]
}

fn check_phi_oracle(params: &CurveParameters, oracle: &Result<BasisSet>) -> Result<Vec<String>> {
    let oracle = oracle.as_ref().map_err(Clone::clone)?;
    let phi = assemble(params, BasisKind::Phi, Direction::Ascending)?;
    if !is_groebner(&phi.basis).is_groebner() {
        return Ok(vec!["Phi is not a Groebner basis".into()]);
    }
    Ok(compare_with_oracle("reduced Phi", &interreduce(&phi.basis), oracle))
}

fn check_omega_closure(
    params: &CurveParameters,
    oracle: &Result<BasisSet>,
    config: &EngineConfig,
) -> Result<Vec<String>> {
    let oracle = oracle.as_ref().map_err(Clone::clone)?;
    let omega = assemble(params, BasisKind::Omega, Direction::Ascending)?;
    let closed = buchberger_close(&omega.basis, config)?;
    Ok(compare_with_oracle("closure of Omega", &interreduce(&closed), oracle))
}

fn check_patil_singh(params: &CurveParameters) -> Result<Vec<String>> {
    let ps = assemble(params, BasisKind::PatilSingh, Direction::Ascending)?;
    Ok(match is_groebner(&ps.basis).witness() {
        None => vec![],
        Some(w) => vec![format!("not a Groebner basis, witness {w:?}")],
    })
}

fn check_representations(params: &CurveParameters) -> Result<Vec<String>> {
    let bound = params.semigroup().max_apery() + params.input.m0();
    let mut failures = Vec::new();
    for gamma in 0..=bound {
        if !params.semigroup().contains(gamma) {
            continue;
        }
        if let Err(e) = params.unique_representation(gamma) {
            failures.push(format!("{gamma}: {e}"));
        }
    }
    Ok(failures)
}

/// Deterministic per-instance seed.
fn instance_seed(input: &CurveInput) -> u64 {
    input.weights().iter().fold(0x9e37_79b9_7f4a_7c15, |h, &m| (h ^ m).wrapping_mul(0x1000_0000_01b3))
}

/// Random monomials with exponents in `[0, max_exp]` and some mid support.
pub fn random_monomials(rng: &mut impl Rng, nvars: usize, p: usize, max_exp: u32, count: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        let m = Monomial::from_exponents(&exps);
        if has_mid_support(&m, p) {
            out.push(m);
        }
    }
    out
}

fn check_ladder(params: &CurveParameters, samples: usize) -> Result<Vec<String>> {
    let ladder = Ladder::new(params)?;
    let weights = params.input.weights();
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(&params.input));
    let monomials =
        random_monomials(&mut rng, weights.len(), params.input.p(), LADDER_MAX_EXPONENT, samples);
    let mut failures = Vec::new();
    for alpha in monomials {
        // normal_form itself asserts weight conservation and V - W membership
        let st = match ladder.normal_form(&alpha) {
            Ok(st) => st,
            Err(e) => {
                failures.push(format!("{alpha}: {e}"));
                continue;
            }
        };
        let ours = state_monomial(params, &st);
        let generic = reduce_monomial(&alpha, &ladder.phi().basis);
        if ours != generic {
            failures.push(format!("{alpha}: ladder gives {ours}, division gives {generic}"));
        }
    }
    Ok(failures)
}

/// The first `count` pairs `(a, b)`, `a` before `b`, of distinct monomials of
/// equal weight with mid support, taken weight by weight from the smallest.
pub fn equal_weight_pairs(params: &CurveParameters, count: usize) -> Vec<(Monomial, Monomial)> {
    let weights = params.input.weights();
    let p = params.input.p();
    let mut pairs = Vec::new();
    let mut weight = params.input.m(1);
    while pairs.len() < count {
        let forms: Vec<Monomial> =
            monomials_of_weight(&weights, weight).into_iter().filter(|m| has_mid_support(m, p)).collect();
        for (i, a) in forms.iter().enumerate() {
            for b in &forms[i + 1..] {
                if pairs.len() == count {
                    return pairs;
                }
                pairs.push((a.clone(), b.clone()));
            }
        }
        weight += 1;
    }
    pairs
}

fn check_pairs(params: &CurveParameters, count: usize) -> Result<Vec<String>> {
    let ladder = Ladder::new(params)?;
    let mut failures = Vec::new();
    for (a, b) in equal_weight_pairs(params, count) {
        if !ladder.check_second_main(&a, &b)? {
            failures.push(format!("{a} - {b} does not reduce to zero"));
        }
    }
    Ok(failures)
}

/// Product of `x_i^e`; exponents may cancel (`q_z = -1` pairs with `r_z = p`).
fn monomial(n: usize, parts: &[(usize, i64)]) -> Monomial {
    let mut exps = vec![0i64; n + 1];
    for &(i, e) in parts {
        exps[i] += e;
    }
    let exps: Vec<u32> = exps.iter().map(|&e| u32::try_from(e).expect("nonnegative exponent")).collect();
    Monomial::from_exponents(&exps)
}

/// The lead each family member must take under ascending and descending
/// weighted grevlex; `None` where no lead is prescribed.
pub fn expected_leads(params: &CurveParameters, label: FamilyLabel) -> (Monomial, Option<Monomial>) {
    let (p, n) = (params.input.p(), params.input.n());
    let k = params;
    let (q, qp, v, w) = (k.q as i64, k.q_prime as i64, k.upsilon as i64, k.w as i64);
    match label {
        FamilyLabel::Xi(i, j) => {
            let m = monomial(n, &[(i, 1), (j, 1)]);
            (m.clone(), Some(m))
        }
        FamilyLabel::Phi(i) => {
            let m = monomial(n, &[(i + k.r, 1), (p, q)]);
            let desc = (k.w > 0).then(|| m.clone());
            (m, desc)
        }
        FamilyLabel::Psi(j) => (
            monomial(n, &[(k.r_prime + j, 1), (p, qp), (n, v - w)]),
            Some(monomial(n, &[(0, (k.lambda + k.mu) as i64 - k.epsilon as i64), (j, 1)])),
        ),
        FamilyLabel::Theta => (
            monomial(n, &[(n, v)]),
            Some(monomial(n, &[(0, k.mu as i64), (k.r_z, 1), (p, k.q_z)])),
        ),
    }
}

fn check_leads(params: &CurveParameters) -> Result<Vec<String>> {
    let weights = params.input.weights();
    let asc = OrderSpec::ascending(weights.clone());
    let desc = OrderSpec::descending(weights);
    let mut failures = Vec::new();
    for label in family_labels(params, BasisKind::PatilSingh) {
        let f = build_family(params, label)?;
        let (want_asc, want_desc) = expected_leads(params, label);
        let got = f.reoriented(&asc);
        if got.lead() != &want_asc {
            failures.push(format!("ascending lead of {label} is {}, expected {want_asc}", got.lead()));
        }
        if let Some(want) = want_desc {
            let got = f.reoriented(&desc);
            if got.lead() != &want {
                failures.push(format!("descending lead of {label} is {}, expected {want}", got.lead()));
            }
        }
    }
    Ok(failures)
}
