use std::fmt::Write as _;
use std::fs;

use curve_gb::audit::{
    audit_all, audit_instance, audit_odd_shift, odd_shift_instances, sweep_instances, InstanceAudit, SweepBounds,
};
use curve_gb::binalg::{is_groebner, minimality, reduce_monomial, reduced_basis};
use curve_gb::ladder::{state_monomial, Ladder};
use curve_gb::semigroup::validate_input;
use curve_gb::toric::defining_ideal_gb;
use curve_gb::{
    assemble, compute_parameters, BasisKind, BasisSet, Binomial, CurveInput, CurveParameters, Direction,
    EngineConfig, Error, Minimality, Monomial, NamedBasis, OrderSpec, Result,
};
use serde_json::json;

use crate::report::{input_json, RunReport};
use crate::{Command, CurveArgs, EngineArg, FamilyArg};

pub struct Outcome {
    pub report: RunReport,
    pub text: String,
    pub status: u8,
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Params(curve) => params(curve),
        Command::Basis { curve, kind, order } => basis(curve, (*kind).into(), (*order).into()),
        Command::Check { curve, kind, order } => check(curve, (*kind).into(), (*order).into()),
        Command::Compare { curve, basis_file } => compare(curve, basis_file.as_deref()),
        Command::Sweep { family, m0, all: _, max_m0, max_p, max_mn, max_mp } => match family {
            Some(FamilyArg::OddShift) => sweep_family(m0),
            None => sweep_all(SweepBounds { max_m0: *max_m0, max_p: *max_p, max_mn: *max_mn, max_mp: *max_mp }),
        },
        Command::Nf { curve, monomial, engine, explain } => nf(curve, monomial, *engine, *explain),
    }
}

fn load(curve: &CurveArgs) -> Result<(CurveInput, CurveParameters)> {
    let input = validate_input(&curve.arith, curve.mn)?;
    let params = compute_parameters(&input)?;
    Ok((input, params))
}

fn parameter_line(k: &CurveParameters) -> String {
    format!(
        "u={} upsilon={} w={} z={} lambda={} mu={} nu={} q={} r={} q'={} r'={} q_z={} r_z={} epsilon={} I={} J={}",
        k.u,
        k.upsilon,
        k.w,
        k.z,
        k.lambda,
        k.mu,
        k.nu,
        k.q,
        k.r,
        k.q_prime,
        k.r_prime,
        k.q_z,
        k.r_z,
        k.epsilon,
        k.i_range,
        k.j_range
    )
}

fn params(curve: &CurveArgs) -> Result<Outcome> {
    let mut report = RunReport::new("params");
    let (input, k) = load(curve)?;
    report.input(&input);
    report.parameters(&k);
    let text = format!("{input}\n{}\n", parameter_line(&k));
    Ok(Outcome { report, text, status: 0 })
}

fn labeled_lines(named: &NamedBasis) -> Vec<serde_json::Value> {
    named.labeled().map(|(l, f)| json!({ "label": l.to_string(), "binomial": f.to_string() })).collect()
}

fn basis(curve: &CurveArgs, kind: BasisKind, direction: Direction) -> Result<Outcome> {
    let mut report = RunReport::new("basis");
    let (input, k) = load(curve)?;
    let named = assemble(&k, kind, direction)?;
    report.input(&input);
    report.set("kind", kind);
    report.set("order", direction);
    report.set("elements", labeled_lines(&named));
    let width = named.labels.iter().map(|l| l.to_string().len()).max().unwrap_or(0);
    let mut text = String::new();
    for (label, f) in named.labeled() {
        let _ = writeln!(text, "{:<width$}  {f}", label.to_string());
    }
    Ok(Outcome { report, text, status: 0 })
}

fn check(curve: &CurveArgs, kind: BasisKind, direction: Direction) -> Result<Outcome> {
    let mut report = RunReport::new("check");
    let (input, k) = load(curve)?;
    let named = assemble(&k, kind, direction)?;
    report.input(&input);
    report.set("kind", kind);
    report.set("order", direction);
    report.set("elements", named.basis.len());

    let order = match direction {
        Direction::Ascending => "ascending",
        Direction::Descending => "descending",
    };
    let mut text = format!("{kind} for {input}, {order} order, {} elements\n", named.basis.len());
    let groebner = is_groebner(&named.basis);
    let mut status = 0;
    match groebner.witness() {
        Some(w) => {
            let (a, b) = (named.label(w.first), named.label(w.second));
            report.set("groebner", "NOT_GB");
            report.set(
                "witness",
                json!({
                    "pair": [a.to_string(), b.to_string()],
                    "s_polynomial": w.s_polynomial.to_string(),
                    "remainder": w.remainder.to_string(),
                }),
            );
            report.set("minimal", serde_json::Value::Null);
            let _ = writeln!(text, "NOT_GB");
            let _ = writeln!(text, "witness: S({a}, {b}) = {}", w.s_polynomial);
            let _ = writeln!(text, "remainder: {}", w.remainder);
            status = 1;
        }
        None => {
            report.set("groebner", "GB");
            let _ = writeln!(text, "GB");
            match minimality(&named.basis) {
                Minimality::Minimal => {
                    report.set("minimal", "MINIMAL");
                    let _ = writeln!(text, "MINIMAL");
                }
                Minimality::Violation { divisor, multiple } => {
                    let (a, b) = (named.label(divisor), named.label(multiple));
                    report.set("minimal", "NOT_MINIMAL");
                    report.set("minimality_witness", json!({ "divisor": a.to_string(), "multiple": b.to_string() }));
                    let _ = writeln!(text, "NOT_MINIMAL: lead of {a} divides lead of {b}");
                    status = 1;
                }
            }
        }
    }
    Ok(Outcome { report, text, status })
}

fn read_basis_file(path: &std::path::Path, spec: &OrderSpec) -> Result<BasisSet> {
    let content = fs::read_to_string(path)
        .map_err(|e| Error::UnsupportedInput(format!("cannot read {}: {e}", path.display())))?;
    let elements = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Binomial::parse(l, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisSet::new(elements, spec.clone()))
}

fn compare(curve: &CurveArgs, basis_file: Option<&std::path::Path>) -> Result<Outcome> {
    let mut report = RunReport::new("compare");
    let (input, k) = load(curve)?;
    let config = EngineConfig::from_env()?;
    let spec = OrderSpec::ascending(input.weights());
    let (source, candidate) = match basis_file {
        Some(path) => (path.display().to_string(), read_basis_file(path, &spec)?),
        None => ("phi".to_string(), assemble(&k, BasisKind::Phi, Direction::Ascending)?.basis),
    };
    // a Groebner candidate is compared in reduced form, anything else as given
    let candidate_is_gb = is_groebner(&candidate).is_groebner();
    let reduced = if candidate_is_gb { reduced_basis(&candidate)? } else { candidate };
    let oracle = defining_ideal_gb(&input, &config)?;

    report.input(&input);
    report.set("source", &source);
    report.set("groebner", if candidate_is_gb { "GB" } else { "NOT_GB" });
    report.set("candidate", &reduced);
    report.set("oracle", &oracle);

    let ours = reduced.to_lines();
    let theirs = oracle.to_lines();
    let mut text = format!("{source} vs elimination oracle for {input}\n");
    let status = if ours == theirs && candidate_is_gb {
        report.set("verdict", "EQUAL");
        let _ = writeln!(text, "EQUAL ({} elements)", ours.len());
        0
    } else {
        report.set("verdict", "DIFFER");
        let index = (0..ours.len().max(theirs.len()))
            .find(|&i| ours.get(i) != theirs.get(i))
            .unwrap_or(0);
        let mismatch = json!({ "index": index, "ours": ours.get(index), "oracle": theirs.get(index) });
        report.set("first_mismatch", &mismatch);
        let _ = writeln!(text, "DIFFER");
        if !candidate_is_gb {
            let _ = writeln!(text, "the basis is not a Groebner basis");
        }
        let show = |v: Option<&String>| v.cloned().unwrap_or_else(|| "(none)".into());
        let _ = writeln!(text, "element {index}: {} vs oracle {}", show(ours.get(index)), show(theirs.get(index)));
        1
    };
    Ok(Outcome { report, text, status })
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse { what: "range", input: text.to_string() };
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match text.split_once("..") {
        Some((lo, hi)) => Ok((num(lo)?, num(hi.trim_start_matches('='))?)),
        None => num(text).map(|v| (v, v)),
    }
}

fn sweep_report(report: &mut RunReport, audits: &[InstanceAudit], list_all: bool) -> (String, u8) {
    let failures: Vec<&InstanceAudit> = audits.iter().filter(|a| !a.passed()).collect();
    report.set("instances", audits.len());
    report.set("failures", &failures);
    if list_all {
        report.set("audits", audits);
    }
    let mut text = String::new();
    for a in audits {
        if list_all || !a.passed() {
            let verdicts: Vec<String> =
                a.checks.iter().map(|c| format!("{} {}", c.name, if c.passed { "ok" } else { "FAIL" })).collect();
            let _ = writeln!(text, "{}  {}", a.instance, verdicts.join(", "));
            for c in a.failures() {
                let _ = writeln!(text, "    {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
            }
        }
    }
    let _ = writeln!(text, "{} instances, {} failing", audits.len(), failures.len());
    (text, u8::from(!failures.is_empty()))
}

fn sweep_family(range: &str) -> Result<Outcome> {
    let mut report = RunReport::new("sweep");
    let (lo, hi) = parse_range(range)?;
    let config = EngineConfig::from_env()?;
    let inputs = odd_shift_instances(lo, hi);
    let audits = audit_all(&inputs, &config, audit_odd_shift);
    report.set("family", "odd-shift");
    report.set("m0", [lo, hi]);
    let (text, status) = sweep_report(&mut report, &audits, true);
    Ok(Outcome { report, text, status })
}

fn sweep_all(bounds: SweepBounds) -> Result<Outcome> {
    let mut report = RunReport::new("sweep");
    let config = EngineConfig::from_env()?;
    let inputs = sweep_instances(&bounds);
    let audits = audit_all(&inputs, &config, audit_instance);
    report.set("bounds", bounds);
    let (text, status) = sweep_report(&mut report, &audits, false);
    Ok(Outcome { report, text, status })
}

fn nf(curve: &CurveArgs, monomial: &str, engine: EngineArg, explain: bool) -> Result<Outcome> {
    let mut report = RunReport::new("nf");
    let (input, k) = load(curve)?;
    let alpha = Monomial::parse(monomial, input.num_vars())?;
    if alpha.t_exponent() != 0 {
        return Err(Error::Parse { what: "monomial", input: monomial.to_string() });
    }
    let weights = input.weights();
    report.set("input", input_json(&input));
    report.set("monomial", alpha.to_string());
    report.set("weight", alpha.weighted_degree(&weights));

    let mut text = String::new();
    match engine {
        EngineArg::Generic => {
            let phi = assemble(&k, BasisKind::Phi, Direction::Ascending)?;
            let out = reduce_monomial(&alpha, &phi.basis);
            report.set("engine", "generic");
            report.set("normal_form", out.to_string());
            let _ = writeln!(text, "{out}");
        }
        EngineArg::Ladder => {
            let ladder = Ladder::new(&k)?;
            let st = ladder.normal_form(&alpha)?;
            let out = state_monomial(&k, &st);
            report.set("engine", "ladder");
            report.set("normal_form", out.to_string());
            report.set("state", json!({ "h": st.h, "s": st.s, "l": st.l, "d": st.d }));
            report.set("trace", &st.trace);
            let _ = writeln!(text, "{out}");
            if explain {
                let _ = writeln!(text, "state: h={} s={} l={} d={}", st.h, st.s, st.l, st.d);
                let trace = if st.trace.is_empty() { "(none)".to_string() } else { st.trace.join(", ") };
                let _ = writeln!(text, "trace: {trace}");
            }
        }
    }
    Ok(Outcome { report, text, status: 0 })
}
