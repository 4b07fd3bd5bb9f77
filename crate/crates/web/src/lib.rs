//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain strings and numbers and returns a JSON string;
//! failures come back as `{"error": {"name", "message"}}` so the page never
//! has to catch exceptions. `mn` is an `i32` so JavaScript can pass a plain
//! number. The `*_json` functions hold the logic and are tested natively.

use curve_gb::binalg::{is_groebner, minimality, reduce_monomial};
use curve_gb::ladder::{state_monomial, Ladder};
use curve_gb::semigroup::validate_input;
use curve_gb::{
    assemble, compute_parameters, BasisKind, CurveInput, CurveParameters, Direction, Error, Minimality, Monomial,
    Result,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_arith(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse { what: "generator list", input: text.into() }))
        .collect()
}

fn load(arith: &str, mn: i64) -> Result<(CurveInput, CurveParameters)> {
    let input = validate_input(&parse_arith(arith)?, mn)?;
    let params = compute_parameters(&input)?;
    Ok((input, params))
}

fn parse_kind(kind: &str) -> Result<BasisKind> {
    BasisKind::ALL
        .into_iter()
        .find(|k| k.name() == kind)
        .ok_or_else(|| Error::Parse { what: "basis kind", input: kind.into() })
}

fn parse_direction(order: &str) -> Result<Direction> {
    match order {
        "asc" => Ok(Direction::Ascending),
        "desc" => Ok(Direction::Descending),
        _ => Err(Error::Parse { what: "order", input: order.into() }),
    }
}

fn render(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": { "name": e.name(), "message": e.to_string() } }).to_string(),
    }
}

/// Parameters, the `V - W` grid with the semigroup element of each cell,
/// and the labeled `Phi`.
pub fn explore_json(arith: &str, mn: i64) -> Result<Value> {
    let (input, k) = load(arith, mn)?;
    let mut grid = Vec::new();
    for b in 0..k.upsilon {
        let mut row = Vec::new();
        for s in 0..k.u {
            let value = input.degree_split(s)?.g + b * input.mn();
            row.push(json!({ "s": s, "b": b, "value": value, "in_window": k.in_v_minus_w(s as i64, b as i64) }));
        }
        grid.push(row);
    }
    let phi = assemble(&k, BasisKind::Phi, Direction::Ascending)?;
    let elements: Vec<Value> =
        phi.labeled().map(|(l, f)| json!({ "label": l.to_string(), "binomial": f.to_string() })).collect();
    Ok(json!({
        "instance": input.to_string(),
        "weights": input.weights(),
        "parameters": k,
        "grid": grid,
        "phi": elements,
    }))
}

/// Buchberger and minimality verdicts for one generator set.
pub fn check_json(arith: &str, mn: i64, kind: &str, order: &str) -> Result<Value> {
    let (_, k) = load(arith, mn)?;
    let named = assemble(&k, parse_kind(kind)?, parse_direction(order)?)?;
    let elements: Vec<Value> =
        named.labeled().map(|(l, f)| json!({ "label": l.to_string(), "binomial": f.to_string() })).collect();
    let mut out = json!({ "kind": kind, "order": order, "elements": elements });
    match is_groebner(&named.basis).witness() {
        Some(w) => {
            out["groebner"] = json!("NOT_GB");
            out["witness"] = json!({
                "pair": [named.label(w.first).to_string(), named.label(w.second).to_string()],
                "s_polynomial": w.s_polynomial.to_string(),
                "remainder": w.remainder.to_string(),
            });
        }
        None => {
            out["groebner"] = json!("GB");
            out["minimal"] = match minimality(&named.basis) {
                Minimality::Minimal => json!("MINIMAL"),
                Minimality::Violation { divisor, multiple } => json!({
                    "divisor": named.label(divisor).to_string(),
                    "multiple": named.label(multiple).to_string(),
                }),
            };
        }
    }
    Ok(out)
}

/// Normal form modulo `Phi` by division, and by the ladder with its trace
/// when the monomial involves one of `x1..xp`.
pub fn normal_form_json(arith: &str, mn: i64, monomial: &str) -> Result<Value> {
    let (input, k) = load(arith, mn)?;
    let alpha = Monomial::parse(monomial, input.num_vars())?;
    if alpha.t_exponent() != 0 {
        return Err(Error::Parse { what: "monomial", input: monomial.into() });
    }
    let ladder = Ladder::new(&k)?;
    let generic = reduce_monomial(&alpha, &ladder.phi().basis);
    let ladder_result = match ladder.normal_form(&alpha) {
        Ok(st) => json!({
            "normal_form": state_monomial(&k, &st).to_string(),
            "state": { "h": st.h, "s": st.s, "l": st.l, "d": st.d },
            "trace": st.trace,
        }),
        Err(Error::UnsupportedInput(msg)) => json!({ "unsupported": msg }),
        Err(e) => return Err(e),
    };
    Ok(json!({
        "monomial": alpha.to_string(),
        "weight": alpha.weighted_degree(&input.weights()),
        "generic": generic.to_string(),
        "ladder": ladder_result,
    }))
}

#[wasm_bindgen]
pub fn explore(arith: &str, mn: i32) -> String {
    render(explore_json(arith, mn.into()))
}

#[wasm_bindgen]
pub fn check(arith: &str, mn: i32, kind: &str, order: &str) -> String {
    render(check_json(arith, mn.into(), kind, order))
}

#[wasm_bindgen]
pub fn normal_form(arith: &str, mn: i32, monomial: &str) -> String {
    render(normal_form_json(arith, mn.into(), monomial))
}
