//! Defining ideal of the monomial curve `x_i = t^{m_i}`, computed from
//! scratch by eliminating `t` from `<x_i - t^{m_i}>`.
//!
//! This is the oracle the closed-form bases are checked against. It shares
//! the Buchberger engine with everything else but none of the closed-form
//! construction.

use crate::binalg::{buchberger_close, interreduce, normal_form, BasisSet, Binomial, EngineConfig};
use crate::error::Result;
use crate::order::{Monomial, OrderSpec};
use crate::semigroup::CurveInput;

/// The generators `x_i - t^{m_i}` under the `t`-elimination order.
pub fn elimination_generators(input: &CurveInput) -> BasisSet {
    let weights = input.weights();
    let nvars = weights.len();
    let spec = OrderSpec::elimination(weights.clone());
    let gens = weights.iter().enumerate().map(|(i, &m)| {
        let t = u32::try_from(m).expect("generator too large for an exponent");
        Binomial::new(Monomial::var(nvars, i, 1), Monomial::t_power(nvars, t), &spec)
            .expect("x_i and t^m_i differ")
    });
    let gens: Vec<Binomial> = gens.collect();
    BasisSet::new(gens, spec)
}

/// Reduced Gröbner basis of the defining ideal under ascending weighted
/// grevlex.
pub fn defining_ideal_gb(input: &CurveInput, config: &EngineConfig) -> Result<BasisSet> {
    let closed = buchberger_close(&elimination_generators(input), config)?;
    let spec = closed.spec().without_elimination();
    let kept = closed.elements().iter().filter(|b| b.lead().t_exponent() == 0 && b.tail().t_exponent() == 0);
    // a Gröbner basis for the block order restricts to one for the x-order
    Ok(interreduce(&BasisSet::new(kept.cloned(), spec)))
}

/// Ideal membership of a binomial, given a Gröbner basis of the ideal.
pub fn ideal_contains(basis: &BasisSet, f: &Binomial) -> bool {
    normal_form(&f.reoriented(basis.spec()), basis).is_none()
}

/// Ideal membership for `a - b` given as raw monomials.
pub fn ideal_contains_terms(basis: &BasisSet, a: &Monomial, b: &Monomial) -> bool {
    match Binomial::new(a.clone(), b.clone(), basis.spec()) {
        Some(f) => ideal_contains(basis, &f),
        None => true,
    }
}

/// Whether `a - b` maps to zero under `x_i -> t^{m_i}`: both sides map to
/// `t^{weight}`, so this is weight equality.
pub fn vanishes_on_curve(input: &CurveInput, f: &Binomial) -> bool {
    f.is_homogeneous(&input.weights())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::monomials_of_weight;
    use crate::binalg::{is_groebner, reduce_monomial};
    use crate::error::Error;

    fn curve(arith: &[u64], mn: u64) -> CurveInput {
        CurveInput::new(arith.to_vec(), mn).unwrap()
    }

    fn oracle(arith: &[u64], mn: u64) -> BasisSet {
        defining_ideal_gb(&curve(arith, mn), &EngineConfig::default()).unwrap()
    }

    #[test]
    fn oracle_for_7_8_6() {
        let gb = oracle(&[7, 8], 6);
        assert_eq!(gb.to_lines(), ["x1*x2 - x0^2", "x2^4 - x1^3", "x1^4 - x0^2*x2^3"]);
        assert!(is_groebner(&gb).is_groebner());
    }

    #[test]
    fn oracle_for_3_4_5() {
        let c = curve(&[3, 4], 5);
        let gb = oracle(&[3, 4], 5);
        assert_eq!(gb.len(), 3);
        assert_eq!(gb.to_lines(), ["x1^2 - x0*x2", "x1*x2 - x0^3", "x2^2 - x0^2*x1"]);
        assert!(gb.elements().iter().all(|b| vanishes_on_curve(&c, b)));
    }

    #[test]
    fn membership_examples() {
        let gb = oracle(&[7, 8], 6);
        let spec = gb.spec().clone();
        let bin = |s: &str| Binomial::parse(s, &spec).unwrap();
        assert!(ideal_contains(&gb, &bin("x1*x2 - x0^2")));
        assert!(ideal_contains(&gb, &bin("x2^4 - x1^3")));
        let m = |s: &str| Monomial::parse(s, 3).unwrap();
        assert!(!ideal_contains_terms(&gb, &m("x1"), &m("x0")));
        assert!(matches!(Binomial::parse("x1 - x0", &spec), Err(Error::UnequalWeights(8, 7))));
        assert!(ideal_contains(&gb, &bin("x1^2*x2^2 - x0^2*x1*x2")));
    }

    #[test]
    fn oracle_is_complete_at_small_weights() {
        for (arith, mn) in [(&[7u64, 8][..], 6u64), (&[3, 4], 5), (&[5, 7, 9], 8), (&[5, 6, 7, 8], 9)] {
            let c = curve(arith, mn);
            let gb = oracle(arith, mn);
            let bound = 2 * gb_apery_max(&c) + c.m0();
            for weight in 0..=bound {
                let forms: Vec<_> = monomials_of_weight(&c.weights(), weight)
                    .iter()
                    .map(|m| reduce_monomial(m, &gb))
                    .collect();
                assert!(forms.windows(2).all(|w| w[0] == w[1]), "{c} weight {weight}");
            }
        }
    }

    fn gb_apery_max(c: &CurveInput) -> u64 {
        crate::semigroup::apery_table(&c.weights()).unwrap().max_apery()
    }
}
