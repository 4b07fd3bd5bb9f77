//! Specialized reduction modulo `Phi` that never searches for a divisor.
//!
//! Each routine follows a fixed schedule of rewrite rules (`theta`, blocks of
//! `phi_{p-r}` or `psi_{p-r'}`, `xi` recombination) and lands on a monomial
//! `x0^h x_s x_p^l x_n^d`. The final dispatcher reaches a shape with
//! `(l*p + s, d)` in `V - W`, which is the normal form modulo `Phi`.
//!
//! Every rule application is a genuine reduction step: the rule's lead (under
//! ascending weighted grevlex) must divide the current monomial, and the rule
//! must be an element of `Phi`.

use serde::Serialize;

use crate::binalg::{reduce_monomial, BasisSet, Binomial};
use crate::closedform::{assemble, BasisKind, FamilyLabel, NamedBasis};
use crate::error::{Error, Result};
use crate::order::{Direction, Monomial};
use crate::semigroup::CurveParameters;

/// `x0^h x_s x_p^l x_n^d`, with `s = 0` meaning no mid variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderState {
    pub h: u64,
    pub s: usize,
    pub l: u64,
    pub d: u64,
    pub trace: Vec<String>,
}

impl LadderState {
    /// Grid coordinate `l*p + s`.
    pub fn grid(&self, p: usize) -> u64 {
        self.l * p as u64 + self.s as u64
    }
}

/// Reducer bound to one curve's `Phi`.
pub struct Ladder<'a> {
    params: &'a CurveParameters,
    phi: NamedBasis,
    cap: u64,
}

/// Working monomial: exponents of `x0..xn` plus the rule trace.
#[derive(Clone, Debug)]
struct Work {
    exps: Vec<u64>,
    trace: Vec<String>,
}

impl<'a> Ladder<'a> {
    pub fn new(params: &'a CurveParameters) -> Result<Self> {
        let phi = assemble(params, BasisKind::Phi, Direction::Ascending)?;
        let cap = 10 * (params.u + params.upsilon + params.q + 1);
        Ok(Ladder { params, phi, cap })
    }

    pub fn phi(&self) -> &NamedBasis {
        &self.phi
    }

    fn p(&self) -> usize {
        self.params.input.p()
    }

    fn n(&self) -> usize {
        self.params.input.n()
    }

    fn weight(&self, exps: &[u64]) -> u64 {
        exps.iter().enumerate().map(|(i, &e)| e * self.params.input.m(i)).sum()
    }

    fn rule(&self, label: FamilyLabel) -> Result<&Binomial> {
        self.phi
            .get(label)
            .ok_or_else(|| Error::InvariantViolation(format!("rule {label} is not in Phi")))
    }

    /// Rewrites `lead -> tail` of `label` exactly `k` times.
    fn apply(&self, work: &mut Work, label: FamilyLabel, k: u64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let f = self.rule(label)?;
        let (lead, tail) = (f.lead().exponents(), f.tail().exponents());
        let before = self.weight(&work.exps);
        let h_before = work.exps[0];
        for i in 0..work.exps.len() {
            let take = lead[i] as u64 * k;
            if work.exps[i] < take {
                return Err(Error::InvariantViolation(format!(
                    "lead of {label} does not divide the current monomial {}",
                    to_monomial(&work.exps)
                )));
            }
            work.exps[i] = work.exps[i] - take + tail[i] as u64 * k;
        }
        if self.weight(&work.exps) != before || work.exps[0] < h_before {
            return Err(Error::InvariantViolation(format!("{label} broke weight or x0 monotonicity")));
        }
        work.trace.extend(std::iter::repeat_n(label.to_string(), k as usize));
        Ok(())
    }

    /// Greedy pairwise `xi` merging of mid variables (indices `1..p-1`),
    /// largest indices first, until at most one mid variable remains.
    fn recombine(&self, work: &mut Work) -> Result<()> {
        let p = self.p();
        loop {
            let mut mids = (1..p).rev().flat_map(|i| std::iter::repeat_n(i, work.exps[i] as usize));
            let (Some(j), Some(i)) = (mids.next(), mids.next()) else {
                return Ok(());
            };
            self.apply(work, FamilyLabel::Xi(i, j), 1)?;
        }
    }

    fn state(&self, work: &Work) -> Result<LadderState> {
        let p = self.p();
        let mids: Vec<usize> = (1..p).filter(|&i| work.exps[i] > 0).collect();
        let (s, l) = match mids[..] {
            [s] if work.exps[s] == 1 => (s, work.exps[p]),
            [] if work.exps[p] > 0 => (p, work.exps[p] - 1),
            [] => (0, 0),
            _ => return Err(Error::InvariantViolation("more than one mid variable left".into())),
        };
        Ok(LadderState { h: work.exps[0], s, l, d: work.exps[self.n()], trace: work.trace.clone() })
    }

    fn work(&self, state: &LadderState) -> Work {
        let mut exps = vec![0; self.n() + 1];
        exps[0] = state.h;
        exps[state.s] += 1;
        exps[self.p()] += state.l;
        exps[self.n()] = state.d;
        if state.s == 0 {
            exps[0] -= 1;
        }
        Work { exps, trace: state.trace.clone() }
    }

    fn start(&self, alpha: &Monomial) -> Result<Work> {
        let (p, n) = (self.p(), self.n());
        if alpha.nvars() != n + 1 || alpha.t_exponent() != 0 {
            return Err(Error::DimensionMismatch { expected: n + 1, found: alpha.nvars() });
        }
        let exps: Vec<u64> = alpha.exponents().iter().map(|&e| e as u64).collect();
        if exps[1..=p].iter().all(|&e| e == 0) {
            return Err(Error::UnsupportedInput(format!(
                "{alpha} has no variable among x1..x{p}"
            )));
        }
        Ok(Work { exps, trace: Vec::new() })
    }

    fn too_long(&self, what: &str) -> Error {
        Error::InvariantViolation(format!("{what} exceeded {} iterations", self.cap))
    }

    /// Reduces `alpha` to `x0^h x_s x_p^l x_n^d` with `l <= q`,
    /// `d < upsilon`, `s` in `[1, p]`, and `h >= e_0`.
    pub fn reduce_lemma1(&self, alpha: &Monomial) -> Result<LadderState> {
        let k = self.params;
        let p = self.p();
        let n = self.n();
        let mut work = self.start(alpha)?;
        let e0 = work.exps[0];
        let weight = self.weight(&work.exps);

        let thetas = work.exps[n] / k.upsilon;
        self.apply(&mut work, FamilyLabel::Theta, thetas)?;
        self.recombine(&mut work)?;
        let mut st = self.state(&work)?;
        let mut iterations = 0;
        while st.l > k.q {
            iterations += 1;
            if iterations > self.cap {
                return Err(self.too_long("reduce_lemma1 loop"));
            }
            let l_before = st.l;
            // Step 1: l = a(q+1) + b, rewrite x_p^{q+1} a times
            let a = st.l / (k.q + 1);
            self.apply(&mut work, FamilyLabel::Phi(p - k.r), a)?;
            // Step 2: a*w + d = c*upsilon + d'
            let c = (a * k.w + st.d) / k.upsilon;
            self.apply(&mut work, FamilyLabel::Theta, c)?;
            // Step 3: pair the new x_{r_z} with x_{p-r}, then merge what is left
            let (i, j) = (k.r_z.min(p - k.r), k.r_z.max(p - k.r));
            if i >= 1 && j < p {
                self.apply(&mut work, FamilyLabel::Xi(i, j), c)?;
            }
            self.recombine(&mut work)?;
            st = self.state(&work)?;
            if st.l > l_before {
                return Err(Error::InvariantViolation("reduce_lemma1 increased l".into()));
            }
        }
        let ok = st.l <= k.q && st.d < k.upsilon && (1..=p).contains(&st.s) && st.h >= e0;
        if !ok || self.weight(&work.exps) != weight {
            return Err(Error::InvariantViolation(format!("reduce_lemma1 contract broken at {st:?}")));
        }
        Ok(st)
    }

    fn require_w(&self, what: &str) -> Result<()> {
        if self.params.w_empty {
            return Err(Error::PreconditionViolation(format!("{what} needs W to be nonempty")));
        }
        Ok(())
    }

    /// Lowers `l` below `q'` or `d` below `upsilon - w` with blocks of
    /// `psi_{p-r'}`. Needs `W` nonempty, `l <= q`, and `d < upsilon`.
    pub fn reduce_lemma2(&self, sigma: &LadderState) -> Result<LadderState> {
        let k = self.params;
        self.require_w("reduce_lemma2")?;
        if sigma.l > k.q || sigma.d >= k.upsilon || !(1..=self.p()).contains(&sigma.s) {
            return Err(Error::PreconditionViolation(format!("reduce_lemma2 input {sigma:?}")));
        }
        let vw = k.upsilon - k.w;
        let mut work = self.work(sigma);
        let mut st = sigma.clone();
        let mut iterations = 0;
        while st.l > k.q_prime && st.d >= vw {
            iterations += 1;
            if iterations > self.cap {
                return Err(self.too_long("reduce_lemma2 loop"));
            }
            let (l_before, d_before) = (st.l, st.d);
            let steps = (st.d / vw).min(st.l / (k.q_prime + 1));
            self.apply(&mut work, FamilyLabel::Psi(self.p() - k.r_prime), steps)?;
            self.recombine(&mut work)?;
            st = self.state(&work)?;
            if st.l > l_before || st.d >= d_before {
                return Err(Error::InvariantViolation("reduce_lemma2 made no progress".into()));
            }
        }
        if !(st.l <= k.q_prime || st.d < vw) || !(1..=self.p()).contains(&st.s) {
            return Err(Error::InvariantViolation(format!("reduce_lemma2 contract broken at {st:?}")));
        }
        Ok(st)
    }

    /// With `q' = 0`, walks `x0^h x_s x_n^d` into `V - W` by applying
    /// `psi_{s - i r'}` for `i = 1..k`.
    pub fn reduce_xs(&self, sigma: &LadderState) -> Result<LadderState> {
        let k = self.params;
        self.require_w("reduce_xs")?;
        let p = self.p();
        if k.q_prime != 0 || sigma.l != 0 || sigma.d >= k.upsilon || !(1..=p).contains(&sigma.s) {
            return Err(Error::PreconditionViolation(format!("reduce_xs input {sigma:?}")));
        }
        if k.in_v_minus_w(sigma.s as i64, sigma.d as i64) {
            return Ok(sigma.clone());
        }
        let (s1, d1, rp, vw) = (sigma.s as u64, sigma.d, k.r_prime as u64, k.upsilon - k.w);
        // a = min{t >= 1 : s1 - t r' < r'},  b = min{t >= 1 : d1 - t(upsilon-w) < upsilon-w}
        let a = (s1 / rp).max(1);
        let b = (d1 / vw).max(1);
        let steps = a.min(b);
        let mut work = self.work(sigma);
        for i in 1..=steps {
            self.apply(&mut work, FamilyLabel::Psi((s1 - i * rp) as usize), 1)?;
        }
        let st = self.state(&work)?;
        if !k.in_v_minus_w(st.s as i64, st.d as i64) {
            return Err(Error::InvariantViolation(format!("reduce_xs left V - W at {st:?}")));
        }
        Ok(st)
    }

    /// Full ladder reduction of `alpha` to a form with `(l*p + s, d)` in
    /// `V - W`, following the case split on `W` and on the position of
    /// `(l*p + s, d)` relative to `u - z`, `u`, and `upsilon - w`.
    pub fn normal_form(&self, alpha: &Monomial) -> Result<LadderState> {
        let k = self.params;
        let p = self.p();
        let weight = self.weight(&self.start(alpha)?.exps);
        let mut st = self.reduce_lemma1(alpha)?;
        let (u, z, v, w) = (k.u, k.z, k.upsilon, k.w);

        if k.w_empty {
            if st.grid(p) >= u {
                st = self.shift_by_phi(&st)?;
                if st.d >= v {
                    let mut work = self.work(&st);
                    self.apply(&mut work, FamilyLabel::Theta, 1)?;
                    st = self.state(&work)?;
                }
            }
        } else {
            st = self.reduce_lemma2(&st)?;
            let t = st.grid(p);
            if t < u - z || (st.d < v - w && t < u) {
                // cases (1) and (2a): already in V - W
            } else if st.d < v - w {
                // (2b): t >= u forces l = q and s >= r
                st = self.shift_by_phi(&st)?;
                if !k.in_v_minus_w(st.s as i64, st.d as i64) {
                    st = self.reduce_xs(&st)?;
                }
            } else {
                // (2c): l = q' and s >= r'
                if st.l != k.q_prime || st.s < k.r_prime {
                    return Err(Error::InvariantViolation(format!("case (2c) reached with {st:?}")));
                }
                if k.q_z == 0 && k.epsilon == 0 {
                    if st.s >= k.r {
                        st = self.shift_by_phi(&st)?;
                        let mut work = self.work(&st);
                        self.apply(&mut work, FamilyLabel::Theta, 1)?;
                        self.recombine(&mut work)?;
                        st = self.state(&work)?;
                    } else {
                        st = self.shift_by_psi(&st)?;
                    }
                } else if k.q_prime == 0 {
                    st = self.reduce_xs(&st)?;
                } else {
                    st = self.shift_by_psi(&st)?;
                }
            }
        }
        let work = self.work(&st);
        if !k.in_v_minus_w(st.grid(p) as i64, st.d as i64) || self.weight(&work.exps) != weight {
            return Err(Error::InvariantViolation(format!("ladder ended outside V - W at {st:?}")));
        }
        Ok(st)
    }

    /// `x_s x_p^q -> x0^{lambda-1} x_{s-r} x_n^w` via `phi_{s-r}`.
    fn shift_by_phi(&self, st: &LadderState) -> Result<LadderState> {
        let k = self.params;
        if st.l != k.q || st.s < k.r {
            return Err(Error::InvariantViolation(format!("phi shift needs l = q, s >= r: {st:?}")));
        }
        let mut work = self.work(st);
        self.apply(&mut work, FamilyLabel::Phi(st.s - k.r), 1)?;
        self.state(&work)
    }

    /// `x_s x_p^{q'} x_n^{upsilon-w} -> x0^{nu-1} x_{s-r'}` via `psi_{s-r'}`.
    fn shift_by_psi(&self, st: &LadderState) -> Result<LadderState> {
        let mut work = self.work(st);
        self.apply(&mut work, FamilyLabel::Psi(st.s - self.params.r_prime), 1)?;
        self.state(&work)
    }

    /// Whether `alpha - beta` reduces to zero modulo `Phi` (generic division).
    pub fn check_second_main(&self, alpha: &Monomial, beta: &Monomial) -> Result<bool> {
        self.start(alpha)?;
        self.start(beta)?;
        let weights = self.params.input.weights();
        let (wa, wb) = (alpha.weighted_degree(&weights), beta.weighted_degree(&weights));
        if wa != wb {
            return Err(Error::UnequalWeights(wa, wb));
        }
        let basis: &BasisSet = &self.phi.basis;
        Ok(reduce_monomial(alpha, basis) == reduce_monomial(beta, basis))
    }
}

/// The monomial a ladder state stands for.
pub fn state_monomial(params: &CurveParameters, st: &LadderState) -> Monomial {
    let (p, n) = (params.input.p(), params.input.n());
    let mut exps = vec![0u32; n + 1];
    exps[0] = st.h as u32;
    exps[st.s] += 1;
    if st.s == 0 {
        exps[0] -= 1;
    }
    exps[p] += st.l as u32;
    exps[n] = st.d as u32;
    Monomial::from_exponents(&exps)
}

fn to_monomial(exps: &[u64]) -> Monomial {
    Monomial::from_exponents(&exps.iter().map(|&e| e as u32).collect::<Vec<_>>())
}

pub fn reduce_lemma1(params: &CurveParameters, alpha: &Monomial) -> Result<LadderState> {
    Ladder::new(params)?.reduce_lemma1(alpha)
}

pub fn reduce_lemma2(params: &CurveParameters, sigma: &LadderState) -> Result<LadderState> {
    Ladder::new(params)?.reduce_lemma2(sigma)
}

pub fn reduce_xs(params: &CurveParameters, sigma: &LadderState) -> Result<LadderState> {
    Ladder::new(params)?.reduce_xs(sigma)
}

pub fn normal_form_ladder(params: &CurveParameters, alpha: &Monomial) -> Result<LadderState> {
    Ladder::new(params)?.normal_form(alpha)
}

pub fn check_second_main(params: &CurveParameters, alpha: &Monomial, beta: &Monomial) -> Result<bool> {
    Ladder::new(params)?.check_second_main(alpha, beta)
}
