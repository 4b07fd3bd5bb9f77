//! The explicit binomial families `xi`, `phi`, `psi`, `theta` and the three
//! generator sets assembled from them.
//!
//! With `p = n - 1` and the constants of [`CurveParameters`]:
//!
//! ```text
//! xi_{i,j} = x_i x_j - x_0 x_{i+j}          (i + j <= p)
//!          = x_i x_j - x_{i+j-p} x_p        (i + j >  p)      1 <= i <= j <= p-1
//! phi_i    = x_{r+i} x_p^q - x_0^{lambda-1} x_i x_n^w         0 <= i <= p-r
//! psi_j    = x_{r'+j} x_p^{q'} x_n^{upsilon-w} - x_0^{nu-1} x_j
//! theta    = x_n^upsilon - x_0^mu x_{r_z} x_p^{q_z}
//! ```
//!
//! Repeated variables merge into a single exponent, so `phi_0` carries
//! `x_0^lambda` and, at `z = 0`, `theta = x_n^upsilon - x_0^mu`.

use std::fmt;

use serde::Serialize;

use crate::binalg::{BasisSet, Binomial};
use crate::error::{Error, Result};
use crate::order::{Direction, Monomial, OrderSpec};
use crate::semigroup::{CurveParameters, Interval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyLabel {
    Xi(usize, usize),
    Phi(usize),
    Psi(usize),
    Theta,
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyLabel::Xi(i, j) => write!(f, "xi_{{{i},{j}}}"),
            FamilyLabel::Phi(i) => write!(f, "phi_{i}"),
            FamilyLabel::Psi(j) => write!(f, "psi_{j}"),
            FamilyLabel::Theta => write!(f, "theta"),
        }
    }
}

impl Serialize for FamilyLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    /// Minimal generating set: `phi_i` over `I`, `psi_j` over `J`.
    Omega,
    /// Full generating set: `phi_i` over `[0, p-r]`, `psi_j` over `[0, p-r']`.
    PatilSingh,
    /// Minimal Gröbner basis: `phi_i` over `[0, p-r]`, `psi_j` over `J`.
    Phi,
}

impl BasisKind {
    pub const ALL: [BasisKind; 3] = [BasisKind::Omega, BasisKind::PatilSingh, BasisKind::Phi];

    pub fn name(&self) -> &'static str {
        match self {
            BasisKind::Omega => "omega",
            BasisKind::PatilSingh => "patil-singh",
            BasisKind::Phi => "phi",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn exps_to_monomial(exps: &[i64]) -> Result<Monomial> {
    let converted = exps
        .iter()
        .map(|&e| u32::try_from(e).map_err(|_| Error::InvariantViolation(format!("exponent {e}"))))
        .collect::<Result<Vec<u32>>>()?;
    Ok(Monomial::from_exponents(&converted))
}

/// Builds one family member, oriented under ascending weighted grevlex.
pub fn build_family(params: &CurveParameters, label: FamilyLabel) -> Result<Binomial> {
    let input = &params.input;
    let p = input.p();
    let n = input.n();
    let out_of_range = || Error::IndexOutOfRange(label.to_string());
    let mut first = vec![0i64; n + 1];
    let mut second = vec![0i64; n + 1];
    match label {
        FamilyLabel::Xi(i, j) => {
            if !(1 <= i && i <= j && j < p) {
                return Err(out_of_range());
            }
            first[i] += 1;
            first[j] += 1;
            if i + j <= p {
                second[0] += 1;
                second[i + j] += 1;
            } else {
                second[i + j - p] += 1;
                second[p] += 1;
            }
        }
        FamilyLabel::Phi(i) => {
            if i + params.r > p {
                return Err(out_of_range());
            }
            first[params.r + i] += 1;
            first[p] += params.q as i64;
            second[0] += params.lambda as i64 - 1;
            second[i] += 1;
            second[n] += params.w as i64;
        }
        FamilyLabel::Psi(j) => {
            if j + params.r_prime > p {
                return Err(out_of_range());
            }
            first[params.r_prime + j] += 1;
            first[p] += params.q_prime as i64;
            first[n] += (params.upsilon - params.w) as i64;
            second[0] += params.nu as i64 - 1;
            second[j] += 1;
        }
        FamilyLabel::Theta => {
            first[n] += params.upsilon as i64;
            second[0] += params.mu as i64;
            second[params.r_z] += 1;
            second[p] += params.q_z;
        }
    }
    let spec = OrderSpec::ascending(input.weights());
    let (a, b) = (exps_to_monomial(&first)?, exps_to_monomial(&second)?);
    let f = Binomial::new(a, b, &spec)
        .ok_or_else(|| Error::InvariantViolation(format!("{label} has equal terms")))?;
    if !f.is_homogeneous(spec.weights()) {
        return Err(Error::InvariantViolation(format!("{label} = {f} is not homogeneous")));
    }
    Ok(f)
}

/// One of the named generator sets, with a family label per element.
#[derive(Clone, Debug)]
pub struct NamedBasis {
    pub kind: BasisKind,
    pub basis: BasisSet,
    pub labels: Vec<FamilyLabel>,
}

impl NamedBasis {
    pub fn get(&self, label: FamilyLabel) -> Option<&Binomial> {
        self.labels.iter().position(|&l| l == label).map(|i| &self.basis.elements()[i])
    }

    pub fn label(&self, index: usize) -> FamilyLabel {
        self.labels[index]
    }

    /// `(label, binomial)` pairs in element order.
    pub fn labeled(&self) -> impl Iterator<Item = (FamilyLabel, &Binomial)> {
        self.labels.iter().copied().zip(self.basis.elements())
    }
}

fn to_indices(range: Interval) -> impl Iterator<Item = usize> {
    range.iter().map(|v| v as usize)
}

/// Labels of `kind`, in assembly order: `theta`, the `xi`, the `phi`, the `psi`.
pub fn family_labels(params: &CurveParameters, kind: BasisKind) -> Vec<FamilyLabel> {
    let p = params.input.p() as i64;
    let all_phi = Interval::new(0, p - params.r as i64);
    let all_psi = Interval::new(0, p - params.r_prime as i64);
    let (phi_range, psi_range) = match kind {
        BasisKind::Omega => (params.i_range, params.j_range),
        BasisKind::PatilSingh => (all_phi, all_psi),
        BasisKind::Phi => (all_phi, params.j_range),
    };
    let p = p as usize;
    let mut labels = vec![FamilyLabel::Theta];
    labels.extend((1..p).flat_map(|i| (i..p).map(move |j| FamilyLabel::Xi(i, j))));
    labels.extend(to_indices(phi_range).map(FamilyLabel::Phi));
    labels.extend(to_indices(psi_range).map(FamilyLabel::Psi));
    labels
}

/// Assembles the named set, oriented under the given direction.
pub fn assemble(params: &CurveParameters, kind: BasisKind, direction: Direction) -> Result<NamedBasis> {
    let spec = OrderSpec::new(params.input.weights(), direction);
    let mut labels = Vec::new();
    let mut elements: Vec<Binomial> = Vec::new();
    for label in family_labels(params, kind) {
        let f = build_family(params, label)?.reoriented(&spec);
        if elements.contains(&f) {
            return Err(Error::InvariantViolation(format!("{label} duplicates another generator")));
        }
        labels.push(label);
        elements.push(f);
    }
    let basis = BasisSet::new(elements, spec);
    debug_assert_eq!(basis.len(), labels.len());
    Ok(NamedBasis { kind, basis, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{compute_parameters, CurveInput};

    fn params(arith: &[u64], mn: u64) -> CurveParameters {
        compute_parameters(&CurveInput::new(arith.to_vec(), mn).unwrap()).unwrap()
    }

    fn text(f: &Binomial) -> String {
        f.to_string()
    }

    #[test]
    fn families_for_7_8_6() {
        let k = params(&[7, 8], 6);
        assert_eq!(text(&build_family(&k, FamilyLabel::Psi(0)).unwrap()), "x1*x2 - x0^2");
        assert_eq!(text(&build_family(&k, FamilyLabel::Theta).unwrap()), "x2^4 - x1^3");
        assert_eq!(text(&build_family(&k, FamilyLabel::Phi(0)).unwrap()), "x1^4 - x0^2*x2^3");
        assert!(matches!(build_family(&k, FamilyLabel::Phi(1)), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(build_family(&k, FamilyLabel::Xi(1, 1)), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn families_for_final_example() {
        let k = params(&[20, 21, 22, 23, 24], 29);
        for i in 0..=3 {
            let expected = if i == 0 {
                format!("x{}*x4^2 - x0^2*x5", i + 1)
            } else if i == 3 {
                "x4^3 - x0*x3*x5".to_string()
            } else {
                format!("x{}*x4^2 - x0*x{i}*x5", i + 1)
            };
            assert_eq!(text(&build_family(&k, FamilyLabel::Phi(i)).unwrap()), expected);
        }
        // psi_j = x_{j+2} x5^2 - x0^3 x_j (only homogeneous with q' = 0)
        assert_eq!(text(&build_family(&k, FamilyLabel::Psi(1)).unwrap()), "x3*x5^2 - x0^3*x1");
        assert_eq!(text(&build_family(&k, FamilyLabel::Theta).unwrap()), "x5^3 - x0^2*x3*x4");
        assert_eq!(text(&build_family(&k, FamilyLabel::Xi(1, 3)).unwrap()), "x1*x3 - x0*x4");
        assert_eq!(text(&build_family(&k, FamilyLabel::Xi(2, 3)).unwrap()), "x2*x3 - x1*x4");
        assert!(build_family(&k, FamilyLabel::Xi(0, 1)).is_err());
        assert!(build_family(&k, FamilyLabel::Psi(3)).is_err());
    }

    #[test]
    fn assembled_sets() {
        let k = params(&[7, 8], 6);
        let omega = assemble(&k, BasisKind::Omega, Direction::Ascending).unwrap();
        assert_eq!(omega.labels, [FamilyLabel::Theta, FamilyLabel::Psi(0)]);
        let phi = assemble(&k, BasisKind::Phi, Direction::Ascending).unwrap();
        assert_eq!(phi.basis.to_lines(), ["x1*x2 - x0^2", "x2^4 - x1^3", "x1^4 - x0^2*x2^3"]);

        let k = params(&[20, 21, 22, 23, 24], 29);
        let ps = assemble(&k, BasisKind::PatilSingh, Direction::Descending).unwrap();
        assert_eq!(ps.basis.len(), 14);
        let count = |pred: fn(&FamilyLabel) -> bool| ps.labels.iter().filter(|l| pred(l)).count();
        assert_eq!(count(|l| matches!(l, FamilyLabel::Phi(_))), 4);
        assert_eq!(count(|l| matches!(l, FamilyLabel::Psi(_))), 3);
        assert_eq!(count(|l| matches!(l, FamilyLabel::Xi(..))), 6);
        assert!(ps.get(FamilyLabel::Theta).is_some());
    }

    #[test]
    fn omega_is_contained_in_patil_singh() {
        for (arith, mn) in [(&[7u64, 8][..], 6u64), (&[20, 21, 22, 23, 24], 29), (&[5, 6, 7], 9)] {
            let k = params(arith, mn);
            let omega = assemble(&k, BasisKind::Omega, Direction::Ascending).unwrap();
            let ps = assemble(&k, BasisKind::PatilSingh, Direction::Ascending).unwrap();
            assert!(omega.basis.elements().iter().all(|f| ps.basis.contains(f)));
        }
    }
}
