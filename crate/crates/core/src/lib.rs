//! Gröbner bases for defining ideals of monomial curves over almost
//! arithmetic sequences.
//!
//! The crate builds the closed-form generator sets of a curve
//! ([`closedform`]), verifies them with a binomial Buchberger engine
//! ([`binalg`]) against an elimination oracle ([`toric`]), and reduces
//! monomials along a fixed rule schedule ([`ladder`]).

pub mod audit;
pub mod binalg;
pub mod closedform;
pub mod error;
pub mod ladder;
pub mod order;
pub mod semigroup;
pub mod toric;

pub use binalg::{BasisSet, Binomial, EngineConfig, GroebnerCheck, Minimality, Witness};
pub use closedform::{assemble, BasisKind, FamilyLabel, NamedBasis};
pub use error::{Error, Result};
pub use ladder::{Ladder, LadderState};
pub use order::{Direction, Monomial, OrderSpec};
pub use semigroup::{compute_parameters, CurveInput, CurveParameters, Interval};
