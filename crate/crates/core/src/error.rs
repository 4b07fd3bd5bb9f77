use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// Variants fall in three groups: input validation (the caller handed us a
/// sequence outside the supported family), engine limits, and contract
/// violations. The last group signals a broken invariant that the underlying
/// theory says cannot happen; see [`Error::is_contract_violation`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is too short: need at least two arithmetic terms (p >= 1)")]
    TooShort,
    #[error("generator {0} is not a positive integer")]
    NonPositive(i64),
    #[error("arithmetic part is not strictly increasing at position {0}")]
    NonIncreasing(usize),
    #[error("arithmetic part has non-constant difference at position {0}")]
    NotArithmetic(usize),
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("generator m{index} = {value} lies in the semigroup of the others")]
    NotMinimallyGenerated { index: usize, value: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not in the semigroup")]
    NotInSemigroup(u64),
    #[error("family index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("monomials have unequal weights {0} and {1}")]
    UnequalWeights(u64, u64),
    #[error("the basis is not a Groebner basis")]
    NotAGroebnerBasis,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("uniqueness violated for {what}: {hits} solutions")]
    UniquenessViolation { what: String, hits: usize },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Stable variant name, used on the command line and in JSON reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::TooShort => "TooShort",
            Error::NonPositive(_) => "NonPositive",
            Error::NonIncreasing(_) => "NonIncreasing",
            Error::NotArithmetic(_) => "NotArithmetic",
            Error::GcdNotOne(_) => "GcdNotOne",
            Error::NotMinimallyGenerated { .. } => "NotMinimallyGenerated",
            Error::Overflow(_) => "Overflow",
            Error::Parse { .. } => "Parse",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInSemigroup(_) => "NotInSemigroup",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::UnsupportedInput(_) => "UnsupportedInput",
            Error::PreconditionViolation(_) => "PreconditionViolation",
            Error::UnequalWeights(..) => "UnequalWeights",
            Error::NotAGroebnerBasis => "NotAGroebnerBasis",
            Error::ResourceLimit(_) => "ResourceLimit",
            Error::UniquenessViolation { .. } => "UniquenessViolation",
            Error::InvariantViolation(_) => "InvariantViolation",
        }
    }

    /// True for errors caused by the caller's input rather than by us.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::TooShort
                | Error::NonPositive(_)
                | Error::NonIncreasing(_)
                | Error::NotArithmetic(_)
                | Error::GcdNotOne(_)
                | Error::NotMinimallyGenerated { .. }
                | Error::Overflow(_)
                | Error::Parse { .. }
                | Error::DimensionMismatch { .. }
                | Error::NotInSemigroup(_)
                | Error::IndexOutOfRange(_)
                | Error::UnsupportedInput(_)
                | Error::UnequalWeights(..)
        )
    }

    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            Error::UniquenessViolation { .. } | Error::InvariantViolation(_)
        )
    }
}
