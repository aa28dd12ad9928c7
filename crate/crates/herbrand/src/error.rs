use thiserror::Error;

/// Crate-wide error type. Every variant carries a stable machine-readable
/// code (see [`Error::code`]) so callers can match on failures without
/// parsing messages.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructor argument violates a documented constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Brute-force enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {required} candidates required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// A set of group elements is not closed under the group operation.
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    /// A subgroup that must be normal is not.
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    /// An operation that requires the abelian flag was called without it.
    #[error("profile is not flagged abelian: {0}")]
    NotAbelian(String),

    /// An operation that requires a wild profile was called on a tame one.
    #[error("profile is tame: {0}")]
    TameProfile(String),

    /// A depth-to-conductor conversion hit a non-integral conductor.
    #[error("conductor is not integral: {0}")]
    NonIntegralConductor(String),

    /// Base-change degree is not the one the operation is defined for.
    #[error("degree error: {0}")]
    DegreeNotTwo(String),

    /// A truncated-series computation ran out of known coefficients.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// The requested working precision is too small for the computation.
    #[error("insufficient precision: {0}")]
    PrecisionInsufficient(String),

    /// A generated set of series automorphisms did not close into a group.
    #[error("closure failure: {0}")]
    NonClosure(String),

    /// Measured filtration level sets do not form a subgroup chain.
    #[error("filtration level sets are not a subgroup chain: {0}")]
    NonSubgroupChain(String),

    /// The identity automorphism was passed where a nontrivial one is needed.
    #[error("identity automorphism: {0}")]
    IdentityInput(String),
}

impl Error {
    /// Stable short code for this error, independent of message wording.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "E_DOMAIN",
            Error::InvalidParameter(_) => "E_PARAM",
            Error::BudgetExceeded { .. } => "E_BUDGET",
            Error::NotASubgroup(_) => "E_SUBGROUP",
            Error::NotNormal(_) => "E_NORMAL",
            Error::NotAbelian(_) => "E_ABELIAN",
            Error::TameProfile(_) => "E_TAME",
            Error::NonIntegralConductor(_) => "E_CONDUCTOR",
            Error::DegreeNotTwo(_) => "E_DEGREE",
            Error::PrecisionExhausted(_) => "E_PRECISION",
            Error::PrecisionInsufficient(_) => "E_PRECISION_LOW",
            Error::NonClosure(_) => "E_CLOSURE",
            Error::NonSubgroupChain(_) => "E_CHAIN",
            Error::IdentityInput(_) => "E_IDENTITY",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
