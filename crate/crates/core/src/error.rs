use thiserror::Error;

/// Errors raised by the arithmetic tiers.
///
/// Every operation that can fail returns one of these; the variants map
/// one-to-one onto the failure modes of the individual operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a number: a left option is >= a right option")]
    NotANumber,
    #[error("input must be positive")]
    NonPositive,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not a main ordinal of the form w^(w^mu)")]
    NotMainOrdinal(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("leading coefficient {0} has no rational root of order {1}")]
    IrrationalLeadingRoot(String, u32),
    #[error("polynomial degree must be odd")]
    EvenDegree,
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("argument is not infinitesimal")]
    NotInfinitesimal,
    #[error("finite part of the exponent is not an integer plus an infinitesimal")]
    UnsupportedFinitePart,
    #[error("argument lies outside the logarithm domain")]
    OutsideDomain,
    #[error("logarithm of {0} to base {1} is not an integer")]
    InexactRealLog(String, String),
    #[error("exponential base must be a positive finite rational other than 1")]
    InvalidBase,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial modulus nearly vanishes on the circle at sample {0}")]
    RootOnCircleSuspected(usize),
    #[error("index {0} is outside (0, zeta)")]
    IndexOutOfRange(String),
    #[error("index {0} has no exact finite-support evaluation for this generator")]
    UnsupportedIndex(String),
    #[error("generator kind outside the decision fragment")]
    UndecidableKind,
    #[error("divisor sequence has no verified positive lower bound")]
    NoLowerBound,
    #[error("sequence is not fundamental")]
    NotCauchy,
    #[error("unsupported expression: {0}")]
    UnsupportedExpression(String),
}

pub type Result<T> = std::result::Result<T, Error>;
