use std::path::PathBuf;

use thiserror::Error;

/// Byte range `start..end` into the input line.
pub type Span = (usize, usize);

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Core(#[from] surreal::Error),
    #[error("cannot combine {0} with {1}")]
    TierMismatch(&'static str, &'static str),
    #[error("{op} is not defined for {tier} values")]
    Unsupported { op: &'static str, tier: &'static str },
    #[error("OMEGA is only allowed as a sequence zeta")]
    OmegaNotArithmetic,
    #[error("unknown function {0}")]
    UnknownFunction(String),
    #[error("{name} takes {expected} argument(s)")]
    Arity { name: String, expected: &'static str },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("ans is empty")]
    NoAns,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {pos}: expected {}", expected.join(" or "))]
    Syntax { pos: usize, expected: Vec<String> },
    #[error("{source} at {}..{}", span.0, span.1)]
    Eval { span: Span, source: EvalError },
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn syntax(pos: usize, expected: &[&str]) -> Self {
        CliError::Syntax {
            pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn eval(span: Span, source: impl Into<EvalError>) -> Self {
        CliError::Eval {
            span,
            source: source.into(),
        }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Eval { .. } => 1,
            CliError::Syntax { .. } => 2,
            CliError::Config(_) | CliError::Io { .. } => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Eval { .. } => "eval",
            CliError::Syntax { .. } => "syntax",
            CliError::Config(_) => "config",
            CliError::Io { .. } => "io",
        }
    }

    pub fn span(&self) -> Option<Span> {
        match self {
            CliError::Eval { span, .. } => Some(*span),
            CliError::Syntax { pos, .. } => Some((*pos, *pos)),
            _ => None,
        }
    }
}
