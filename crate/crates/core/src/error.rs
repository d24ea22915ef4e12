//! Error taxonomy shared by all subsystems.
//!
//! Variants map onto the CLI exit codes: parse (2), validation (3),
//! refusal/ambiguity (4), numerical guard (5).

use thiserror::Error;

use crate::fgab::FgAbGroup;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file or expression.
    #[error("parse error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, msg: String },

    /// A domain invariant or precondition is violated.
    #[error("validation error: {0}")]
    Validation(String),

    /// The solver declines to answer: the data admit more than one
    /// extension and guessing would be unsound.
    #[error("ambiguous extension 0 -> {subgroup} -> X -> {quotient} -> 0: the quotient has torsion, the extension class is not determined")]
    AmbiguousExtension {
        subgroup: FgAbGroup,
        quotient: FgAbGroup,
    },

    /// A required input fact was not supplied; the conclusion is not forced.
    #[error("missing fact `{name}`: {explanation}")]
    MissingFact { name: String, explanation: String },

    /// Any other principled refusal (incomplete data, unsupported case).
    #[error("refusal: {0}")]
    Refusal(String),

    /// A numerical sanity guard tripped (undersampling, singular Jacobian,
    /// non-integral winding residue).
    #[error("numerical guard: {0}")]
    NumericalGuard(String),
}

impl Error {
    /// Exit code for the CLI: 2 parse, 3 validation, 4 refusal, 5 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Validation(_) => 3,
            Error::AmbiguousExtension { .. } | Error::MissingFact { .. } | Error::Refusal(_) => 4,
            Error::NumericalGuard(_) => 5,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn refusal(msg: impl Into<String>) -> Self {
        Error::Refusal(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        Error::NumericalGuard(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
