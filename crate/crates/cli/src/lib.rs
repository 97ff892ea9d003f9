//! Document formats and command implementations behind the `arcval` binary.

pub mod document;
pub mod run;

/// Exit codes of the binary: success or agreement; a membership
/// disagreement (a genuine counterexample or bug); an input or usage error;
/// a violated mathematical precondition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok = 0,
    Disagreement = 1,
    UsageError = 2,
    PreconditionError = 3,
}

/// A command failure carrying the exit classification and a message.
#[derive(Debug)]
pub struct CmdError {
    pub outcome: Outcome,
    pub message: String,
}

impl CmdError {
    pub fn usage(message: impl Into<String>) -> Self {
        CmdError {
            outcome: Outcome::UsageError,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CmdError {
            outcome: Outcome::PreconditionError,
            message: message.into(),
        }
    }
}

impl From<arcval::Error> for CmdError {
    fn from(e: arcval::Error) -> Self {
        use arcval::Error::*;
        let outcome = match e {
            // Input shape problems.
            VariableCountMismatch { .. }
            | EnumerationTooLarge { .. }
            | DegreeAbovePrecision { .. }
            | DimensionTooSmall(_)
            | MixedPrecision(..)
            | NonzeroConstantTerm { .. }
            | ZeroPrecision => Outcome::UsageError,
            // Everything else is mathematics refusing the inputs.
            _ => Outcome::PreconditionError,
        };
        CmdError {
            outcome,
            message: e.to_string(),
        }
    }
}
