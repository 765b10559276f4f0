use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text.
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// A predicate was used with two different arities.
    ArityConflict {
        predicate: String,
        first: usize,
        second: usize,
    },
    /// The program needs a domain to ground its variables but declares none.
    EmptyDomain,
    /// A clause has a head variable that is not bound in the body (safe mode only).
    UnsafeClause { clause: String, variable: String },
    /// Grounding would produce more than `cap` ground clauses.
    GroundingCap { cap: usize },
    /// Subset enumeration over a base larger than `cap` atoms.
    EnumerationCap { base: usize, cap: usize },
    /// The formula is in neither Σ₁ nor Π₁ (or not in the class required).
    Unclassifiable(String),
    /// A model mentions atoms outside the base, or is otherwise unusable.
    InvalidModel(String),
    /// The judgment space of a proof search outgrew its cap.
    JudgmentCap { cap: usize },
    /// The budget expired before the computation finished.
    BudgetExhausted,
    /// Translation output would exceed its emission cap.
    EmissionCap { cap: usize },
    /// An address space too small for the object that must be placed in it.
    AddressSpace { needed: usize, available: usize },
    /// Two independent routes disagreed. This is a bug, never a user error.
    CrossCheck(String),
    /// An argument that violates an operation's precondition.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax {
                line,
                column,
                message,
            } => write!(f, "syntax error at {line}:{column}: {message}"),
            Error::ArityConflict {
                predicate,
                first,
                second,
            } => write!(
                f,
                "predicate `{predicate}` used with arity {first} and arity {second}"
            ),
            Error::EmptyDomain => write!(f, "program has variables but an empty domain"),
            Error::UnsafeClause { clause, variable } => {
                write!(
                    f,
                    "unsafe clause `{clause}`: head variable `{variable}` not bound in body"
                )
            }
            Error::GroundingCap { cap } => write!(f, "grounding exceeds {cap} ground clauses"),
            Error::EnumerationCap { base, cap } => {
                write!(f, "base has {base} atoms, enumeration cap is {cap}")
            }
            Error::Unclassifiable(s) => write!(f, "formula outside the required Mints class: {s}"),
            Error::InvalidModel(s) => write!(f, "invalid model: {s}"),
            Error::JudgmentCap { cap } => write!(f, "proof search exceeded {cap} judgments"),
            Error::BudgetExhausted => write!(f, "budget exhausted"),
            Error::EmissionCap { cap } => write!(f, "translation exceeds {cap} emitted clauses"),
            Error::AddressSpace { needed, available } => write!(
                f,
                "{needed} disjudgments do not fit into {available} addresses"
            ),
            Error::CrossCheck(s) => write!(f, "cross-check failure: {s}"),
            Error::Invalid(s) => f.write_str(s),
        }
    }
}

impl core::error::Error for Error {}
