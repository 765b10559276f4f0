//! Proof terms for minimal predicate logic, their type checker, and a
//! decision procedure for Σ₁ judgments that returns long normal certificates.

mod check;
mod prove;
mod term;

pub use check::{check, check_verbose, infer, is_lnf};
pub use prove::{prove, prove_sigma1, prove_with_cap, Prover, SearchStats, DEFAULT_JUDGMENT_CAP};
pub use term::{is_proof_var, parse_term, Arg, Environment, ProofTerm};
