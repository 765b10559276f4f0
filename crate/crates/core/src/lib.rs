//! Answer set programming and the bounded-arity Σ₁ fragment of minimal
//! predicate logic, with polynomial translations in both directions.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; long-running searches take a [`Budget`] so a host
//! can interrupt them.
//!
//! Layout:
//!
//! * [`syntax`]: programs, formulas, parsers and printers, Mints classes.
//! * [`asp`]: grounding, reducts, stable models, entailment, refutations.
//! * [`proof`]: proof terms, the type-assignment checker, Σ₁ proof search.
//! * [`asp_to_sigma`]: compiles SMS entailment into Σ₁ provability.
//! * [`sigma_to_asp`]: compiles Σ₁ refutability into stable-model existence.
//! * [`soup`]: refutation soups and their conversions to and from models.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asp;
pub mod asp_to_sigma;
mod budget;
mod error;
pub mod proof;
pub mod sigma_to_asp;
pub mod soup;
pub mod syntax;

pub use budget::{Budget, Unlimited};
pub use error::{Error, Result};
