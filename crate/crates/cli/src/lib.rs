//! Command-line front end for `asp-sigma-core`: file formats, seeded
//! corpora and the round-trip drivers that cross-check both translations.

pub mod commands;
pub mod corpus;
pub mod io;
pub mod roundtrip;

pub use commands::run;
