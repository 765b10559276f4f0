//! Programs and formulas: data types, parsers, printers and Mints classes.

mod formula;
pub(crate) mod lexer;
mod parse;
mod program;

pub use formula::{fresh_name, Formula, MintsClass, PiShape};
pub(crate) use parse::formula as formula_at;
pub use parse::{parse_formula, parse_ground_atom, parse_program};
pub(crate) use program::for_each_tuple;
pub use program::{
    is_variable_name, Atom, Clause, GroundAtom, Literal, Polarity, Program, Term, DEFAULT_CONSTANT,
};
