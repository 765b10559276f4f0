use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Name of the constant used as the domain of a purely propositional program.
pub const DEFAULT_CONSTANT: &str = "c0";

/// Whether an identifier in term position denotes a variable.
///
/// Variables start with one of `u`..`z` or with an uppercase letter; every
/// other identifier (including ones starting with a digit) is a constant.
pub fn is_variable_name(name: &str) -> bool {
    match name.chars().next() {
        Some(c) => ('u'..='z').contains(&c) || c.is_ascii_uppercase(),
        None => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    /// Classifies `name` with [`is_variable_name`].
    pub fn from_name(name: &str) -> Term {
        if is_variable_name(name) {
            Term::Var(name.to_string())
        } else {
            Term::Const(name.to_string())
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Const(s) | Term::Var(s) => s,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: &str, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.to_string(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter(|t| t.is_var()).map(Term::name)
    }

    /// Instantiates the atom; panics if a variable is unbound.
    pub fn ground(&self, binding: &BTreeMap<&str, &str>) -> GroundAtom {
        GroundAtom {
            predicate: self.predicate.clone(),
            args: self
                .args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => c.clone(),
                    Term::Var(v) => binding[v.as_str()].to_string(),
                })
                .collect(),
        }
    }
}

fn write_atom(f: &mut fmt::Formatter<'_>, pred: &str, args: &[&str]) -> fmt::Result {
    f.write_str(pred)?;
    if !args.is_empty() {
        f.write_str("(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(a)?;
        }
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<&str> = self.args.iter().map(Term::name).collect();
        write_atom(f, &self.predicate, &args)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A body literal: an atom with a polarity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub polarity: Polarity,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            polarity: Polarity::Negative,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_positive() {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Literal>,
}

impl Clause {
    pub fn new(head: Atom, body: Vec<Literal>) -> Self {
        Clause { head, body }
    }

    pub fn fact(head: Atom) -> Self {
        Clause {
            head,
            body: Vec::new(),
        }
    }

    pub fn positive_body(&self) -> impl Iterator<Item = &Atom> {
        self.body
            .iter()
            .filter(|l| l.is_positive())
            .map(|l| &l.atom)
    }

    pub fn negative_body(&self) -> impl Iterator<Item = &Atom> {
        self.body
            .iter()
            .filter(|l| !l.is_positive())
            .map(|l| &l.atom)
    }

    /// Distinct variables in order of first occurrence, head first.
    pub fn variables(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        let atoms = core::iter::once(&self.head).chain(self.body.iter().map(|l| &l.atom));
        for a in atoms {
            for v in a.variables() {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen
    }

    /// Variables of the head, without repetitions, in order.
    pub fn head_variables(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for v in self.head.variables() {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen
    }

    /// Variables occurring only in the body, in first-occurrence order
    /// scanning the body left to right.
    pub fn body_only_variables(&self) -> Vec<&str> {
        let head = self.head_variables();
        let mut seen: Vec<&str> = Vec::new();
        for l in &self.body {
            for v in l.atom.variables() {
                if !head.contains(&v) && !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            for (i, l) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{l}")?;
            }
        }
        f.write_str(".")
    }
}

/// A ground positive atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(predicate: &str, args: &[&str]) -> Self {
        GroundAtom {
            predicate: predicate.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn nullary(predicate: &str) -> Self {
        GroundAtom::new(predicate, &[])
    }

    pub fn to_atom(&self) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|c| Term::Const(c.clone())).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<&str> = self.args.iter().map(String::as_str).collect();
        write_atom(f, &self.predicate, &args)
    }
}

/// A finite set of clauses with a nonempty constant domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub clauses: Vec<Clause>,
    pub domain: BTreeSet<String>,
    /// Predicate name to arity, for every predicate of the language.
    pub signature: BTreeMap<String, usize>,
}

impl Program {
    /// Builds a program, checking arities and completing the domain with the
    /// constants that occur in `clauses`.
    pub fn new(clauses: Vec<Clause>, declared: BTreeSet<String>) -> Result<Program> {
        let mut signature = BTreeMap::new();
        let mut domain = declared;
        let mut has_vars = false;
        for c in &clauses {
            for a in core::iter::once(&c.head).chain(c.body.iter().map(|l| &l.atom)) {
                declare(&mut signature, &a.predicate, a.arity())?;
                for t in &a.args {
                    match t {
                        Term::Const(k) => {
                            domain.insert(k.clone());
                        }
                        Term::Var(_) => has_vars = true,
                    }
                }
            }
        }
        if domain.is_empty() {
            if has_vars {
                return Err(Error::EmptyDomain);
            }
            domain.insert(DEFAULT_CONSTANT.to_string());
        }
        Ok(Program {
            clauses,
            domain,
            signature,
        })
    }

    /// Adds a predicate to the language without any clause mentioning it.
    pub fn with_predicate(mut self, name: &str, arity: usize) -> Result<Program> {
        declare(&mut self.signature, name, arity)?;
        Ok(self)
    }

    pub fn arity(&self, predicate: &str) -> Option<usize> {
        self.signature.get(predicate).copied()
    }

    /// Rejects clauses with head variables absent from the positive body.
    pub fn check_safe(&self) -> Result<()> {
        for c in &self.clauses {
            let bound: BTreeSet<&str> = c.positive_body().flat_map(|a| a.variables()).collect();
            for v in c.head.variables() {
                if !bound.contains(v) {
                    return Err(Error::UnsafeClause {
                        clause: c.to_string(),
                        variable: v.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// All ground atoms over the signature and domain, in sorted order.
    pub fn base(&self) -> Vec<GroundAtom> {
        let consts: Vec<&str> = self.domain.iter().map(String::as_str).collect();
        let mut out = Vec::new();
        for (p, &k) in &self.signature {
            for_each_tuple(&consts, k, |args| {
                out.push(GroundAtom::new(p, args));
            });
        }
        out
    }

    pub fn base_size(&self) -> usize {
        let d = self.domain.len();
        self.signature
            .values()
            .map(|&k| d.saturating_pow(k as u32))
            .fold(0usize, usize::saturating_add)
    }
}

pub(crate) fn declare(sig: &mut BTreeMap<String, usize>, name: &str, arity: usize) -> Result<()> {
    match sig.get(name) {
        Some(&k) if k != arity => Err(Error::ArityConflict {
            predicate: name.to_string(),
            first: k,
            second: arity,
        }),
        Some(_) => Ok(()),
        None => {
            sig.insert(name.to_string(), arity);
            Ok(())
        }
    }
}

/// Calls `f` on every tuple of length `k` over `items`, in lexicographic order.
pub(crate) fn for_each_tuple<'a, F: FnMut(&[&'a str])>(items: &[&'a str], k: usize, mut f: F) {
    if k == 0 {
        f(&[]);
        return;
    }
    if items.is_empty() {
        return;
    }
    let mut idx = alloc::vec![0usize; k];
    let mut buf: Vec<&'a str> = alloc::vec![items[0]; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        f(&buf);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < items.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("#domain ")?;
        for (i, c) in self.domain.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(c)?;
        }
        f.write_str(".\n")?;
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
