use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::lexer::{Cursor, Tok};
use crate::syntax::{formula_at, Formula};
use crate::Result;

/// Typing environment: proof variables and their declared formulas.
pub type Environment = BTreeMap<String, Formula>;

/// A lambda term standing for a natural-deduction proof.
///
/// Subterms sit behind [`Arc`] so certificates found by search can share
/// repeated subproofs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProofTerm {
    Var(String),
    /// `\X:phi. M`
    Abs(String, Formula, Arc<ProofTerm>),
    /// `\x. M`
    ObjAbs(String, Arc<ProofTerm>),
    App(Arc<ProofTerm>, Arc<ProofTerm>),
    /// Application to an object name.
    ObjApp(Arc<ProofTerm>, String),
}

/// Proof variables start with an uppercase letter; everything else names an object.
pub fn is_proof_var(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

impl ProofTerm {
    pub fn var(name: &str) -> ProofTerm {
        ProofTerm::Var(name.to_string())
    }

    pub fn abs(var: &str, annot: Formula, body: ProofTerm) -> ProofTerm {
        ProofTerm::Abs(var.to_string(), annot, Arc::new(body))
    }

    pub fn obj_abs(var: &str, body: ProofTerm) -> ProofTerm {
        ProofTerm::ObjAbs(var.to_string(), Arc::new(body))
    }

    pub fn app(fun: ProofTerm, arg: ProofTerm) -> ProofTerm {
        ProofTerm::App(Arc::new(fun), Arc::new(arg))
    }

    pub fn obj_app(fun: ProofTerm, arg: &str) -> ProofTerm {
        ProofTerm::ObjApp(Arc::new(fun), arg.to_string())
    }

    /// Number of nodes, counting shared subterms once per occurrence.
    pub fn size(&self) -> usize {
        match self {
            ProofTerm::Var(_) => 1,
            ProofTerm::Abs(_, _, b) | ProofTerm::ObjAbs(_, b) | ProofTerm::ObjApp(b, _) => {
                1 + b.size()
            }
            ProofTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Whether an object abstraction occurs anywhere.
    pub fn has_obj_abs(&self) -> bool {
        match self {
            ProofTerm::Var(_) => false,
            ProofTerm::ObjAbs(..) => true,
            ProofTerm::Abs(_, _, b) | ProofTerm::ObjApp(b, _) => b.has_obj_abs(),
            ProofTerm::App(f, a) => f.has_obj_abs() || a.has_obj_abs(),
        }
    }

    /// Splits an application spine into its head and arguments.
    pub fn spine(&self) -> (&ProofTerm, Vec<Arg<'_>>) {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                ProofTerm::App(f, a) => {
                    args.push(Arg::Proof(a));
                    cur = f;
                }
                ProofTerm::ObjApp(f, y) => {
                    args.push(Arg::Object(y));
                    cur = f;
                }
                _ => break,
            }
        }
        args.reverse();
        (cur, args)
    }
}

/// One argument of an application spine.
#[derive(Debug, Clone, Copy)]
pub enum Arg<'a> {
    Proof(&'a ProofTerm),
    Object(&'a str),
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofTerm::Var(x) => f.write_str(x),
            ProofTerm::Abs(x, a, b) => {
                if a.is_atom() {
                    write!(f, "\\{x}:{a}. {b}")
                } else {
                    write!(f, "\\{x}:({a}). {b}")
                }
            }
            ProofTerm::ObjAbs(x, b) => write!(f, "\\{x}. {b}"),
            _ => {
                let (head, args) = self.spine();
                match head {
                    ProofTerm::Var(_) => write!(f, "{head}")?,
                    _ => write!(f, "({head})")?,
                }
                for a in args {
                    match a {
                        Arg::Object(y) => write!(f, " {y}")?,
                        Arg::Proof(t @ ProofTerm::Var(_)) => write!(f, " {t}")?,
                        Arg::Proof(t) => write!(f, " ({t})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Parses the term syntax printed by [`ProofTerm`]'s `Display`.
///
/// Abstraction bodies extend as far to the right as possible and
/// application is juxtaposition, associating to the left.
pub fn parse_term(text: &str) -> Result<ProofTerm> {
    let mut cur = Cursor::new(text)?;
    let t = term(&mut cur)?;
    if *cur.peek() != Tok::Eof {
        return Err(cur.error("trailing input after term"));
    }
    Ok(t)
}

fn term(cur: &mut Cursor) -> Result<ProofTerm> {
    if cur.eat(&Tok::Backslash) {
        let x = cur.ident("bound variable after `\\`")?;
        if cur.eat(&Tok::Colon) {
            if !is_proof_var(&x) {
                return Err(cur.error("proof variables must start with an uppercase letter"));
            }
            let annot = formula_at(cur)?;
            annot.signature()?;
            cur.expect(Tok::Dot, "`.` after the annotation")?;
            let body = term(cur)?;
            return Ok(ProofTerm::abs(&x, annot, body));
        }
        if is_proof_var(&x) {
            return Err(cur.error("proof abstraction needs a `:` annotation"));
        }
        cur.expect(Tok::Dot, "`.` after the bound variable")?;
        let body = term(cur)?;
        return Ok(ProofTerm::obj_abs(&x, body));
    }
    let mut head = match cur.peek().clone() {
        Tok::LParen => {
            cur.next();
            let t = term(cur)?;
            cur.expect(Tok::RParen, "`)`")?;
            t
        }
        Tok::Ident(x) if is_proof_var(&x) => {
            cur.next();
            ProofTerm::Var(x)
        }
        Tok::Ident(_) => return Err(cur.error("a term cannot start with an object name")),
        _ => return Err(cur.error("expected a term")),
    };
    loop {
        match cur.peek().clone() {
            Tok::LParen => {
                cur.next();
                let t = term(cur)?;
                cur.expect(Tok::RParen, "`)`")?;
                head = ProofTerm::app(head, t);
            }
            Tok::Ident(x) => {
                cur.next();
                head = if is_proof_var(&x) {
                    ProofTerm::app(head, ProofTerm::Var(x))
                } else {
                    ProofTerm::obj_app(head, &x)
                };
            }
            Tok::Backslash => {
                let t = term(cur)?;
                return Ok(ProofTerm::app(head, t));
            }
            _ => return Ok(head),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use alloc::string::ToString;

    #[test]
    fn print_and_parse() {
        let t = ProofTerm::abs(
            "X",
            parse_formula("forall x. P(x) -> Q(x)").unwrap(),
            ProofTerm::abs(
                "Y",
                Formula::atom("P", &["c"]),
                ProofTerm::app(
                    ProofTerm::obj_app(ProofTerm::var("X"), "c"),
                    ProofTerm::var("Y"),
                ),
            ),
        );
        let s = t.to_string();
        assert_eq!(s, "\\X:(forall x. P(x) -> Q(x)). \\Y:P(c). X c Y");
        assert_eq!(parse_term(&s).unwrap(), t);
    }

    #[test]
    fn nested_arguments() {
        let s = "X (\\Y:a. Y) (Z W) c";
        let t = parse_term(s).unwrap();
        assert_eq!(t.to_string(), s);
        let (head, args) = t.spine();
        assert_eq!(*head, ProofTerm::var("X"));
        assert_eq!(args.len(), 3);
        assert_eq!(parse_term("\\x. X x").unwrap().to_string(), "\\x. X x");
    }

    #[test]
    fn rejects_bad_terms() {
        assert!(parse_term("c X").is_err());
        assert!(parse_term("\\x:a. x").is_err());
        assert!(parse_term("\\X. X").is_err());
        assert!(parse_term("X )").is_err());
    }
}
