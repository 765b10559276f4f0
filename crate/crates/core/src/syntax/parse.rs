use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::formula::Formula;
use super::lexer::{Cursor, Tok};
use super::program::{Atom, Clause, Literal, Program, Term};
use crate::Result;

/// Parses a program. Clauses end with `.`; `#domain c, d.` adds constants.
pub fn parse_program(text: &str) -> Result<Program> {
    let mut cur = Cursor::new(text)?;
    let mut clauses = Vec::new();
    let mut declared = BTreeSet::new();
    while *cur.peek() != Tok::Eof {
        if let Tok::Directive(name) = cur.peek().clone() {
            if name != "domain" {
                return Err(cur.error(&alloc::format!("unknown directive `#{name}`")));
            }
            cur.next();
            loop {
                let c = cur.ident("constant")?;
                if super::program::is_variable_name(&c) {
                    return Err(cur.error(&alloc::format!(
                        "`{c}` is a variable name and cannot be declared as a constant"
                    )));
                }
                declared.insert(c);
                if !cur.eat(&Tok::Comma) {
                    break;
                }
            }
            cur.expect(Tok::Dot, "`.` after domain declaration")?;
            continue;
        }
        clauses.push(clause(&mut cur)?);
    }
    Program::new(clauses, declared)
}

fn clause(cur: &mut Cursor) -> Result<Clause> {
    let head = atom(cur)?;
    let mut body = Vec::new();
    if cur.eat(&Tok::ColonDash) {
        loop {
            let negative = matches!(cur.peek(), Tok::Ident(s) if s == "not")
                && matches!(cur.peek_at(1), Tok::Ident(_));
            if negative {
                cur.next();
                body.push(Literal::neg(atom(cur)?));
            } else {
                body.push(Literal::pos(atom(cur)?));
            }
            if !cur.eat(&Tok::Comma) {
                break;
            }
        }
    }
    cur.expect(Tok::Dot, "`.` at end of clause")?;
    Ok(Clause::new(head, body))
}

fn atom(cur: &mut Cursor) -> Result<Atom> {
    let pred = cur.ident("predicate name")?;
    let args = arguments(cur)?;
    Ok(Atom::new(
        &pred,
        args.iter().map(|a| Term::from_name(a)).collect(),
    ))
}

fn arguments(cur: &mut Cursor) -> Result<Vec<String>> {
    let mut args = Vec::new();
    if cur.eat(&Tok::LParen) {
        if cur.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(cur.ident("argument")?);
            if cur.eat(&Tok::RParen) {
                break;
            }
            cur.expect(Tok::Comma, "`,` or `)`")?;
        }
    }
    Ok(args)
}

/// Parses a single ground atom such as `p(c,d)` or `omega`.
pub fn parse_ground_atom(text: &str) -> Result<super::program::GroundAtom> {
    let mut cur = Cursor::new(text)?;
    let pred = cur.ident("predicate name")?;
    let args = arguments(&mut cur)?;
    cur.eat(&Tok::Dot);
    if *cur.peek() != Tok::Eof {
        return Err(cur.error("trailing input after atom"));
    }
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    Ok(super::program::GroundAtom::new(&pred, &refs))
}

/// Parses a formula and rectifies it.
///
/// `->` associates to the right and `forall x y.` extends as far as possible.
/// Arity conflicts are rejected.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut cur = Cursor::new(text)?;
    let f = formula(&mut cur)?;
    cur.eat(&Tok::Dot);
    if *cur.peek() != Tok::Eof {
        return Err(cur.error("trailing input after formula"));
    }
    f.signature()?;
    Ok(f.rectify())
}

pub(crate) fn formula(cur: &mut Cursor) -> Result<Formula> {
    if matches!(cur.peek(), Tok::Ident(s) if s == "forall") {
        cur.next();
        let mut vars = Vec::new();
        while let Tok::Ident(v) = cur.peek().clone() {
            cur.next();
            vars.push(v);
        }
        if vars.is_empty() {
            return Err(cur.error("expected a variable after `forall`"));
        }
        cur.expect(Tok::Dot, "`.` after quantified variables")?;
        let body = formula(cur)?;
        return Ok(Formula::forall_many(&vars, body));
    }
    let lhs = unit(cur)?;
    if cur.eat(&Tok::Arrow) {
        let rhs = formula(cur)?;
        Ok(Formula::imp(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn unit(cur: &mut Cursor) -> Result<Formula> {
    if cur.eat(&Tok::LParen) {
        let f = formula(cur)?;
        cur.expect(Tok::RParen, "`)`")?;
        return Ok(f);
    }
    let pred = cur.ident("atom or `(`")?;
    let args = arguments(cur)?;
    Ok(Formula::Atom {
        predicate: pred,
        args,
    })
}
