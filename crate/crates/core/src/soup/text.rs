//! Plain-text soups.
//!
//! ```text
//! addr-len 1
//! judgment
//!   addresses 0
//!   goal a
//!   context f1 []
//! end
//! answer (f1, [], [], 0) -> (1, 1)
//! ```
//!
//! `%` starts a comment. Contexts list instances as an occurrence id and a
//! substitution over the bound variables of the formula, `*` marking
//! positions that do not matter.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{show_address, Address, Disjudgment, Soup};
use crate::sigma_to_asp::{Analysis, STAR};
use crate::syntax::parse_formula;
use crate::{Error, Result};

pub fn render_soup(z: &Soup, a: &Analysis) -> String {
    let mut s = format!("% soup for {}\n", a.phi);
    if !a.vars.is_empty() {
        s.push_str(&format!(
            "% substitution positions: {}\n",
            a.vars.join(", ")
        ));
    }
    s.push_str(&format!("addr-len {}\n", z.addr_len));
    for d in &z.judgments {
        s.push_str("judgment\n  addresses");
        for &x in &d.addresses {
            s.push(' ');
            s.push_str(&show_address(x, z.addr_len));
        }
        s.push_str(&format!("\n  goal {}\n", a.atoms[d.goal]));
        for &i in &d.context {
            let inst = &a.instances[i];
            s.push_str(&format!(
                "  context f{} {}  % {}\n",
                inst.psi,
                a.show_subst(&inst.subst),
                a.instance_formula(i)
            ));
        }
        s.push_str("end\n");
    }
    for (&(q, x), &(i, y)) in &z.answers {
        let qu = &a.questions[q];
        s.push_str(&format!(
            "answer (f{}, {}, {}, {}) -> ({i}, {})\n",
            qu.psi,
            a.show_subst(&qu.s),
            a.show_subst(&qu.t),
            show_address(x, z.addr_len),
            show_address(y, z.addr_len)
        ));
    }
    s
}

fn err(line: usize, message: String) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message,
    }
}

fn parse_address(text: &str, len: usize, line: usize) -> Result<Address> {
    if text.len() != len || !text.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(err(
            line,
            format!("`{text}` is not an address of length {len}"),
        ));
    }
    Ok(text.bytes().fold(0, |v, b| v << 1 | (b - b'0') as u32))
}

fn parse_occ(text: &str, line: usize) -> Result<usize> {
    text.trim()
        .strip_prefix('f')
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| err(line, format!("`{text}` is not an occurrence id")))
}

/// Splits `a, [x,y], b` at top-level commas.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out
}

fn restrict(s: &[u16], keep: &[usize]) -> Vec<u16> {
    (0..s.len())
        .map(|p| if keep.contains(&p) { s[p] } else { STAR })
        .collect()
}

pub fn parse_soup(text: &str, a: &Analysis) -> Result<Soup> {
    let mut z = Soup::default();
    let mut cur: Option<Disjudgment> = None;
    let mut have_goal = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('%').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (word, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        let sub = |t: &str| a.parse_subst(t).map_err(|e| err(line, format!("{e}")));
        match (word, cur.is_some()) {
            ("addr-len", false) => {
                z.addr_len = rest
                    .parse()
                    .map_err(|_| err(line, format!("bad address length `{rest}`")))?;
            }
            ("judgment", false) => {
                if z.addr_len == 0 {
                    return Err(err(line, "`addr-len` must come first".into()));
                }
                cur = Some(Disjudgment {
                    context: BTreeSet::new(),
                    goal: 0,
                    addresses: Vec::new(),
                });
                have_goal = false;
            }
            ("addresses", true) => {
                for x in rest.split_whitespace() {
                    let x = parse_address(x, z.addr_len, line)?;
                    cur.as_mut().unwrap().addresses.push(x);
                }
            }
            ("goal", true) => {
                let f = parse_formula(rest).map_err(|e| err(line, format!("{e}")))?;
                let g = a
                    .atom_id(&f)
                    .ok_or_else(|| err(line, format!("`{rest}` is not a possible goal")))?;
                cur.as_mut().unwrap().goal = g;
                have_goal = true;
            }
            ("context", true) => {
                let (occ, s) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err(line, "expected `context f<k> [..]`".into()))?;
                let psi = parse_occ(occ, line)?;
                let sch = a
                    .schemas
                    .get(&psi)
                    .ok_or_else(|| err(line, format!("f{psi} cannot occur in a context")))?;
                let s = restrict(&sub(s)?, &sch.free);
                let i = a
                    .instance_id(psi, &s)
                    .ok_or_else(|| err(line, "unknown instance".into()))?;
                cur.as_mut().unwrap().context.insert(i);
            }
            ("end", true) => {
                if !have_goal {
                    return Err(err(line, "judgment without a goal".into()));
                }
                z.judgments.push(cur.take().unwrap());
            }
            ("answer", false) => {
                let (lhs, rhs) = rest
                    .split_once("->")
                    .ok_or_else(|| err(line, "expected `(..) -> (i, addr)`".into()))?;
                let strip = |t: &str| {
                    t.trim()
                        .strip_prefix('(')
                        .and_then(|t| t.strip_suffix(')'))
                        .map(String::from)
                        .ok_or_else(|| err(line, "missing parentheses".into()))
                };
                let lhs = strip(lhs)?;
                let rhs = strip(rhs)?;
                let l = split_top(&lhs);
                let r = split_top(&rhs);
                if l.len() != 4 || r.len() != 2 {
                    return Err(err(
                        line,
                        "expected `(psi, S, T, addr) -> (i, addr)`".into(),
                    ));
                }
                let psi = parse_occ(l[0], line)?;
                let sch = a
                    .schemas
                    .get(&psi)
                    .ok_or_else(|| err(line, format!("f{psi} asks no questions")))?;
                let s = restrict(&sub(l[1])?, &sch.free);
                let t = restrict(&sub(l[2])?, &sch.top);
                let q = a
                    .question_id(psi, &s, &t)
                    .ok_or_else(|| err(line, "unknown question".into()))?;
                let from = parse_address(l[3], z.addr_len, line)?;
                let i: usize = r[0]
                    .parse()
                    .map_err(|_| err(line, format!("bad premise index `{}`", r[0])))?;
                let to = parse_address(r[1], z.addr_len, line)?;
                z.answers.insert((q, from), (i, to));
            }
            _ => return Err(err(line, format!("unexpected `{word}`"))),
        }
    }
    if cur.is_some() {
        return Err(err(text.lines().count(), "unterminated judgment".into()));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma_to_asp::analyze;
    use crate::soup::{check_soup, find_soup};
    use crate::Unlimited;

    #[test]
    fn render_and_parse() {
        for s in [
            "((a -> b) -> a) -> a",
            "P(d) -> (forall x. P(x) -> Q(x)) -> Q(c)",
            "b -> a",
        ] {
            let a = analyze(&parse_formula(s).unwrap()).unwrap();
            let z = find_soup(&a, 1000, &Unlimited).unwrap().soup.unwrap();
            let text = render_soup(&z, &a);
            let back = parse_soup(&text, &a).unwrap();
            assert_eq!(back, z, "{text}");
            assert!(check_soup(&back, &a).ok);
        }
    }

    #[test]
    fn parse_errors() {
        let a = analyze(&parse_formula("b -> a").unwrap()).unwrap();
        assert!(parse_soup("judgment\nend\n", &a).is_err());
        assert!(parse_soup("addr-len 1\njudgment\n addresses 00\n", &a).is_err());
        assert!(parse_soup("addr-len 1\njudgment\n goal zz\nend\n", &a).is_err());
        let ok = parse_soup(
            "addr-len 1\njudgment\n addresses 0\n goal a\n context f1 []\nend\n",
            &a,
        )
        .unwrap();
        assert!(check_soup(&ok, &a).ok);
    }
}
