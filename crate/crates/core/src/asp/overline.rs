use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::ground::{GroundProgram, Model};
use crate::Result;

/// An atom of the doubled signature: `R(c)` or its overlined twin `R̄(c)`.
///
/// Internally encoded as `2 * id + barred` over the ground program's ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar(pub u32);

impl Bar {
    pub fn plain(atom: u32) -> Bar {
        Bar(atom * 2)
    }

    pub fn barred(atom: u32) -> Bar {
        Bar(atom * 2 + 1)
    }

    pub fn atom(self) -> u32 {
        self.0 / 2
    }

    pub fn is_barred(self) -> bool {
        self.0 % 2 == 1
    }
}

/// A definite clause of the overline program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornClause {
    pub head: Bar,
    pub body: Vec<Bar>,
}

/// P̄: the ground program with each `not R(c)` replaced by `R̄(c)`.
#[derive(Debug, Clone)]
pub struct Overline {
    pub clauses: Vec<HornClause>,
    atoms: usize,
}

pub fn overline(g: &GroundProgram) -> Overline {
    let clauses = g
        .clauses
        .iter()
        .map(|c| HornClause {
            head: Bar::plain(c.head),
            body: c
                .pos
                .iter()
                .map(|&a| Bar::plain(a))
                .chain(c.neg.iter().map(|&a| Bar::barred(a)))
                .collect(),
        })
        .collect();
    Overline {
        clauses,
        atoms: g.num_atoms(),
    }
}

impl Overline {
    /// Size of the doubled id space.
    pub fn width(&self) -> usize {
        self.atoms * 2
    }

    /// Forward-chaining closure of `facts` (indexed by [`Bar`]).
    pub fn closure(&self, facts: &[bool]) -> Vec<bool> {
        let mut out = facts.to_vec();
        let mut watch: Vec<Vec<usize>> = vec![Vec::new(); out.len()];
        let mut missing: Vec<usize> = Vec::with_capacity(self.clauses.len());
        let mut queue: Vec<usize> = (0..out.len()).filter(|&i| out[i]).collect();
        for (k, c) in self.clauses.iter().enumerate() {
            for b in &c.body {
                watch[b.0 as usize].push(k);
            }
            missing.push(c.body.len());
            if c.body.is_empty() && !out[c.head.0 as usize] {
                out[c.head.0 as usize] = true;
                queue.push(c.head.0 as usize);
            }
        }
        while let Some(x) = queue.pop() {
            for &k in &watch[x] {
                missing[k] -= 1;
                if missing[k] == 0 {
                    let h = self.clauses[k].head.0 as usize;
                    if !out[h] {
                        out[h] = true;
                        queue.push(h);
                    }
                }
            }
        }
        out
    }

    /// Whether `goal` follows from `facts` by the clauses.
    pub fn derives(&self, facts: &[bool], goal: Bar) -> bool {
        self.closure(facts)[goal.0 as usize]
    }

    pub fn render(&self, g: &GroundProgram) -> String {
        let mut s = String::new();
        for c in &self.clauses {
            s.push_str(&alloc::format!("{}", Show(g, c.head)));
            for (i, b) in c.body.iter().enumerate() {
                s.push_str(if i == 0 { " :- " } else { ", " });
                s.push_str(&alloc::format!("{}", Show(g, *b)));
            }
            s.push_str(".\n");
        }
        s
    }
}

/// M̄ over the interned atoms: `R̄(c)` for every `R(c)` not in `m`.
pub fn m_bar(g: &GroundProgram, m: &[bool]) -> Vec<bool> {
    let mut out = vec![false; g.num_atoms() * 2];
    for (i, &inm) in m.iter().enumerate() {
        if !inm {
            out[Bar::barred(i as u32).0 as usize] = true;
        }
    }
    out
}

/// The plain atoms derivable from P̄ ∪ M̄, as a model.
pub fn horn_interpretation(g: &GroundProgram, m: &Model) -> Result<Model> {
    let (v, _) = g.mask(m)?;
    let ov = overline(g);
    let closed = ov.closure(&m_bar(g, &v));
    Ok((0..g.num_atoms())
        .filter(|&i| closed[Bar::plain(i as u32).0 as usize])
        .map(|i| g.atom(i as u32).clone())
        .collect())
}

/// Displays a [`Bar`] as `p(c)` or `~p(c)`.
pub struct Show<'a>(pub &'a GroundProgram, pub Bar);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_barred() {
            f.write_str("~")?;
        }
        write!(f, "{}", self.0.atom(self.1.atom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::{ground, interpretation};
    use crate::syntax::parse_program;
    use crate::syntax::GroundAtom;

    #[test]
    fn overline_replaces_negation() {
        let g = ground(&parse_program("p :- not q.").unwrap(), 100).unwrap();
        assert_eq!(overline(&g).render(&g), "p :- ~q.\n");
        let g = ground(&parse_program("p :- q. q.").unwrap(), 100).unwrap();
        assert_eq!(overline(&g).render(&g), "p :- q.\nq.\n");
    }

    #[test]
    fn m_bar_is_complement() {
        let g = ground(&parse_program("p :- not q.").unwrap(), 100).unwrap();
        let mb = m_bar(&g, &[false, false]);
        assert_eq!(mb, [false, true, false, true]);
    }

    #[test]
    fn horn_chaining() {
        let g = ground(&parse_program("p :- not q.").unwrap(), 100).unwrap();
        let ov = overline(&g);
        let p = g.id(&GroundAtom::nullary("p")).unwrap();
        assert!(ov.derives(&m_bar(&g, &[false, false]), Bar::plain(p)));
        let empty = Overline {
            clauses: Vec::new(),
            atoms: 2,
        };
        assert!(!empty.derives(&[false; 4], Bar::plain(p)));
    }

    #[test]
    fn lemma_identity_small() {
        let p = parse_program("p :- not q. q :- not p. r :- p, not r. s :- s.").unwrap();
        let g = ground(&p, 100).unwrap();
        let base = g.base();
        for bits in 0..(1u32 << base.len()) {
            let m: Model = base
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect();
            assert_eq!(
                horn_interpretation(&g, &m).unwrap(),
                interpretation(&g, &m).unwrap()
            );
        }
    }
}
