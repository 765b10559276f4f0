use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A formula of minimal predicate logic: atoms, implication and universal
/// quantification. Object terms are plain names; a name is a variable where
/// a quantifier binds it and a constant everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom {
        predicate: String,
        args: Vec<String>,
    },
    Impl(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
}

/// Position of a formula in the Mints hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MintsClass {
    Sigma1,
    Pi1,
    Both,
    Neither,
}

impl MintsClass {
    pub fn is_sigma1(self) -> bool {
        matches!(self, MintsClass::Sigma1 | MintsClass::Both)
    }

    pub fn is_pi1(self) -> bool {
        matches!(self, MintsClass::Pi1 | MintsClass::Both)
    }
}

/// A Π₁ formula split as `∀y⃗₁(σ₁ → ∀y⃗₂(σ₂ → … ∀y⃗_k(σ_k → ∀y⃗_{k+1} b)))`.
#[derive(Debug, Clone)]
pub struct PiShape<'a> {
    /// Quantifier block preceding each premise, paired with the premise.
    pub premises: Vec<(Vec<&'a str>, &'a Formula)>,
    /// Quantifiers directly in front of the head atom.
    pub tail: Vec<&'a str>,
    pub head: &'a Formula,
}

impl PiShape<'_> {
    /// All top variables in binding order.
    pub fn top_variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for (vs, _) in &self.premises {
            out.extend(vs.iter().copied());
        }
        out.extend(self.tail.iter().copied());
        out
    }
}

impl Formula {
    pub fn atom(predicate: &str, args: &[&str]) -> Formula {
        Formula::Atom {
            predicate: predicate.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn prop(predicate: &str) -> Formula {
        Formula::atom(predicate, &[])
    }

    pub fn imp(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Impl(Box::new(lhs), Box::new(rhs))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    /// `forall v1 ... vk. body`, with the first variable outermost.
    pub fn forall_many<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    /// `p1 -> p2 -> ... -> target`.
    pub fn chain(premises: Vec<Formula>, target: Formula) -> Formula {
        premises
            .into_iter()
            .rev()
            .fold(target, |acc, p| Formula::imp(p, acc))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom { .. })
    }

    pub fn predicate(&self) -> Option<(&str, usize)> {
        match self {
            Formula::Atom { predicate, args } => Some((predicate, args.len())),
            _ => None,
        }
    }

    /// Free object names.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom { args, .. } => {
                for a in args {
                    if !bound.contains(&a.as_str()) {
                        out.insert(a.clone());
                    }
                }
            }
            Formula::Impl(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(v, b) => {
                bound.push(v);
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every name bound by some quantifier, in preorder, with repetitions.
    pub fn bound_vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Forall(v, _) = f {
                out.push(v.as_str());
            }
        });
        out
    }

    /// Every object name occurring anywhere, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Atom { args, .. } => out.extend(args.iter().cloned()),
            Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            Formula::Impl(..) => {}
        });
        out
    }

    /// Predicate name to arity.
    pub fn signature(&self) -> Result<BTreeMap<String, usize>> {
        let mut sig = BTreeMap::new();
        let mut err = None;
        self.walk(&mut |f| {
            if let Formula::Atom { predicate, args } = f {
                if let Err(e) = super::program::declare(&mut sig, predicate, args.len()) {
                    err.get_or_insert(e);
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(sig),
        }
    }

    pub fn max_arity(&self) -> usize {
        let mut r = 0;
        self.walk(&mut |f| {
            if let Formula::Atom { args, .. } = f {
                r = r.max(args.len());
            }
        });
        r
    }

    /// Preorder traversal.
    pub fn walk<'a, F: FnMut(&'a Formula)>(&'a self, f: &mut F) {
        f(self);
        match self {
            Formula::Atom { .. } => {}
            Formula::Impl(l, r) => {
                l.walk(f);
                r.walk(f);
            }
            Formula::Forall(_, b) => b.walk(f),
        }
    }

    /// Number of nodes of the syntax tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Number of atom occurrences.
    pub fn atom_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |f| {
            if f.is_atom() {
                n += 1
            }
        });
        n
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Simultaneous capture-avoiding substitution of free occurrences.
    pub fn substitute(&self, map: &BTreeMap<String, String>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom { predicate, args } => Formula::Atom {
                predicate: predicate.clone(),
                args: args
                    .iter()
                    .map(|a| map.get(a).cloned().unwrap_or_else(|| a.clone()))
                    .collect(),
            },
            Formula::Impl(l, r) => Formula::imp(l.substitute(map), r.substitute(map)),
            Formula::Forall(v, b) => {
                let mut inner = map.clone();
                inner.remove(v);
                let fv = b.free_vars();
                inner.retain(|k, _| fv.contains(k));
                let captures = inner.values().any(|t| t == v);
                if !captures {
                    return Formula::forall(v, b.substitute(&inner));
                }
                let mut avoid = b.names();
                avoid.extend(inner.values().cloned());
                let fresh = fresh_name(v, &avoid);
                inner.insert(v.clone(), fresh.clone());
                Formula::forall(&fresh, b.substitute(&inner))
            }
        }
    }

    /// Substitutes a single name.
    pub fn subst1(&self, var: &str, term: &str) -> Formula {
        let mut m = BTreeMap::new();
        m.insert(var.to_string(), term.to_string());
        self.substitute(&m)
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn go<'a>(a: &'a Formula, b: &'a Formula, env: &mut Vec<(&'a str, &'a str)>) -> bool {
            match (a, b) {
                (
                    Formula::Atom {
                        predicate: p,
                        args: xs,
                    },
                    Formula::Atom {
                        predicate: q,
                        args: ys,
                    },
                ) => {
                    p == q
                        && xs.len() == ys.len()
                        && xs.iter().zip(ys).all(|(x, y)| {
                            let bx = env.iter().rev().position(|(l, _)| *l == x);
                            let by = env.iter().rev().position(|(_, r)| *r == y);
                            match (bx, by) {
                                (None, None) => x == y,
                                (Some(i), Some(j)) => i == j,
                                _ => false,
                            }
                        })
                }
                (Formula::Impl(a1, a2), Formula::Impl(b1, b2)) => {
                    go(a1, b1, env) && go(a2, b2, env)
                }
                (Formula::Forall(x, a1), Formula::Forall(y, b1)) => {
                    env.push((x, y));
                    let r = go(a1, b1, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// Mints classification by quantifier polarity: Σ₁ formulas have no
    /// quantifier at a positive position and Π₁ formulas none at a negative one.
    pub fn classify(&self) -> MintsClass {
        fn scan(f: &Formula, positive: bool, pos: &mut bool, neg: &mut bool) {
            match f {
                Formula::Atom { .. } => {}
                Formula::Impl(l, r) => {
                    scan(l, !positive, pos, neg);
                    scan(r, positive, pos, neg);
                }
                Formula::Forall(_, b) => {
                    if positive {
                        *pos = true;
                    } else {
                        *neg = true;
                    }
                    scan(b, positive, pos, neg);
                }
            }
        }
        let (mut pos, mut neg) = (false, false);
        scan(self, true, &mut pos, &mut neg);
        match (pos, neg) {
            (false, false) => MintsClass::Both,
            (false, true) => MintsClass::Sigma1,
            (true, false) => MintsClass::Pi1,
            (true, true) => MintsClass::Neither,
        }
    }

    /// The rightmost atom after peeling quantifiers and premises.
    pub fn target(&self) -> &Formula {
        match self {
            Formula::Atom { .. } => self,
            Formula::Impl(_, r) => r.target(),
            Formula::Forall(_, b) => b.target(),
        }
    }

    /// Checks the class and returns the target.
    pub fn target_of(&self) -> Result<&Formula> {
        if self.classify() == MintsClass::Neither {
            return Err(Error::Unclassifiable(self.to_string()));
        }
        Ok(self.target())
    }

    /// Splits `τ₁ → … → τ_q → c` into its premises and target.
    /// Only meaningful for quantifier-free spines; `None` on a top-level `∀`.
    pub fn sigma_parts(&self) -> Option<(Vec<&Formula>, &Formula)> {
        let mut prem = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Formula::Atom { .. } => return Some((prem, cur)),
                Formula::Impl(l, r) => {
                    prem.push(&**l);
                    cur = r;
                }
                Formula::Forall(..) => return None,
            }
        }
    }

    /// Decomposes a Π₁ spine into quantifier blocks, premises and head.
    pub fn pi_shape(&self) -> PiShape<'_> {
        let mut premises = Vec::new();
        let mut vars: Vec<&str> = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Formula::Atom { .. } => {
                    return PiShape {
                        premises,
                        tail: vars,
                        head: cur,
                    }
                }
                Formula::Forall(v, b) => {
                    vars.push(v);
                    cur = b;
                }
                Formula::Impl(l, r) => {
                    premises.push((core::mem::take(&mut vars), &**l));
                    cur = r;
                }
            }
        }
    }

    /// Renames bound variables apart from the free names and from each other.
    pub fn rectify(&self) -> Formula {
        let mut avoid = self.free_vars();
        let mut used_binders = BTreeSet::new();
        let all = self.names();
        self.rectify_in(&mut avoid, &mut used_binders, &all, &BTreeMap::new())
    }

    /// Whether no free name is bound and no name is bound twice.
    pub fn is_rectified(&self) -> bool {
        let fv = self.free_vars();
        let mut seen = BTreeSet::new();
        self.bound_vars()
            .into_iter()
            .all(|v| !fv.contains(v) && seen.insert(v))
    }

    fn rectify_in(
        &self,
        free: &mut BTreeSet<String>,
        binders: &mut BTreeSet<String>,
        all: &BTreeSet<String>,
        ren: &BTreeMap<String, String>,
    ) -> Formula {
        match self {
            Formula::Atom { predicate, args } => Formula::Atom {
                predicate: predicate.clone(),
                args: args
                    .iter()
                    .map(|a| ren.get(a).cloned().unwrap_or_else(|| a.clone()))
                    .collect(),
            },
            Formula::Impl(l, r) => Formula::imp(
                l.rectify_in(free, binders, all, ren),
                r.rectify_in(free, binders, all, ren),
            ),
            Formula::Forall(v, b) => {
                let name = if !free.contains(v) && !binders.contains(v) {
                    v.clone()
                } else {
                    let mut avoid = all.clone();
                    avoid.extend(free.iter().cloned());
                    avoid.extend(binders.iter().cloned());
                    fresh_name(v, &avoid)
                };
                binders.insert(name.clone());
                let mut inner = ren.clone();
                inner.insert(v.clone(), name.clone());
                Formula::forall(&name, b.rectify_in(free, binders, all, &inner))
            }
        }
    }
}

/// `base` with the smallest numeric suffix `_k` not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '_');
    let stem = if stem.is_empty() { base } else { stem };
    (1usize..)
        .map(|k| format!("{stem}_{k}"))
        .find(|s| !avoid.contains(s))
        .expect("infinitely many candidates")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { predicate, args } => {
                f.write_str(predicate)?;
                if !args.is_empty() {
                    write!(f, "({})", args.join(","))?;
                }
                Ok(())
            }
            Formula::Impl(l, r) => {
                if l.is_atom() {
                    write!(f, "{l} -> {r}")
                } else {
                    write!(f, "({l}) -> {r}")
                }
            }
            Formula::Forall(..) => {
                f.write_str("forall")?;
                let mut cur = self;
                while let Formula::Forall(v, b) = cur {
                    write!(f, " {v}")?;
                    cur = b;
                }
                write!(f, ". {cur}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(Formula::atom("P", &["x"]).classify(), MintsClass::Both);
        assert_eq!(p("forall x. P(x) -> Q(x)").classify(), MintsClass::Pi1);
        assert_eq!(p("(forall x. P(x)) -> Q").classify(), MintsClass::Sigma1);
        assert_eq!(
            p("((forall x. P(x)) -> Q) -> forall y. R(y)").classify(),
            MintsClass::Pi1
        );
        assert_eq!(
            p("(forall x. P(x)) -> forall y. R(y)").classify(),
            MintsClass::Neither
        );
    }

    #[test]
    fn targets() {
        assert_eq!(p("P -> Q").target_of().unwrap(), &Formula::prop("Q"));
        assert_eq!(
            p("forall x. S(x) -> B(x)").target_of().unwrap(),
            &Formula::atom("B", &["x"])
        );
        assert_eq!(p("R(c)").target_of().unwrap(), &Formula::atom("R", &["c"]));
        assert!(p("(forall x. P(x)) -> forall y. R(y)").target_of().is_err());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p("P(x)").subst1("x", "c"), p("P(c)"));
        assert_eq!(
            p("forall x. P(x,y)").subst1("y", "c"),
            p("forall x. P(x,c)")
        );
        assert_eq!(p("forall x. P(x)").subst1("x", "c"), p("forall x. P(x)"));
        // Substituting the binder's own name must rename the binder.
        let g = p("forall x. P(x,y)").subst1("y", "x");
        assert!(g.alpha_eq(&p("forall z. P(z,x)")));
        assert_eq!(g.free_vars().into_iter().collect::<Vec<_>>(), ["x"]);
    }

    #[test]
    fn rectify_renames_apart() {
        let raw = Formula::imp(
            Formula::forall("x", Formula::atom("P", &["x"])),
            Formula::imp(
                Formula::forall("x", Formula::atom("Q", &["x"])),
                Formula::atom("R", &["x"]),
            ),
        );
        let r = raw.rectify();
        assert!(r.is_rectified());
        assert!(r.alpha_eq(&raw));
        assert!(!raw.is_rectified());
    }

    #[test]
    fn pi_shape_blocks() {
        let f = p("forall y1. R(y1,c2) -> forall y2. P(y1,c1) -> forall y3. S(c1,y2,y3)");
        let s = f.pi_shape();
        assert_eq!(s.premises.len(), 2);
        assert_eq!(s.premises[0].0, ["y1"]);
        assert_eq!(s.premises[1].0, ["y2"]);
        assert_eq!(s.tail, ["y3"]);
        assert_eq!(s.top_variables(), ["y1", "y2", "y3"]);
    }
}
