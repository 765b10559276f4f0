//! Compiles refutability of a Σ₁ formula into stable-model existence.
//!
//! A stable model of the emitted program describes a refutation soup: every
//! address `ξ` (a bit string of length `ℓ`) carries a disjudgment
//! `Γ_ξ ⊬ a`, with `Γ_ξ` read from the `e`/`ebar` atoms and `a` from the
//! `g_a` atom, and `a<i>` atoms record which address answers which question.
//!
//! Objects of the program are subformula occurrences `f<k>` (numbered in
//! preorder of the rectified formula), the constants of the formula, and
//! the bits `0` and `1`. Substitutions are flattened into one argument per
//! bound variable of the formula. Positions a substitution does not care
//! about hold the first constant; `full_facts` additionally emits the
//! syntax facts for every other filling of those positions.
//!
//! Predicates:
//!
//! | name | arguments | meaning |
//! |------|-----------|---------|
//! | `d<i>` | τ ψ S T U | τ is an i-th descendant of ψ and τ[U] = τ[S][T] |
//! | `s<i>_<a>` | ψ S T | the i-th subgoal of ψ[S][T] is `a` |
//! | `h_<a>` | ψ S T | the head of ψ[S][T] is `a` |
//! | `g_<a>` | ξ | the goal at ξ is `a` |
//! | `e`, `ebar` | ψ S ξ | ψ[S] is, or is not, in Γ_ξ |
//! | `q` | ψ S T ξ | ⟨ψ,S,T⟩ is asked at ξ |
//! | `a<i>`, `abar<i>` | ψ S T ξ η | η is, or is not, an i-th answer to it |
//! | `y` | ψ S T ξ | the question is answered |
//! | `f` | | contradiction |
//!
//! An atom name `<a>` is the predicate followed by its arguments, joined by
//! `_`, with `_` inside names doubled.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::asp::{find_stable_model, GroundProgram, Model};
use crate::syntax::{
    is_variable_name, Clause, Formula, GroundAtom, Literal, MintsClass, Program, DEFAULT_CONSTANT,
};
use crate::{Budget, Error, Result};

/// Default bound on emitted clauses.
pub const DEFAULT_EMISSION_CAP: usize = 10_000_000;

/// Default upper bound for the address length when none is given.
pub const DEFAULT_MAX_ADDR_LEN: usize = 4;

/// Number of clause schemas.
pub const SCHEMAS: usize = 16;

/// Marks a substitution position that does not matter.
pub const STAR: u16 = u16::MAX;

/// Constant indices per bound variable of the formula, or [`STAR`].
pub type Subst = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Atom,
    Impl(usize, usize),
    Forall(usize, usize),
}

/// Decomposition of a Π₁ occurrence
/// `ψ = ∀y⃗₁(σ₁ → ∀y⃗₂(σ₂ → ⋯ ∀y⃗_k(σ_k → ∀y⃗_{k+1} b)))`
/// with `σ_i = τ_{i1} → ⋯ → τ_{iq} → c_i`.
#[derive(Debug, Clone)]
pub struct Schema {
    pub psi: usize,
    /// Positions of the bound variables of the formula that are free in ψ.
    pub free: Vec<usize>,
    /// Positions of the top variables, in binding order.
    pub top: Vec<usize>,
    pub head: Formula,
    /// `c_i`, one per premise.
    pub subgoals: Vec<Formula>,
    /// Occurrences `τ_{ij}`, one list per premise.
    pub descendants: Vec<Vec<usize>>,
}

impl Schema {
    pub fn arity(&self) -> usize {
        self.subgoals.len()
    }
}

/// `ψ[S]` for a contextual occurrence ψ and a substitution on its free positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instance {
    pub psi: usize,
    pub subst: Subst,
    /// Id of the formula `ψ[S]` up to renaming of bound variables.
    pub key: usize,
}

/// A candidate question `⟨ψ,S,T⟩` together with everything its answers need.
#[derive(Debug, Clone)]
pub struct Question {
    pub psi: usize,
    pub s: Subst,
    pub t: Subst,
    /// The instance `ψ[S]`.
    pub inst: usize,
    /// Atom id of the target of `ψ[S][T]`.
    pub head: usize,
    /// Atom ids of `c_i[S][T]`.
    pub subgoals: Vec<usize>,
    /// Instance ids of `τ_{ij}[S][T]`.
    pub descendants: Vec<Vec<usize>>,
}

/// Everything the translation and the soup engine need to know about φ.
#[derive(Debug, Clone)]
pub struct Analysis {
    /// The rectified input.
    pub phi: Formula,
    /// Length of φ: predicate symbols, argument slots, arrows and binders.
    pub n: usize,
    /// Largest predicate arity.
    pub r: usize,
    /// Bound variables in preorder; substitution positions follow this order.
    pub vars: Vec<String>,
    /// Constants substitutions range over.
    pub constants: Vec<String>,
    /// Every subformula occurrence, in preorder.
    pub occurrences: Vec<Formula>,
    nodes: Vec<Node>,
    /// Π₁ occurrences that can enter a context, with their decomposition.
    pub schemas: BTreeMap<usize, Schema>,
    /// Premise occurrences `ψ₁ … ψ_m` of `φ = ψ₁ → ⋯ → ψ_m → a`.
    pub premises: Vec<usize>,
    /// Atom id of the target of φ.
    pub goal: usize,
    /// Closed atoms that can be goals.
    pub atoms: Vec<Formula>,
    pub instances: Vec<Instance>,
    pub questions: Vec<Question>,
    /// Representatives of the closed formulas up to alpha-conversion.
    pub keys: Vec<Formula>,
    asp_consts: Vec<String>,
    atom_tags: Vec<String>,
    atom_index: HashMap<Formula, usize>,
    inst_index: HashMap<(usize, Subst), usize>,
    question_index: HashMap<(usize, Subst, Subst), usize>,
    /// Questions per instance.
    pub questions_of: Vec<Vec<usize>>,
}

/// Number of symbols in `f`: each predicate, argument, arrow and binder.
pub fn formula_length(f: &Formula) -> usize {
    match f {
        Formula::Atom { args, .. } => 1 + args.len(),
        Formula::Impl(l, r) => 1 + formula_length(l) + formula_length(r),
        Formula::Forall(_, b) => 1 + formula_length(b),
    }
}

/// `f` with bound variables renamed by binding depth, so that two closed
/// formulas are alpha-equivalent exactly when their normal forms are equal.
pub fn alpha_normal(f: &Formula) -> Formula {
    fn go(f: &Formula, env: &mut Vec<(String, String)>) -> Formula {
        match f {
            Formula::Atom { predicate, args } => Formula::Atom {
                predicate: predicate.clone(),
                args: args
                    .iter()
                    .map(|a| {
                        env.iter()
                            .rev()
                            .find(|(x, _)| x == a)
                            .map_or_else(|| a.clone(), |(_, y)| y.clone())
                    })
                    .collect(),
            },
            Formula::Impl(l, r) => Formula::imp(go(l, env), go(r, env)),
            Formula::Forall(x, b) => {
                let y = format!("%{}", env.len());
                env.push((x.clone(), y.clone()));
                let out = Formula::forall(&y, go(b, env));
                env.pop();
                out
            }
        }
    }
    go(f, &mut Vec::new())
}

fn esc(name: &str) -> String {
    name.replace('_', "__")
}

fn atom_tag(a: &Formula) -> String {
    let Formula::Atom { predicate, args } = a else {
        unreachable!("goals are atoms")
    };
    let mut s = esc(predicate);
    for x in args {
        s.push('_');
        s.push_str(&esc(x));
    }
    s
}

fn is_reserved_object(name: &str) -> bool {
    name == "0"
        || name == "1"
        || name.starts_with("k_")
        || (name.len() > 1
            && name.starts_with('f')
            && name[1..].bytes().all(|b| b.is_ascii_digit()))
}

/// The program constant standing for formula constant `c`.
fn asp_constant(c: &str) -> String {
    if is_variable_name(c) || is_reserved_object(c) {
        format!("k_{c}")
    } else {
        c.to_string()
    }
}

/// Calls `f` with every extension of `base` on `positions` over `c` constants.
pub fn for_each_assignment(base: &Subst, positions: &[usize], c: usize, f: &mut dyn FnMut(&Subst)) {
    let mut s = base.clone();
    fn go(s: &mut Subst, positions: &[usize], c: usize, f: &mut dyn FnMut(&Subst)) {
        match positions.split_first() {
            None => f(s),
            Some((&p, rest)) => {
                for v in 0..c {
                    s[p] = v as u16;
                    go(s, rest, c, f);
                }
                s[p] = STAR;
            }
        }
    }
    if c == 0 && !positions.is_empty() {
        return;
    }
    go(&mut s, positions, c, f);
}

impl Analysis {
    fn build_nodes(&mut self, f: &Formula, var_pos: &BTreeMap<String, usize>) -> usize {
        let id = self.occurrences.len();
        self.occurrences.push(f.clone());
        self.nodes.push(Node::Atom);
        let node = match f {
            Formula::Atom { .. } => Node::Atom,
            Formula::Impl(l, r) => {
                let a = self.build_nodes(l, var_pos);
                let b = self.build_nodes(r, var_pos);
                Node::Impl(a, b)
            }
            Formula::Forall(x, b) => {
                let c = self.build_nodes(b, var_pos);
                Node::Forall(var_pos[x], c)
            }
        };
        self.nodes[id] = node;
        id
    }

    fn free_positions(&self, occ: &usize) -> Vec<usize> {
        let fv = self.occurrences[*occ].free_vars();
        (0..self.vars.len())
            .filter(|&p| fv.contains(&self.vars[p]))
            .collect()
    }

    fn schema(&self, psi: usize) -> Schema {
        let mut top = Vec::new();
        let mut subgoals = Vec::new();
        let mut descendants = Vec::new();
        let mut cur = psi;
        loop {
            match self.nodes[cur] {
                Node::Atom => break,
                Node::Forall(p, b) => {
                    top.push(p);
                    cur = b;
                }
                Node::Impl(sigma, rest) => {
                    let mut taus = Vec::new();
                    let mut s = sigma;
                    while let Node::Impl(l, r) = self.nodes[s] {
                        taus.push(l);
                        s = r;
                    }
                    subgoals.push(self.occurrences[s].clone());
                    descendants.push(taus);
                    cur = rest;
                }
            }
        }
        Schema {
            psi,
            free: self.free_positions(&psi),
            top,
            head: self.occurrences[cur].clone(),
            subgoals,
            descendants,
        }
    }

    /// `f` with the variables at assigned positions of `s` replaced by constants.
    pub fn instantiate(&self, f: &Formula, s: &Subst) -> Formula {
        let map: BTreeMap<String, String> = s
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != STAR)
            .map(|(p, &v)| (self.vars[p].clone(), self.constants[v as usize].clone()))
            .collect();
        f.substitute(&map)
    }

    fn restrict(s: &Subst, positions: &[usize]) -> Subst {
        let mut out = vec![STAR; s.len()];
        for &p in positions {
            out[p] = s[p];
        }
        out
    }

    fn intern_atom(&mut self, a: Formula) -> usize {
        if let Some(&i) = self.atom_index.get(&a) {
            return i;
        }
        let i = self.atoms.len();
        self.atom_tags.push(atom_tag(&a));
        self.atoms.push(a.clone());
        self.atom_index.insert(a, i);
        i
    }

    fn intern_key(&mut self, f: &Formula, keys: &mut HashMap<Formula, usize>) -> usize {
        let k = alpha_normal(f);
        if let Some(&i) = keys.get(&k) {
            return i;
        }
        let i = self.keys.len();
        self.keys.push(k.clone());
        keys.insert(k, i);
        i
    }

    pub fn instance_id(&self, psi: usize, s: &Subst) -> Option<usize> {
        self.inst_index.get(&(psi, s.clone())).copied()
    }

    pub fn question_id(&self, psi: usize, s: &Subst, t: &Subst) -> Option<usize> {
        self.question_index
            .get(&(psi, s.clone(), t.clone()))
            .copied()
    }

    /// Atom id of a closed atom, if it is a possible goal.
    pub fn atom_id(&self, a: &Formula) -> Option<usize> {
        self.atom_index.get(a).copied()
    }

    /// The formula `ψ[S]` of an instance.
    pub fn instance_formula(&self, i: usize) -> Formula {
        let inst = &self.instances[i];
        self.instantiate(&self.occurrences[inst.psi], &inst.subst)
    }

    /// The instances `ψ₁ … ψ_m` of the initial context.
    pub fn initial_context(&self) -> Vec<usize> {
        let none = vec![STAR; self.vars.len()];
        self.premises
            .iter()
            .map(|&p| self.inst_index[&(p, none.clone())])
            .collect()
    }

    /// The completeness bound `n^r` on the address length, valid when r ≥ 1.
    pub fn bound_addr_len(&self) -> usize {
        self.n.saturating_pow(self.r as u32)
    }

    /// Default address length: `min(n^r, 4)`, at least 1.
    pub fn default_addr_len(&self) -> usize {
        self.bound_addr_len().clamp(1, DEFAULT_MAX_ADDR_LEN)
    }

    /// Prints a substitution with `*` at positions that do not matter.
    pub fn show_subst(&self, s: &Subst) -> String {
        let parts: Vec<&str> = s
            .iter()
            .map(|&v| {
                if v == STAR {
                    "*"
                } else {
                    self.constants[v as usize].as_str()
                }
            })
            .collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses the output of [`Analysis::show_subst`].
    pub fn parse_subst(&self, text: &str) -> Result<Subst> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Invalid(format!("substitution `{text}` is not bracketed")))?;
        let parts: Vec<&str> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(str::trim).collect()
        };
        if parts.len() != self.vars.len() {
            return Err(Error::Invalid(format!(
                "substitution `{text}` has {} positions, expected {}",
                parts.len(),
                self.vars.len()
            )));
        }
        parts
            .iter()
            .map(|p| {
                if *p == "*" {
                    Ok(STAR)
                } else {
                    self.constants
                        .iter()
                        .position(|c| c == p)
                        .map(|i| i as u16)
                        .ok_or_else(|| Error::Invalid(format!("unknown constant `{p}`")))
                }
            })
            .collect()
    }

    // Program atoms.

    fn push_subst(&self, s: &Subst, out: &mut Vec<String>) {
        for &v in s {
            let v = if v == STAR { 0 } else { v as usize };
            out.push(self.asp_consts[v].clone());
        }
    }

    fn push_addr(addr: u32, len: usize, out: &mut Vec<String>) {
        for b in (0..len).rev() {
            out.push(if addr >> b & 1 == 1 { "1" } else { "0" }.to_string());
        }
    }

    fn obj(occ: usize) -> String {
        format!("f{occ}")
    }

    fn inst_args(&self, inst: usize) -> Vec<String> {
        let i = &self.instances[inst];
        let mut out = vec![Self::obj(i.psi)];
        self.push_subst(&i.subst, &mut out);
        out
    }

    fn question_args(&self, q: usize) -> Vec<String> {
        let qu = &self.questions[q];
        let mut out = vec![Self::obj(qu.psi)];
        self.push_subst(&qu.s, &mut out);
        self.push_subst(&qu.t, &mut out);
        out
    }

    pub fn e_atom(&self, inst: usize, xi: u32, len: usize) -> GroundAtom {
        let mut args = self.inst_args(inst);
        Self::push_addr(xi, len, &mut args);
        GroundAtom {
            predicate: "e".into(),
            args,
        }
    }

    pub fn ebar_atom(&self, inst: usize, xi: u32, len: usize) -> GroundAtom {
        let mut a = self.e_atom(inst, xi, len);
        a.predicate = "ebar".into();
        a
    }

    pub fn g_atom(&self, atom: usize, xi: u32, len: usize) -> GroundAtom {
        let mut args = Vec::new();
        Self::push_addr(xi, len, &mut args);
        GroundAtom {
            predicate: format!("g_{}", self.atom_tags[atom]),
            args,
        }
    }

    pub fn q_atom(&self, q: usize, xi: u32, len: usize) -> GroundAtom {
        let mut args = self.question_args(q);
        Self::push_addr(xi, len, &mut args);
        GroundAtom {
            predicate: "q".into(),
            args,
        }
    }

    pub fn y_atom(&self, q: usize, xi: u32, len: usize) -> GroundAtom {
        let mut a = self.q_atom(q, xi, len);
        a.predicate = "y".into();
        a
    }

    /// `a<i>` (or `abar<i>` when `bar`), with `i` counted from 1.
    pub fn a_atom(
        &self,
        q: usize,
        i: usize,
        xi: u32,
        eta: u32,
        len: usize,
        bar: bool,
    ) -> GroundAtom {
        let mut args = self.question_args(q);
        Self::push_addr(xi, len, &mut args);
        Self::push_addr(eta, len, &mut args);
        let predicate = if bar {
            format!("abar{i}")
        } else {
            format!("a{i}")
        };
        GroundAtom { predicate, args }
    }

    pub fn f_atom() -> GroundAtom {
        GroundAtom::nullary("f")
    }

    fn h_atom(&self, psi: usize, s: &Subst, t: &Subst, atom: usize) -> GroundAtom {
        let mut args = vec![Self::obj(psi)];
        self.push_subst(s, &mut args);
        self.push_subst(t, &mut args);
        GroundAtom {
            predicate: format!("h_{}", self.atom_tags[atom]),
            args,
        }
    }

    fn s_atom(&self, psi: usize, s: &Subst, t: &Subst, i: usize, atom: usize) -> GroundAtom {
        let mut a = self.h_atom(psi, s, t, atom);
        a.predicate = format!("s{i}_{}", self.atom_tags[atom]);
        a
    }

    fn d_atom(
        &self,
        i: usize,
        tau: usize,
        u: &Subst,
        psi: usize,
        s: &Subst,
        t: &Subst,
    ) -> GroundAtom {
        let mut args = vec![Self::obj(tau), Self::obj(psi)];
        self.push_subst(s, &mut args);
        self.push_subst(t, &mut args);
        self.push_subst(u, &mut args);
        GroundAtom {
            predicate: format!("d{i}"),
            args,
        }
    }

    /// Decodes the leading `ψ S` block of an `e`/`q`/`a<i>` atom.
    fn decode_subst(&self, args: &[String]) -> Result<Subst> {
        args.iter()
            .map(|a| {
                self.asp_consts
                    .iter()
                    .position(|c| c == a)
                    .map(|i| i as u16)
                    .ok_or_else(|| Error::InvalidModel(format!("unknown constant `{a}`")))
            })
            .collect()
    }

    fn decode_obj(&self, a: &str) -> Result<usize> {
        a.strip_prefix('f')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k < self.occurrences.len())
            .ok_or_else(|| Error::InvalidModel(format!("`{a}` is not a subformula object")))
    }

    fn decode_addr(args: &[String]) -> Result<u32> {
        let mut v = 0u32;
        for a in args {
            v = v << 1
                | match a.as_str() {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(Error::InvalidModel(format!("`{a}` is not a bit"))),
                };
        }
        Ok(v)
    }

    /// Reads an `e(ψ,S,ξ)` atom back as (instance, address).
    pub fn decode_e(&self, a: &GroundAtom, len: usize) -> Result<(usize, u32)> {
        let v = self.vars.len();
        if a.args.len() != 1 + v + len {
            return Err(Error::InvalidModel(format!("malformed atom {a}")));
        }
        let psi = self.decode_obj(&a.args[0])?;
        let s = self.decode_subst(&a.args[1..1 + v])?;
        let free = self
            .schemas
            .get(&psi)
            .ok_or_else(|| Error::InvalidModel(format!("{a}: not a context formula")))?
            .free
            .clone();
        let inst = self
            .instance_id(psi, &Self::restrict(&s, &free))
            .ok_or_else(|| Error::InvalidModel(format!("{a}: unknown instance")))?;
        Ok((inst, Self::decode_addr(&a.args[1 + v..])?))
    }

    /// Reads a `q`, `y` or `a<i>` atom back as (question, addresses).
    pub fn decode_question(&self, a: &GroundAtom, len: usize) -> Result<(usize, Vec<u32>)> {
        let v = self.vars.len();
        let rest = a
            .args
            .len()
            .checked_sub(1 + 2 * v)
            .filter(|r| *r % len.max(1) == 0);
        let Some(rest) = rest else {
            return Err(Error::InvalidModel(format!("malformed atom {a}")));
        };
        let psi = self.decode_obj(&a.args[0])?;
        let sch = self
            .schemas
            .get(&psi)
            .ok_or_else(|| Error::InvalidModel(format!("{a}: not a context formula")))?;
        let s = Self::restrict(&self.decode_subst(&a.args[1..1 + v])?, &sch.free);
        let t = Self::restrict(&self.decode_subst(&a.args[1 + v..1 + 2 * v])?, &sch.top);
        let q = self
            .question_id(psi, &s, &t)
            .ok_or_else(|| Error::InvalidModel(format!("{a}: unknown question")))?;
        let mut addrs = Vec::new();
        for k in 0..rest / len.max(1) {
            let from = 1 + 2 * v + k * len;
            addrs.push(Self::decode_addr(&a.args[from..from + len])?);
        }
        Ok((q, addrs))
    }

    /// The goal atom id and address of a `g_<a>` atom.
    pub fn decode_g(&self, a: &GroundAtom) -> Result<Option<(usize, u32)>> {
        let Some(tag) = a.predicate.strip_prefix("g_") else {
            return Ok(None);
        };
        let atom = self
            .atom_tags
            .iter()
            .position(|t| t == tag)
            .ok_or_else(|| Error::InvalidModel(format!("{a}: unknown goal")))?;
        Ok(Some((atom, Self::decode_addr(&a.args)?)))
    }
}

/// Decomposes φ into its contextual Π₁ occurrences, their instances and
/// all candidate questions.
pub fn analyze(phi: &Formula) -> Result<Analysis> {
    let class = phi.classify();
    if !class.is_sigma1() {
        return Err(Error::Unclassifiable(phi.to_string()));
    }
    phi.signature()?;
    let phi = phi.rectify();
    let mut vars: Vec<String> = Vec::new();
    for v in phi.bound_vars() {
        if !vars.iter().any(|x| x == v) {
            vars.push(v.to_string());
        }
    }
    if vars.len() >= STAR as usize {
        return Err(Error::Invalid("too many bound variables".into()));
    }
    let var_pos: BTreeMap<String, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut constants: Vec<String> = phi.free_vars().into_iter().collect();
    if constants.is_empty() {
        constants.push(DEFAULT_CONSTANT.to_string());
    }
    let asp_consts = constants.iter().map(|c| asp_constant(c)).collect();
    let mut a = Analysis {
        n: formula_length(&phi),
        r: phi.max_arity(),
        phi: phi.clone(),
        vars,
        constants,
        occurrences: Vec::new(),
        nodes: Vec::new(),
        schemas: BTreeMap::new(),
        premises: Vec::new(),
        goal: 0,
        atoms: Vec::new(),
        instances: Vec::new(),
        questions: Vec::new(),
        keys: Vec::new(),
        asp_consts,
        atom_tags: Vec::new(),
        atom_index: HashMap::new(),
        inst_index: HashMap::new(),
        question_index: HashMap::new(),
        questions_of: Vec::new(),
    };
    a.build_nodes(&phi, &var_pos);
    let mut cur = 0;
    while let Node::Impl(l, r) = a.nodes[cur] {
        a.premises.push(l);
        cur = r;
    }
    if !matches!(a.nodes[cur], Node::Atom) {
        return Err(Error::Unclassifiable(phi.to_string()));
    }
    a.goal = a.intern_atom(a.occurrences[cur].clone());

    let mut todo: Vec<usize> = a.premises.clone();
    while let Some(psi) = todo.pop() {
        if a.schemas.contains_key(&psi) {
            continue;
        }
        let sch = a.schema(psi);
        todo.extend(sch.descendants.iter().flatten().copied());
        a.schemas.insert(psi, sch);
    }

    let c = a.constants.len();
    let v = a.vars.len();
    let empty: Subst = vec![STAR; v];
    let mut keys = HashMap::new();
    let schemas: Vec<Schema> = a.schemas.values().cloned().collect();
    for sch in &schemas {
        let mut substs = Vec::new();
        for_each_assignment(&empty, &sch.free, c, &mut |s| substs.push(s.clone()));
        for s in substs {
            let f = a.instantiate(&a.occurrences[sch.psi], &s);
            let key = a.intern_key(&f, &mut keys);
            let id = a.instances.len();
            a.instances.push(Instance {
                psi: sch.psi,
                subst: s.clone(),
                key,
            });
            a.inst_index.insert((sch.psi, s), id);
        }
    }
    a.questions_of = vec![Vec::new(); a.instances.len()];
    for sch in &schemas {
        let mut ss = Vec::new();
        for_each_assignment(&empty, &sch.free, c, &mut |s| ss.push(s.clone()));
        for s in ss {
            let inst = a.inst_index[&(sch.psi, s.clone())];
            let mut ts = Vec::new();
            for_each_assignment(&empty, &sch.top, c, &mut |t| ts.push(t.clone()));
            for t in ts {
                let st: Subst = s
                    .iter()
                    .zip(&t)
                    .map(|(&x, &y)| if x == STAR { y } else { x })
                    .collect();
                let head = a.instantiate(&sch.head, &st);
                let head = a.intern_atom(head);
                let mut subgoals = Vec::new();
                let mut descendants = Vec::new();
                for (ci, taus) in sch.subgoals.iter().zip(&sch.descendants) {
                    let g = a.instantiate(ci, &st);
                    subgoals.push(a.intern_atom(g));
                    descendants.push(
                        taus.iter()
                            .map(|&tau| {
                                let u = Analysis::restrict(&st, &a.schemas[&tau].free);
                                a.inst_index[&(tau, u)]
                            })
                            .collect(),
                    );
                }
                let id = a.questions.len();
                a.question_index.insert((sch.psi, s.clone(), t.clone()), id);
                a.questions.push(Question {
                    psi: sch.psi,
                    s: s.clone(),
                    t,
                    inst,
                    head,
                    subgoals,
                    descendants,
                });
                a.questions_of[inst].push(id);
            }
        }
    }
    Ok(a)
}

/// The emitted program with its analysis.
#[derive(Debug, Clone)]
pub struct Translation {
    pub analysis: Analysis,
    pub addr_len: usize,
    pub full_facts: bool,
    pub program: Program,
    /// Clauses emitted per schema, schema `k` at index `k - 1`.
    pub counts: [usize; SCHEMAS],
}

impl Translation {
    /// Interns the (already ground) program.
    pub fn ground(&self) -> Result<GroundProgram> {
        GroundProgram::from_ground(&self.program)
    }

    pub fn addresses(&self) -> u32 {
        1u32 << self.addr_len
    }
}

struct Emitter {
    clauses: Vec<Clause>,
    counts: [usize; SCHEMAS],
    cap: usize,
}

impl Emitter {
    fn emit(
        &mut self,
        schema: usize,
        head: GroundAtom,
        pos: &[GroundAtom],
        neg: &[GroundAtom],
    ) -> Result<()> {
        if self.clauses.len() >= self.cap {
            return Err(Error::EmissionCap { cap: self.cap });
        }
        let body = pos
            .iter()
            .map(|a| Literal::pos(a.to_atom()))
            .chain(neg.iter().map(|a| Literal::neg(a.to_atom())))
            .collect();
        self.clauses.push(Clause::new(head.to_atom(), body));
        self.counts[schema - 1] += 1;
        Ok(())
    }
}

/// Emits clauses 1–16 at address length `addr_len`.
///
/// Clause 16 is written `f :- g_a(ξ), g_b(ξ), not f`, and the choice in
/// clause 12 is only made for `i` up to the number of premises of ψ.
pub fn translate(
    phi: &Formula,
    addr_len: usize,
    full_facts: bool,
    cap: usize,
) -> Result<Translation> {
    let a = analyze(phi)?;
    translate_analysis(a, addr_len, full_facts, cap)
}

pub fn translate_analysis(
    a: Analysis,
    addr_len: usize,
    full_facts: bool,
    cap: usize,
) -> Result<Translation> {
    if addr_len == 0 || addr_len > 24 {
        return Err(Error::Invalid(format!(
            "address length {addr_len} outside 1..=24"
        )));
    }
    let l = addr_len;
    let na = 1u32 << l;
    let mut em = Emitter {
        clauses: Vec::new(),
        counts: [0; SCHEMAS],
        cap,
    };
    let c = a.constants.len();
    let f = Analysis::f_atom();

    // 1–3: syntax facts.
    for q in &a.questions {
        let sch = &a.schemas[&q.psi];
        let fill = |s: &Subst, keep: &[usize], out: &mut Vec<Subst>| {
            if full_facts {
                let stars: Vec<usize> = (0..s.len()).filter(|p| !keep.contains(p)).collect();
                for_each_assignment(s, &stars, c, &mut |x| out.push(x.clone()));
            } else {
                out.push(s.clone());
            }
        };
        let mut ss = Vec::new();
        fill(&q.s, &sch.free, &mut ss);
        let mut ts = Vec::new();
        fill(&q.t, &sch.top, &mut ts);
        for (i, taus) in q.descendants.iter().enumerate() {
            for &tau in taus {
                let u = &a.instances[tau];
                let tfree = &a.schemas[&u.psi].free;
                let mut us = Vec::new();
                fill(&u.subst, tfree, &mut us);
                for s in &ss {
                    for t in &ts {
                        for uu in &us {
                            em.emit(1, a.d_atom(i + 1, u.psi, uu, q.psi, s, t), &[], &[])?;
                        }
                    }
                }
            }
        }
        for (i, &g) in q.subgoals.iter().enumerate() {
            for s in &ss {
                for t in &ts {
                    em.emit(2, a.s_atom(q.psi, s, t, i + 1, g), &[], &[])?;
                }
            }
        }
        for s in &ss {
            for t in &ts {
                em.emit(3, a.h_atom(q.psi, s, t, q.head), &[], &[])?;
            }
        }
    }

    // 4–6: the initial disjudgment at address 0.
    em.emit(4, a.g_atom(a.goal, 0, l), &[], &[])?;
    let init = a.initial_context();
    for &i in &init {
        em.emit(5, a.e_atom(i, 0, l), &[], &[])?;
    }
    let init_occ: BTreeSet<usize> = a.premises.iter().copied().collect();
    for (i, inst) in a.instances.iter().enumerate() {
        if !init_occ.contains(&inst.psi) {
            em.emit(6, a.ebar_atom(i, 0, l), &[], &[])?;
        }
    }

    // 7–9: answers are correct.
    for (qi, q) in a.questions.iter().enumerate() {
        for i in 1..=q.subgoals.len() {
            for xi in 0..na {
                for eta in 0..na {
                    let ans = a.a_atom(qi, i, xi, eta, l, false);
                    for tau in 0..a.instances.len() {
                        em.emit(
                            7,
                            a.e_atom(tau, eta, l),
                            &[ans.clone(), a.e_atom(tau, xi, l)],
                            &[],
                        )?;
                    }
                    for &tau in &q.descendants[i - 1] {
                        let u = &a.instances[tau];
                        let d = a.d_atom(i, u.psi, &u.subst, q.psi, &q.s, &q.t);
                        em.emit(8, a.e_atom(tau, eta, l), &[ans.clone(), d], &[])?;
                    }
                    let g = q.subgoals[i - 1];
                    let s = a.s_atom(q.psi, &q.s, &q.t, i, g);
                    em.emit(9, a.g_atom(g, eta, l), &[ans, s], &[])?;
                }
            }
        }
    }

    // 10–11: every address gets an environment.
    for inst in 0..a.instances.len() {
        for xi in 0..na {
            let e = a.e_atom(inst, xi, l);
            let eb = a.ebar_atom(inst, xi, l);
            em.emit(10, e.clone(), &[], core::slice::from_ref(&eb))?;
            em.emit(10, eb.clone(), &[], core::slice::from_ref(&e))?;
            em.emit(11, f.clone(), &[e, eb], core::slice::from_ref(&f))?;
        }
    }

    // 12–15: questions and their answers.
    for (qi, q) in a.questions.iter().enumerate() {
        for xi in 0..na {
            let qa = a.q_atom(qi, xi, l);
            for i in 1..=q.subgoals.len() {
                for eta in 0..na {
                    let ans = a.a_atom(qi, i, xi, eta, l, false);
                    let bar = a.a_atom(qi, i, xi, eta, l, true);
                    em.emit(
                        12,
                        ans.clone(),
                        core::slice::from_ref(&qa),
                        core::slice::from_ref(&bar),
                    )?;
                    em.emit(12, bar, core::slice::from_ref(&qa), &[ans])?;
                }
            }
            let e = a.e_atom(q.inst, xi, l);
            let h = a.h_atom(q.psi, &q.s, &q.t, q.head);
            em.emit(13, qa.clone(), &[e, h, a.g_atom(q.head, xi, l)], &[])?;
            let y = a.y_atom(qi, xi, l);
            em.emit(14, f.clone(), &[qa], &[y.clone(), f.clone()])?;
            for i in 1..=q.subgoals.len() {
                for eta in 0..na {
                    em.emit(15, y.clone(), &[a.a_atom(qi, i, xi, eta, l, false)], &[])?;
                }
            }
        }
    }

    // 16: one goal per address.
    for x in 0..a.atoms.len() {
        for y in x + 1..a.atoms.len() {
            for xi in 0..na {
                em.emit(
                    16,
                    f.clone(),
                    &[a.g_atom(x, xi, l), a.g_atom(y, xi, l)],
                    core::slice::from_ref(&f),
                )?;
            }
        }
    }

    let mut domain: BTreeSet<String> = (0..a.occurrences.len()).map(Analysis::obj).collect();
    domain.extend(a.asp_consts.iter().cloned());
    domain.insert("0".into());
    domain.insert("1".into());
    let program = Program::new(em.clauses, domain)?;
    Ok(Translation {
        analysis: a,
        addr_len,
        full_facts,
        program,
        counts: em.counts,
    })
}

/// Program text with a header recording the parameters and schema counts.
pub fn render(t: &Translation) -> String {
    let a = &t.analysis;
    let mut s = String::new();
    s.push_str("% Refutability of a Sigma1 formula as stable-model existence.\n");
    s.push_str(&format!("% formula: {}\n", a.phi));
    s.push_str(&format!(
        "% n = {}, r = {}, address length = {} (n^r = {}), substitution length = {}\n",
        a.n,
        a.r,
        t.addr_len,
        a.bound_addr_len(),
        a.vars.len()
    ));
    if !a.vars.is_empty() {
        s.push_str(&format!(
            "% substitution positions: {}\n",
            a.vars.join(", ")
        ));
    }
    let consts: Vec<String> = a
        .constants
        .iter()
        .zip(&a.asp_consts)
        .map(|(c, k)| {
            if c == k {
                c.clone()
            } else {
                format!("{c}={k}")
            }
        })
        .collect();
    s.push_str(&format!("% constants: {}\n", consts.join(", ")));
    for (k, o) in a.occurrences.iter().enumerate() {
        let mark = if a.schemas.contains_key(&k) {
            " (context)"
        } else {
            ""
        };
        s.push_str(&format!("% f{k}{mark}: {o}\n"));
    }
    let counts: Vec<String> = t
        .counts
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{c}", i + 1))
        .collect();
    s.push_str(&format!("% schema instances {}\n", counts.join(" ")));
    if t.full_facts {
        s.push_str("% syntax facts emitted for every filling of irrelevant positions\n");
    }
    s.push_str(&format!("{}", t.program));
    s
}

/// Whether φ is refutable, decided by searching a stable model of its
/// translation at address length `addr_len`. Returns the model if any.
pub fn decide_by_translation(
    phi: &Formula,
    addr_len: usize,
    cap: usize,
    budget: &dyn Budget,
) -> Result<(Translation, Option<Model>)> {
    let t = translate(phi, addr_len, false, cap)?;
    let g = t.ground()?;
    let m = find_stable_model(&g, budget)?;
    Ok((t, m))
}

/// `true` when `class` admits the translation.
pub fn accepts(class: MintsClass) -> bool {
    class.is_sigma1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::{enumerate_stable_models, is_stable};
    use crate::syntax::parse_formula;
    use crate::Unlimited;

    fn refutable(s: &str, l: usize) -> bool {
        let (_, m) = decide_by_translation(
            &parse_formula(s).unwrap(),
            l,
            DEFAULT_EMISSION_CAP,
            &Unlimited,
        )
        .unwrap();
        m.is_some()
    }

    #[test]
    fn decides_small_formulas() {
        assert!(refutable("b -> a", 1));
        assert!(!refutable("a -> a", 1));
        assert!(refutable("a", 1));
        assert!(!refutable("a -> a", 2));
        assert!(!refutable("(forall x. P(x)) -> P(c)", 2));
        assert!(refutable("P(d) -> P(c)", 1));
        assert!(!refutable("(a -> b) -> a -> b", 2));
    }

    #[test]
    fn peirce_needs_two_addresses() {
        assert!(refutable("((a -> b) -> a) -> a", 1));
    }

    #[test]
    fn chain_outgrows_one_bit() {
        // Three goals a, b, c must sit at three distinct addresses.
        let phi = "(c -> b) -> (b -> a) -> a";
        assert!(!refutable(phi, 1));
        assert!(refutable(phi, 2));
    }

    #[test]
    fn analysis_of_worked_example() {
        let phi = parse_formula("(forall y1. S(y1,c2) -> forall y2. P(y1,c1) -> R(c1,y2,y3)) -> Q")
            .unwrap();
        let a = analyze(&phi).unwrap();
        let sch = &a.schemas[&a.premises[0]];
        assert_eq!(sch.top.len(), 2);
        assert_eq!(sch.head.to_string(), "R(c1,y2,y3)");
        assert_eq!(sch.arity(), 2);
        assert!(sch.descendants.iter().all(Vec::is_empty));
        assert_eq!(a.r, 3);
        let a = analyze(&parse_formula("a -> a").unwrap()).unwrap();
        let sch = &a.schemas[&a.premises[0]];
        assert_eq!((sch.arity(), sch.head.to_string()), (0, "a".to_string()));
    }

    #[test]
    fn rejects_pi1_only() {
        assert!(matches!(
            analyze(&parse_formula("forall x. P(x)").unwrap()),
            Err(Error::Unclassifiable(_))
        ));
    }

    #[test]
    fn models_are_f_free_with_one_goal_per_address() {
        for phi in [
            "b -> a",
            "((a -> b) -> a) -> a",
            "P(d) -> (forall x. P(x) -> Q(x)) -> Q(c)",
        ] {
            let t =
                translate(&parse_formula(phi).unwrap(), 1, false, DEFAULT_EMISSION_CAP).unwrap();
            let g = t.ground().unwrap();
            for m in enumerate_stable_models(&g, Some(20), &Unlimited).unwrap() {
                assert!(!m.contains(&Analysis::f_atom()));
                let mut goals = BTreeMap::new();
                for at in &m {
                    if let Some((_, xi)) = t.analysis.decode_g(at).unwrap() {
                        *goals.entry(xi).or_insert(0) += 1;
                    }
                }
                assert!(goals.values().all(|&k| k == 1));
                assert!(is_stable(&g, &m).unwrap());
            }
        }
    }

    #[test]
    fn full_facts_agree() {
        let phi = parse_formula("(forall x. P(x) -> Q(x)) -> P(c) -> Q(d)").unwrap();
        let lazy = translate(&phi, 1, false, DEFAULT_EMISSION_CAP).unwrap();
        let full = translate(&phi, 1, true, DEFAULT_EMISSION_CAP).unwrap();
        assert!(
            full.counts[0] + full.counts[1] + full.counts[2]
                >= lazy.counts[0] + lazy.counts[1] + lazy.counts[2]
        );
        let g1 = find_stable_model(&lazy.ground().unwrap(), &Unlimited).unwrap();
        let g2 = find_stable_model(&full.ground().unwrap(), &Unlimited).unwrap();
        assert_eq!(g1.is_some(), g2.is_some());
    }

    #[test]
    fn rendered_program_parses_back() {
        let t = translate(
            &parse_formula("(forall x. P(x)) -> P(x)").unwrap(),
            1,
            false,
            DEFAULT_EMISSION_CAP,
        )
        .unwrap();
        let text = render(&t);
        let p = crate::syntax::parse_program(&text).unwrap();
        assert_eq!(p.clauses, t.program.clauses);
        // the free name `x` is a constant of the formula, renamed for the program
        assert!(text.contains("k_x"));
    }

    #[test]
    fn emission_cap() {
        let phi = parse_formula("((a -> b) -> a) -> a").unwrap();
        assert!(matches!(
            translate(&phi, 3, false, 50),
            Err(Error::EmissionCap { cap: 50 })
        ));
    }

    #[test]
    fn alpha_normal_identifies_renamings() {
        let a = parse_formula("forall x. P(x) -> Q(x)").unwrap();
        let b = parse_formula("forall y. P(y) -> Q(y)").unwrap();
        assert_eq!(alpha_normal(&a), alpha_normal(&b));
        assert_ne!(
            alpha_normal(&a),
            alpha_normal(&parse_formula("forall y. P(y) -> Q(c)").unwrap())
        );
    }
}
