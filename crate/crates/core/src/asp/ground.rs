use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use hashbrown::{HashMap, HashSet};

use crate::syntax::{for_each_tuple, Atom, Clause, GroundAtom, Literal, Program, Term};
use crate::{Error, Result};

/// Head, positive body and predicate-tagged negative body as value tuples.
type RawInstance = (Vec<u32>, Vec<Vec<u32>>, Vec<(usize, Vec<u32>)>);

/// Default bound on the number of ground clauses.
pub const DEFAULT_GROUNDING_CAP: usize = 1_000_000;

/// A finite set of positive ground atoms.
pub type Model = BTreeSet<GroundAtom>;

/// A ground clause over interned atom ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundClause {
    pub head: u32,
    pub pos: Vec<u32>,
    pub neg: Vec<u32>,
}

/// Ground instances of a program, with atoms interned as dense ids.
///
/// Only atoms that occur in some clause are guaranteed to be interned; the
/// Herbrand base itself is described by the domain and signature.
#[derive(Debug, Clone)]
pub struct GroundProgram {
    domain: Vec<String>,
    signature: BTreeMap<String, usize>,
    atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, u32>,
    pub clauses: Vec<GroundClause>,
}

impl GroundProgram {
    fn empty(p: &Program) -> Self {
        GroundProgram {
            domain: p.domain.iter().cloned().collect(),
            signature: p.signature.clone(),
            atoms: Vec::new(),
            index: HashMap::new(),
            clauses: Vec::new(),
        }
    }

    pub fn intern(&mut self, a: GroundAtom) -> u32 {
        if let Some(&i) = self.index.get(&a) {
            return i;
        }
        let i = self.atoms.len() as u32;
        self.atoms.push(a.clone());
        self.index.insert(a, i);
        i
    }

    pub fn id(&self, a: &GroundAtom) -> Option<u32> {
        self.index.get(a).copied()
    }

    pub fn atom(&self, id: u32) -> &GroundAtom {
        &self.atoms[id as usize]
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn signature(&self) -> &BTreeMap<String, usize> {
        &self.signature
    }

    /// Whether `a` belongs to the Herbrand base.
    pub fn in_base(&self, a: &GroundAtom) -> bool {
        self.signature.get(&a.predicate) == Some(&a.args.len())
            && a.args.iter().all(|c| self.domain.binary_search(c).is_ok())
    }

    pub fn base_size(&self) -> usize {
        let d = self.domain.len();
        self.signature
            .values()
            .map(|&k| d.saturating_pow(k as u32))
            .fold(0usize, usize::saturating_add)
    }

    /// The Herbrand base in sorted order.
    pub fn base(&self) -> Vec<GroundAtom> {
        let consts: Vec<&str> = self.domain.iter().map(String::as_str).collect();
        let mut out = Vec::new();
        for (p, &k) in &self.signature {
            for_each_tuple(&consts, k, |args| out.push(GroundAtom::new(p, args)));
        }
        out
    }

    /// Indicator vector of `m` over interned ids.
    ///
    /// The flag is true when `m` has base atoms that occur in no clause; such
    /// atoms are never derivable.
    pub fn mask(&self, m: &Model) -> Result<(Vec<bool>, bool)> {
        let mut v = vec![false; self.atoms.len()];
        let mut stray = false;
        for a in m {
            match self.id(a) {
                Some(i) => v[i as usize] = true,
                None if self.in_base(a) => stray = true,
                None => {
                    return Err(Error::InvalidModel(alloc::format!(
                        "atom `{a}` is not in the Herbrand base"
                    )))
                }
            }
        }
        Ok((v, stray))
    }

    pub fn model_of(&self, v: &[bool]) -> Model {
        v.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.atoms[i].clone())
            .collect()
    }

    /// Clause indices grouped by head atom.
    pub fn clauses_by_head(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.atoms.len()];
        for (k, c) in self.clauses.iter().enumerate() {
            out[c.head as usize].push(k);
        }
        out
    }

    pub fn clause(&self, c: &GroundClause) -> Clause {
        let at = |i: u32| self.atoms[i as usize].to_atom();
        let mut body: Vec<Literal> = c.pos.iter().map(|&i| Literal::pos(at(i))).collect();
        body.extend(c.neg.iter().map(|&i| Literal::neg(at(i))));
        Clause::new(at(c.head), body)
    }

    /// The clauses as program text, one per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.clauses {
            let _ = writeln!(s, "{}", self.clause(c));
        }
        s
    }

    /// A copy with the given clauses over the same atom table.
    pub fn with_clauses(&self, clauses: Vec<GroundClause>) -> GroundProgram {
        GroundProgram {
            domain: self.domain.clone(),
            signature: self.signature.clone(),
            atoms: self.atoms.clone(),
            index: self.index.clone(),
            clauses,
        }
    }
}

impl GroundProgram {
    /// Interns a program whose clauses are already ground, without
    /// enumerating the base. Atoms get ids in order of first occurrence.
    pub fn from_ground(p: &Program) -> Result<GroundProgram> {
        let mut g = GroundProgram::empty(p);
        let empty = BTreeMap::new();
        for c in &p.clauses {
            if !c.variables().is_empty() {
                return Err(Error::Invalid(alloc::format!("clause `{c}` is not ground")));
            }
            let head = g.intern(c.head.ground(&empty));
            let pos = c
                .positive_body()
                .map(|a| g.intern(a.ground(&empty)))
                .collect();
            let neg = c
                .negative_body()
                .map(|a| g.intern(a.ground(&empty)))
                .collect();
            g.clauses.push(GroundClause { head, pos, neg });
        }
        Ok(g)
    }
}

/// All substitution instances of all clauses over the domain.
///
/// The base is interned first, in sorted order, so ids agree with
/// [`GroundProgram::base`].
pub fn ground(p: &Program, cap: usize) -> Result<GroundProgram> {
    let d = p.domain.len();
    let mut total = 0usize;
    for c in &p.clauses {
        total = total.saturating_add(d.saturating_pow(c.variables().len() as u32));
    }
    if total > cap {
        return Err(Error::GroundingCap { cap });
    }
    let mut g = GroundProgram::empty(p);
    for a in g.base() {
        g.intern(a);
    }
    let domain = g.domain.clone();
    let consts: Vec<&str> = domain.iter().map(String::as_str).collect();
    for c in &p.clauses {
        let vars = c.variables();
        for_each_tuple(&consts, vars.len(), |vals| {
            let binding: BTreeMap<&str, &str> =
                vars.iter().copied().zip(vals.iter().copied()).collect();
            let head = g.intern(c.head.ground(&binding));
            let pos = c
                .positive_body()
                .map(|a| g.intern(a.ground(&binding)))
                .collect();
            let neg = c
                .negative_body()
                .map(|a| g.intern(a.ground(&binding)))
                .collect();
            g.clauses.push(GroundClause { head, pos, neg });
        });
    }
    Ok(g)
}

#[derive(Clone, Copy)]
enum Arg {
    Const(u32),
    Var(usize),
}

struct CAtom {
    pred: usize,
    args: Vec<Arg>,
}

struct CClause {
    head: CAtom,
    pos: Vec<CAtom>,
    neg: Vec<CAtom>,
    nvars: usize,
}

/// Facts per predicate, in insertion order, with a per-argument index.
struct FactStore {
    facts: Vec<Vec<Vec<u32>>>,
    seen: HashSet<(usize, Vec<u32>)>,
    index: HashMap<(usize, usize, u32), Vec<u32>>,
}

impl FactStore {
    fn insert(&mut self, pred: usize, args: Vec<u32>) -> bool {
        if !self.seen.insert((pred, args.clone())) {
            return false;
        }
        let idx = self.facts[pred].len() as u32;
        for (k, &c) in args.iter().enumerate() {
            self.index.entry((pred, k, c)).or_default().push(idx);
        }
        self.facts[pred].push(args);
        true
    }

    fn contains(&self, pred: usize, args: &[u32]) -> bool {
        self.seen.contains(&(pred, args.to_vec()))
    }
}

struct Compiled {
    preds: Vec<(String, usize)>,
    consts: Vec<String>,
    clauses: Vec<CClause>,
}

fn compile(p: &Program) -> Compiled {
    let preds: Vec<(String, usize)> = p.signature.iter().map(|(k, &v)| (k.clone(), v)).collect();
    let consts: Vec<String> = p.domain.iter().cloned().collect();
    let pid = |name: &str| {
        preds
            .binary_search_by(|(n, _)| n.as_str().cmp(name))
            .unwrap()
    };
    let cid = |name: &str| consts.binary_search_by(|n| n.as_str().cmp(name)).unwrap() as u32;
    let clauses = p
        .clauses
        .iter()
        .map(|c| {
            let vars = c.variables();
            let conv = |a: &Atom| CAtom {
                pred: pid(&a.predicate),
                args: a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Const(k) => Arg::Const(cid(k)),
                        Term::Var(v) => Arg::Var(vars.iter().position(|w| w == v).unwrap()),
                    })
                    .collect(),
            };
            CClause {
                head: conv(&c.head),
                pos: c.positive_body().map(conv).collect(),
                neg: c.negative_body().map(conv).collect(),
                nvars: vars.len(),
            }
        })
        .collect();
    Compiled {
        preds,
        consts,
        clauses,
    }
}

/// Enumerates all extensions of `binding` matching `atoms[order[k..]]`
/// against facts whose position lies in `ranges[i]`.
fn join(
    store: &FactStore,
    atoms: &[CAtom],
    order: &[usize],
    ranges: &[(u32, u32)],
    binding: &mut Vec<Option<u32>>,
    f: &mut dyn FnMut(&[Option<u32>]) -> bool,
) -> bool {
    let Some((&i, rest)) = order.split_first() else {
        return f(binding);
    };
    let atom = &atoms[i];
    let (lo, hi) = ranges[i];
    if lo >= hi {
        return true;
    }
    // Pick the most selective bound argument.
    let mut best: Option<&Vec<u32>> = None;
    for (k, a) in atom.args.iter().enumerate() {
        let val = match *a {
            Arg::Const(c) => Some(c),
            Arg::Var(v) => binding[v],
        };
        if let Some(c) = val {
            match store.index.get(&(atom.pred, k, c)) {
                None => return true,
                Some(list) => {
                    if best.is_none_or(|b| list.len() < b.len()) {
                        best = Some(list);
                    }
                }
            }
        }
    }
    let facts = &store.facts[atom.pred];
    let mut visit = |idx: u32, binding: &mut Vec<Option<u32>>| -> bool {
        let fact = &facts[idx as usize];
        let mut newly = Vec::new();
        let mut ok = true;
        for (a, &c) in atom.args.iter().zip(fact) {
            match *a {
                Arg::Const(k) => {
                    if k != c {
                        ok = false;
                        break;
                    }
                }
                Arg::Var(v) => match binding[v] {
                    Some(b) if b != c => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        binding[v] = Some(c);
                        newly.push(v);
                    }
                },
            }
        }
        let cont = if ok {
            join(store, atoms, rest, ranges, binding, f)
        } else {
            true
        };
        for v in newly {
            binding[v] = None;
        }
        cont
    };
    match best {
        Some(list) => {
            let start = list.partition_point(|&x| x < lo);
            for &idx in &list[start..] {
                if idx >= hi {
                    break;
                }
                if !visit(idx, binding) {
                    return false;
                }
            }
        }
        None => {
            for idx in lo..hi {
                if !visit(idx, binding) {
                    return false;
                }
            }
        }
    }
    true
}

/// Calls `f` for every total extension of `binding` over `n` constants.
fn complete(binding: &mut [Option<u32>], n: u32, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    let free: Vec<usize> = (0..binding.len())
        .filter(|&v| binding[v].is_none())
        .collect();
    let mut vals: Vec<u32> = binding.iter().map(|b| b.unwrap_or(0)).collect();
    if n == 0 && !free.is_empty() {
        return true;
    }
    loop {
        if !f(&vals) {
            return false;
        }
        let mut k = free.len();
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            vals[free[k]] += 1;
            if vals[free[k]] < n {
                break;
            }
            vals[free[k]] = 0;
        }
    }
}

fn instantiate(a: &CAtom, vals: &[u32]) -> Vec<u32> {
    a.args
        .iter()
        .map(|x| match *x {
            Arg::Const(c) => c,
            Arg::Var(v) => vals[v],
        })
        .collect()
}

/// Grounds only the instances whose positive body can possibly be derived.
///
/// A ground atom is possibly derivable when it is the head of an instance
/// whose positive body atoms are all possibly derivable, ignoring negation.
/// Instances outside that set can never fire, so they are skipped, and
/// negative literals over atoms outside it are always true and are dropped.
/// The stable models are exactly those of [`ground`].
pub fn ground_relevant(p: &Program, cap: usize) -> Result<GroundProgram> {
    let cp = compile(p);
    let n = cp.consts.len() as u32;
    let mut store = FactStore {
        facts: vec![Vec::new(); cp.preds.len()],
        seen: HashSet::new(),
        index: HashMap::new(),
    };
    let mut count = 0usize;
    let mut overflow = false;

    // Facts and rules with empty positive body seed the fixpoint.
    for c in &cp.clauses {
        if !c.pos.is_empty() {
            continue;
        }
        let mut binding = vec![None; c.nvars];
        complete(&mut binding, n, &mut |vals| {
            if store.insert(c.head.pred, instantiate(&c.head, vals)) {
                count += 1;
            }
            count <= cap
        });
        if count > cap {
            return Err(Error::GroundingCap { cap });
        }
    }

    let mut old: Vec<u32> = vec![0; cp.preds.len()];
    loop {
        let cur: Vec<u32> = store.facts.iter().map(|f| f.len() as u32).collect();
        if cur == old {
            break;
        }
        let mut fresh: Vec<(usize, Vec<u32>)> = Vec::new();
        for c in &cp.clauses {
            let k = c.pos.len();
            for j in 0..k {
                let pj = c.pos[j].pred;
                if old[pj] == cur[pj] {
                    continue;
                }
                let ranges: Vec<(u32, u32)> = (0..k)
                    .map(|i| {
                        let q = c.pos[i].pred;
                        match i.cmp(&j) {
                            core::cmp::Ordering::Less => (0, old[q]),
                            core::cmp::Ordering::Equal => (old[q], cur[q]),
                            core::cmp::Ordering::Greater => (0, cur[q]),
                        }
                    })
                    .collect();
                let mut order = vec![j];
                order.extend((0..k).filter(|&i| i != j));
                let mut binding = vec![None; c.nvars];
                join(&store, &c.pos, &order, &ranges, &mut binding, &mut |b| {
                    let mut b = b.to_vec();
                    complete(&mut b, n, &mut |vals| {
                        let args = instantiate(&c.head, vals);
                        if !store.contains(c.head.pred, &args) {
                            fresh.push((c.head.pred, args));
                        }
                        fresh.len() <= cap
                    });
                    if fresh.len() > cap {
                        overflow = true;
                    }
                    !overflow
                });
                if overflow {
                    return Err(Error::GroundingCap { cap });
                }
            }
        }
        old = cur;
        for (pred, args) in fresh {
            if store.insert(pred, args) {
                count += 1;
            }
        }
        if count > cap {
            return Err(Error::GroundingCap { cap });
        }
    }

    let mut g = GroundProgram::empty(p);
    let mut ids: HashMap<(usize, Vec<u32>), u32> = HashMap::new();
    let mut intern = |g: &mut GroundProgram, pred: usize, args: Vec<u32>| -> u32 {
        *ids.entry((pred, args)).or_insert_with_key(|(pred, args)| {
            let names: Vec<&str> = args
                .iter()
                .map(|&c| cp.consts[c as usize].as_str())
                .collect();
            g.intern(GroundAtom::new(&cp.preds[*pred].0, &names))
        })
    };
    let mut emitted = 0usize;
    for c in &cp.clauses {
        let order: Vec<usize> = (0..c.pos.len()).collect();
        let ranges: Vec<(u32, u32)> = c
            .pos
            .iter()
            .map(|a| (0, store.facts[a.pred].len() as u32))
            .collect();
        let mut binding = vec![None; c.nvars];
        let mut out: Vec<RawInstance> = Vec::new();
        join(&store, &c.pos, &order, &ranges, &mut binding, &mut |b| {
            let mut b = b.to_vec();
            complete(&mut b, n, &mut |vals| {
                let head = instantiate(&c.head, vals);
                let pos = c.pos.iter().map(|a| instantiate(a, vals)).collect();
                let neg = c
                    .neg
                    .iter()
                    .map(|a| (a.pred, instantiate(a, vals)))
                    .filter(|(q, args)| store.contains(*q, args))
                    .collect();
                out.push((head, pos, neg));
                emitted += 1;
                emitted <= cap
            });
            emitted <= cap
        });
        if emitted > cap {
            return Err(Error::GroundingCap { cap });
        }
        for (head, pos, neg) in out {
            let h = intern(&mut g, c.head.pred, head);
            let pos = pos
                .into_iter()
                .zip(&c.pos)
                .map(|(args, a)| intern(&mut g, a.pred, args))
                .collect();
            let neg = neg
                .into_iter()
                .map(|(q, args)| intern(&mut g, q, args))
                .collect();
            g.clauses.push(GroundClause { head: h, pos, neg });
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;
    use alloc::string::ToString;

    #[test]
    fn ground_examples() {
        let p = parse_program("p(x) :- not q(x). #domain c.").unwrap();
        let g = ground(&p, DEFAULT_GROUNDING_CAP).unwrap();
        assert_eq!(g.clauses.len(), 1);
        assert_eq!(g.render(), "p(c) :- not q(c).\n");

        let p = parse_program("#domain c, d. p(x,y) :- q(x).").unwrap();
        assert_eq!(ground(&p, DEFAULT_GROUNDING_CAP).unwrap().clauses.len(), 4);

        let p = parse_program("#domain c.").unwrap();
        let g = ground(&p, DEFAULT_GROUNDING_CAP).unwrap();
        assert!(g.clauses.is_empty());
    }

    #[test]
    fn grounding_cap() {
        let p = parse_program("#domain a,b,c. p(x,y,z).").unwrap();
        assert_eq!(ground(&p, 26).unwrap_err(), Error::GroundingCap { cap: 26 });
        assert!(ground(&p, 27).is_ok());
    }

    #[test]
    fn relevant_grounding_prunes() {
        let p = parse_program(
            "#domain a, b, c. e(a,b). e(b,c). t(x,y) :- e(x,y). t(x,z) :- t(x,y), e(y,z). \
             u(x) :- t(x,y), not v(y). v(x) :- not w(x).",
        )
        .unwrap();
        let g = ground_relevant(&p, DEFAULT_GROUNDING_CAP).unwrap();
        let heads: BTreeSet<String> = g
            .clauses
            .iter()
            .map(|c| g.atom(c.head).to_string())
            .collect();
        assert!(heads.contains("t(a,c)"));
        assert!(!heads.contains("t(c,a)"));
        // `w` is never derivable, so its negations vanish.
        assert!(g
            .clauses
            .iter()
            .filter(|c| g.atom(c.head).predicate == "v")
            .all(|c| c.neg.is_empty()));
    }
}
