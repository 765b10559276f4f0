use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::term::{Environment, ProofTerm};
use crate::syntax::{fresh_name, Formula, DEFAULT_CONSTANT};
use crate::{Budget, Error, Result};

/// Default bound on the number of judgments a single search may visit.
pub const DEFAULT_JUDGMENT_CAP: usize = 1 << 21;

/// Counters reported by a finished search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub judgments: usize,
    pub formulas: usize,
    pub contexts: usize,
}

/// `σ[T] = τ₁ → … → τ_q → c`, already interned.
#[derive(Debug)]
struct Premise {
    taus: Vec<u32>,
    goal: u32,
}

/// A Π₁ formula in spine form with its top variables numbered.
#[derive(Debug)]
struct Shape {
    vars: Vec<String>,
    /// Premises with the number of top variables bound before each.
    premises: Vec<(usize, Formula)>,
    head_pred: u32,
    /// For each head argument, the top variable it names, if any.
    head_args: Vec<core::result::Result<usize, String>>,
}

const UNRELATED: usize = usize::MAX;

/// Saturated context id and the steps that produced it.
type Saturation = (u32, Arc<[Step]>);

/// One eager rule application made while saturating a context.
struct Step {
    psi: u32,
    vals: Vec<u32>,
    prem: Arc<Vec<Premise>>,
    /// The premise `τ⃗ → c` that extends the context; the others are atoms of it.
    open: usize,
}

enum Status {
    Proved(Arc<ProofTerm>),
    Failed,
    /// On the current search path at this depth.
    Open(usize),
    /// Failed under the assumption that an open judgment at this depth fails.
    Provisional(usize),
}

/// Memoized proof search for judgments `Γ ⊢ c` with Π₁ context and atomic goal.
///
/// Judgments are explored depth first. A judgment met again while still
/// open counts as failed for that branch. Failures are cached for good only
/// once every open judgment they relied on has itself failed, so the cache
/// agrees with the least fixpoint of the generation rule.
pub struct Prover<'b> {
    budget: &'b dyn Budget,
    cap: usize,
    pool: Vec<String>,
    formulas: Vec<Formula>,
    formula_ids: HashMap<Formula, u32>,
    shapes: Vec<Option<Arc<Shape>>>,
    names: Vec<Option<String>>,
    prefix: String,
    predicates: HashMap<(String, usize), u32>,
    contexts: Vec<Arc<[u32]>>,
    /// Membership bitsets of `contexts`.
    bits: Vec<Arc<[u64]>>,
    /// Per goal, contexts in which it definitively failed (maximal ones only).
    failed: HashMap<u32, Vec<u32>>,
    /// Per goal, contexts in which it was proved (minimal ones only).
    proved: HashMap<u32, Vec<(u32, Arc<ProofTerm>)>>,
    context_ids: HashMap<Arc<[u32]>, u32>,
    memo: HashMap<(u32, u32), Status>,
    provisional: Vec<(u32, u32)>,
    instances: HashMap<(u32, Vec<u32>), Arc<Vec<Premise>>>,
    saturated: HashMap<(u32, u32), Saturation>,
    visited: usize,
}

impl<'b> Prover<'b> {
    /// Prepares a search over `env` with instantiations drawn from the free
    /// names of `env` and `goal`, or from one fresh constant if there are none.
    pub fn new(
        env: &Environment,
        goal: &Formula,
        cap: usize,
        budget: &'b dyn Budget,
    ) -> Result<Self> {
        for f in env.values() {
            if !f.classify().is_pi1() {
                return Err(Error::Unclassifiable(format!(
                    "context formula {f} is not in Π₁"
                )));
            }
        }
        if !goal.classify().is_sigma1() {
            return Err(Error::Unclassifiable(format!("goal {goal} is not in Σ₁")));
        }
        let mut pool: BTreeSet<String> = goal.free_vars();
        let mut all_names = goal.names();
        for f in env.values() {
            pool.extend(f.free_vars());
            all_names.extend(f.names());
        }
        if pool.is_empty() {
            let c = if all_names.contains(DEFAULT_CONSTANT) {
                fresh_name(DEFAULT_CONSTANT, &all_names)
            } else {
                DEFAULT_CONSTANT.to_string()
            };
            pool.insert(c);
        }
        let prefix = ["X", "H", "Y", "Z"]
            .iter()
            .map(|p| p.to_string())
            .chain((0..).map(|k| format!("X{k}x")))
            .find(|p| {
                !env.keys().any(|k| {
                    k.strip_prefix(p.as_str())
                        .is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
                })
            })
            .expect("some prefix is free");
        let mut p = Prover {
            budget,
            cap,
            pool: pool.into_iter().collect(),
            formulas: Vec::new(),
            formula_ids: HashMap::new(),
            shapes: Vec::new(),
            names: Vec::new(),
            prefix,
            predicates: HashMap::new(),
            contexts: Vec::new(),
            bits: Vec::new(),
            failed: HashMap::new(),
            proved: HashMap::new(),
            context_ids: HashMap::new(),
            memo: HashMap::new(),
            provisional: Vec::new(),
            instances: HashMap::new(),
            saturated: HashMap::new(),
            visited: 0,
        };
        for (x, f) in env {
            let id = p.intern(f.rectify());
            if p.names[id as usize].is_none() {
                p.names[id as usize] = Some(x.clone());
            }
        }
        Ok(p)
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            judgments: self.visited,
            formulas: self.formulas.len(),
            contexts: self.contexts.len(),
        }
    }

    /// Searches for a long normal proof of `goal` from the environment.
    ///
    /// The premises of a Σ₁ goal are abstracted first, so the search proper
    /// only ever faces atomic goals.
    pub fn prove(&mut self, env: &Environment, goal: &Formula) -> Result<Option<ProofTerm>> {
        let goal = goal.rectify();
        let (taus, target) = goal
            .sigma_parts()
            .ok_or_else(|| Error::Unclassifiable(format!("goal {goal} is not in Σ₁")))?;
        let mut ctx: Vec<u32> = Vec::new();
        for f in env.values() {
            ctx.push(self.intern(f.rectify()));
        }
        let tau_ids: Vec<u32> = taus.iter().map(|t| self.intern((*t).clone())).collect();
        ctx.extend(tau_ids.iter().copied());
        ctx.sort_unstable();
        ctx.dedup();
        let ctx = self.context(ctx);
        let c = self.intern(target.clone());
        let (found, _) = self.solve(ctx, c, 0)?;
        Ok(found.map(|body| {
            let body = Arc::unwrap_or_clone(body);
            self.abstract_over(&tau_ids, body)
        }))
    }

    fn intern(&mut self, f: Formula) -> u32 {
        if let Some(&id) = self.formula_ids.get(&f) {
            return id;
        }
        let id = self.formulas.len() as u32;
        self.formula_ids.insert(f.clone(), id);
        self.formulas.push(f);
        self.shapes.push(None);
        self.names.push(None);
        id
    }

    fn name(&self, id: u32) -> String {
        match &self.names[id as usize] {
            Some(n) => n.clone(),
            None => format!("{}{id}", self.prefix),
        }
    }

    fn predicate(&mut self, name: &str, arity: usize) -> u32 {
        let n = self.predicates.len() as u32;
        *self
            .predicates
            .entry((name.to_string(), arity))
            .or_insert(n)
    }

    fn shape(&mut self, id: u32) -> Arc<Shape> {
        if let Some(s) = &self.shapes[id as usize] {
            return s.clone();
        }
        let f = self.formulas[id as usize].clone();
        let ps = f.pi_shape();
        let vars: Vec<String> = ps.top_variables().iter().map(|v| v.to_string()).collect();
        let mut premises = Vec::new();
        let mut bound = 0;
        for (vs, sigma) in &ps.premises {
            bound += vs.len();
            premises.push((bound, (*sigma).clone()));
        }
        let Formula::Atom { predicate, args } = ps.head else {
            unreachable!("pi_shape ends in an atom")
        };
        let head_pred = self.predicate(predicate, args.len());
        let head_args = args
            .iter()
            .map(|a| match vars.iter().rposition(|v| v == a) {
                Some(k) => Ok(k),
                None => Err(a.clone()),
            })
            .collect();
        let s = Arc::new(Shape {
            vars,
            premises,
            head_pred,
            head_args,
        });
        self.shapes[id as usize] = Some(s.clone());
        s
    }

    fn context(&mut self, members: Vec<u32>) -> u32 {
        if let Some(&id) = self.context_ids.get(members.as_slice()) {
            return id;
        }
        let id = self.contexts.len() as u32;
        let words = members.last().map_or(0, |&m| m as usize / 64 + 1);
        let mut b = vec![0u64; words];
        for &m in &members {
            b[m as usize / 64] |= 1 << (m % 64);
        }
        self.bits.push(b.into());
        let arc: Arc<[u32]> = members.into();
        self.contexts.push(arc.clone());
        self.context_ids.insert(arc, id);
        id
    }

    fn extend(&mut self, ctx: u32, extra: &[u32]) -> u32 {
        let base = &self.contexts[ctx as usize];
        if extra.iter().all(|e| base.binary_search(e).is_ok()) {
            return ctx;
        }
        let mut v: Vec<u32> = base.to_vec();
        v.extend_from_slice(extra);
        v.sort_unstable();
        v.dedup();
        self.context(v)
    }

    /// Full assignments of the top variables of `psi` whose head is `goal`,
    /// in lexicographic order over the constant pool.
    fn assignments(&mut self, psi: u32, goal: u32) -> Vec<Vec<u32>> {
        let shape = self.shape(psi);
        let Formula::Atom { args, .. } = &self.formulas[goal as usize] else {
            return Vec::new();
        };
        let mut fixed: Vec<Option<u32>> = vec![None; shape.vars.len()];
        for (h, g) in shape.head_args.iter().zip(args) {
            match h {
                Err(c) => {
                    if c != g {
                        return Vec::new();
                    }
                }
                Ok(k) => {
                    let Ok(idx) = self.pool.binary_search(g) else {
                        return Vec::new();
                    };
                    let idx = idx as u32;
                    match fixed[*k] {
                        Some(prev) if prev != idx => return Vec::new(),
                        _ => fixed[*k] = Some(idx),
                    }
                }
            }
        }
        let free: Vec<usize> = (0..fixed.len()).filter(|&k| fixed[k].is_none()).collect();
        let base: Vec<u32> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        let n = self.pool.len() as u32;
        let mut out = Vec::new();
        let mut cur = base;
        loop {
            out.push(cur.clone());
            let mut i = free.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                let k = free[i];
                cur[k] += 1;
                if cur[k] < n {
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    fn instantiate(&mut self, psi: u32, vals: &[u32]) -> Result<Arc<Vec<Premise>>> {
        let key = (psi, vals.to_vec());
        if let Some(p) = self.instances.get(&key) {
            return Ok(p.clone());
        }
        let shape = self.shape(psi);
        let map = shape
            .vars
            .iter()
            .zip(vals)
            .map(|(v, &c)| (v.clone(), self.pool[c as usize].clone()))
            .collect();
        let mut out = Vec::with_capacity(shape.premises.len());
        for (_, sigma) in &shape.premises {
            let inst = sigma.substitute(&map);
            let (taus, c) = inst
                .sigma_parts()
                .ok_or_else(|| Error::Unclassifiable(format!("premise {inst} is not in Σ₁")))?;
            let taus = taus.into_iter().map(|t| self.intern(t.clone())).collect();
            let goal = self.intern(c.clone());
            out.push(Premise { taus, goal });
        }
        let out = Arc::new(out);
        self.instances.insert(key, out.clone());
        Ok(out)
    }

    fn abstract_over(&self, taus: &[u32], body: ProofTerm) -> ProofTerm {
        taus.iter().rev().fold(body, |acc, &t| {
            ProofTerm::abs(&self.name(t), self.formulas[t as usize].clone(), acc)
        })
    }

    fn assemble(
        &self,
        psi: u32,
        shape: &Shape,
        vals: &[u32],
        prem: &[Premise],
        args: Vec<Arc<ProofTerm>>,
    ) -> ProofTerm {
        let mut t = ProofTerm::Var(self.name(psi));
        let mut next = 0;
        for ((bound, _), (p, n)) in shape.premises.iter().zip(prem.iter().zip(args)) {
            while next < *bound {
                t = ProofTerm::obj_app(t, &self.pool[vals[next] as usize]);
                next += 1;
            }
            let arg = if p.taus.is_empty() {
                n
            } else {
                Arc::new(self.abstract_over(&p.taus, Arc::unwrap_or_clone(n)))
            };
            t = ProofTerm::App(Arc::new(t), arg);
        }
        while next < vals.len() {
            t = ProofTerm::obj_app(t, &self.pool[vals[next] as usize]);
            next += 1;
        }
        t
    }

    fn subset(&self, a: u32, b: u32) -> bool {
        let (a, b) = (&self.bits[a as usize], &self.bits[b as usize]);
        a.iter()
            .enumerate()
            .all(|(i, w)| w & !b.get(i).copied().unwrap_or(0) == 0)
    }

    /// A known answer for `goal` in a larger (failure) or smaller (proof) context.
    fn subsumed(&self, ctx: u32, goal: u32) -> Option<Option<Arc<ProofTerm>>> {
        if let Some(fs) = self.failed.get(&goal) {
            if fs.iter().any(|&f| self.subset(ctx, f)) {
                return Some(None);
            }
        }
        let ps = self.proved.get(&goal)?;
        ps.iter()
            .find(|(p, _)| self.subset(*p, ctx))
            .map(|(_, t)| Some(t.clone()))
    }

    fn record_failure(&mut self, ctx: u32, goal: u32) {
        let mut fs = self.failed.remove(&goal).unwrap_or_default();
        fs.retain(|&f| !self.subset(f, ctx));
        fs.push(ctx);
        self.failed.insert(goal, fs);
    }

    fn record_proof(&mut self, ctx: u32, goal: u32, t: Arc<ProofTerm>) {
        let mut ps = self.proved.remove(&goal).unwrap_or_default();
        ps.retain(|(p, _)| !self.subset(ctx, *p));
        ps.push((ctx, t));
        self.proved.insert(goal, ps);
    }

    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited.is_multiple_of(256) && self.budget.expired() {
            return Err(Error::BudgetExhausted);
        }
        if self.memo.len() >= self.cap {
            return Err(Error::JudgmentCap { cap: self.cap });
        }
        Ok(())
    }

    fn head_pred(&mut self, goal: u32) -> u32 {
        match &self.formulas[goal as usize] {
            Formula::Atom { predicate, args } => {
                let (p, n) = (predicate.clone(), args.len());
                self.predicate(&p, n)
            }
            _ => unreachable!("search goals are atoms"),
        }
    }

    /// Closes `ctx` under the rule instances with head `goal` whose premises
    /// are atoms of the context except one of the form `τ⃗ → goal`. Such a
    /// step is invertible: `Γ ⊢ c` iff `Γ, τ⃗ ⊢ c`. Without it, every subset
    /// of the closure would become a judgment of its own.
    fn saturate(&mut self, ctx: u32, goal: u32) -> Result<(u32, Arc<[Step]>)> {
        if let Some((c, steps)) = self.saturated.get(&(ctx, goal)) {
            return Ok((*c, steps.clone()));
        }
        let want = self.head_pred(goal);
        let mut cur = ctx;
        let mut steps = Vec::new();
        'grow: loop {
            let members = self.contexts[cur as usize].clone();
            for &psi in members.iter() {
                if self.shape(psi).head_pred != want {
                    continue;
                }
                for vals in self.assignments(psi, goal) {
                    let prem = self.instantiate(psi, &vals)?;
                    let mut open = None;
                    let mut ok = true;
                    for (j, p) in prem.iter().enumerate() {
                        if p.taus.is_empty() && members.binary_search(&p.goal).is_ok() {
                            continue;
                        }
                        if p.goal == goal
                            && open.is_none()
                            && !p.taus.iter().all(|t| members.binary_search(t).is_ok())
                        {
                            open = Some(j);
                            continue;
                        }
                        ok = false;
                        break;
                    }
                    if let (true, Some(j)) = (ok, open) {
                        cur = self.extend(cur, &prem[j].taus);
                        steps.push(Step {
                            psi,
                            vals,
                            prem,
                            open: j,
                        });
                        continue 'grow;
                    }
                }
            }
            break;
        }
        let steps: Arc<[Step]> = steps.into();
        self.saturated.insert((ctx, goal), (cur, steps.clone()));
        Ok((cur, steps))
    }

    /// Turns a proof in the saturated context into one in the original.
    fn unsaturate(&self, steps: &[Step], body: Arc<ProofTerm>) -> Arc<ProofTerm> {
        steps.iter().rev().fold(body, |acc, st| {
            let shape = self.shapes[st.psi as usize]
                .clone()
                .expect("shape computed during saturation");
            let args = st
                .prem
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    if j == st.open {
                        acc.clone()
                    } else {
                        Arc::new(ProofTerm::Var(self.name(p.goal)))
                    }
                })
                .collect();
            Arc::new(self.assemble(st.psi, &shape, &st.vals, &st.prem, args))
        })
    }

    /// Returns a proof if one exists, together with the lowest depth of an
    /// open judgment the answer depends on ([`UNRELATED`] if none).
    fn solve(
        &mut self,
        ctx: u32,
        goal: u32,
        depth: usize,
    ) -> Result<(Option<Arc<ProofTerm>>, usize)> {
        let members = self.contexts[ctx as usize].clone();
        if members.binary_search(&goal).is_ok() {
            return Ok((Some(Arc::new(ProofTerm::Var(self.name(goal)))), UNRELATED));
        }
        let want = self.head_pred(goal);
        // Other atoms of the context cannot prove the goal.
        if !members
            .iter()
            .any(|&m| !self.formulas[m as usize].is_atom() && self.shape(m).head_pred == want)
        {
            return Ok((None, UNRELATED));
        }
        let (sat, steps) = self.saturate(ctx, goal)?;
        if sat != ctx {
            let (r, low) = self.solve(sat, goal, depth)?;
            return Ok((r.map(|t| self.unsaturate(&steps, t)), low));
        }
        let key = (ctx, goal);
        match self.memo.get(&key) {
            Some(Status::Proved(t)) => return Ok((Some(t.clone()), UNRELATED)),
            Some(Status::Failed) => return Ok((None, UNRELATED)),
            Some(Status::Open(d)) | Some(Status::Provisional(d)) => return Ok((None, *d)),
            None => {}
        }
        if let Some(r) = self.subsumed(ctx, goal) {
            return Ok((r, UNRELATED));
        }
        self.tick()?;
        self.memo.insert(key, Status::Open(depth));
        let mark = self.provisional.len();
        let mut low = UNRELATED;

        let want = self.head_pred(goal);
        let members = self.contexts[ctx as usize].clone();
        for &psi in members.iter() {
            let shape = self.shape(psi);
            if shape.head_pred != want {
                continue;
            }
            for vals in self.assignments(psi, goal) {
                let prem = self.instantiate(psi, &vals)?;
                let mut args = Vec::with_capacity(prem.len());
                for p in prem.iter() {
                    let sub = self.extend(ctx, &p.taus);
                    let (r, l) = self.solve(sub, p.goal, depth + 1)?;
                    low = low.min(l);
                    match r {
                        Some(n) => args.push(n),
                        None => break,
                    }
                }
                if args.len() == prem.len() {
                    let t = Arc::new(self.assemble(psi, &shape, &vals, &prem, args));
                    for k in self.provisional.drain(mark..) {
                        self.memo.remove(&k);
                    }
                    self.memo.insert(key, Status::Proved(t.clone()));
                    self.record_proof(ctx, goal, t.clone());
                    return Ok((Some(t), UNRELATED));
                }
            }
        }
        if low >= depth {
            let done: Vec<_> = self.provisional.drain(mark..).collect();
            for k in done {
                self.memo.insert(k, Status::Failed);
                self.record_failure(k.0, k.1);
            }
            self.memo.insert(key, Status::Failed);
            self.record_failure(ctx, goal);
            Ok((None, UNRELATED))
        } else {
            self.memo.insert(key, Status::Provisional(low));
            self.provisional.push(key);
            Ok((None, low))
        }
    }
}

/// Searches for a long normal proof of the Σ₁ formula `goal` from the Π₁
/// environment `env`. Hypotheses introduced during search are named with a
/// prefix that does not clash with `env`.
pub fn prove(env: &Environment, goal: &Formula, budget: &dyn Budget) -> Result<Option<ProofTerm>> {
    prove_with_cap(env, goal, DEFAULT_JUDGMENT_CAP, budget).map(|(t, _)| t)
}

/// [`prove`] with an explicit judgment cap, also returning search counters.
pub fn prove_with_cap(
    env: &Environment,
    goal: &Formula,
    cap: usize,
    budget: &dyn Budget,
) -> Result<(Option<ProofTerm>, SearchStats)> {
    let mut p = Prover::new(env, goal, cap, budget)?;
    let t = p.prove(env, goal)?;
    Ok((t, p.stats()))
}

/// Decides a closed or open Σ₁ formula, returning a closed long normal proof.
pub fn prove_sigma1(phi: &Formula, budget: &dyn Budget) -> Result<Option<ProofTerm>> {
    prove(&Environment::new(), phi, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{check, is_lnf};
    use crate::syntax::parse_formula;
    use crate::Unlimited;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn env(pairs: &[(&str, &str)]) -> Environment {
        pairs.iter().map(|(x, s)| (x.to_string(), f(s))).collect()
    }

    fn certified(e: &Environment, goal: &str) -> Option<ProofTerm> {
        let g = f(goal);
        let t = prove(e, &g, &Unlimited).unwrap();
        if let Some(t) = &t {
            assert!(check(e, t, &g), "{t} does not prove {g}");
            assert!(is_lnf(e, t, &g), "{t} is not long normal");
            assert!(!t.has_obj_abs());
        }
        t
    }

    #[test]
    fn axiom() {
        let t = certified(&env(&[("X", "a")]), "a").unwrap();
        assert_eq!(t, ProofTerm::var("X"));
    }

    #[test]
    fn identity() {
        let t = certified(&Environment::new(), "a -> a").unwrap();
        assert_eq!(t.to_string(), "\\X0:a. X0");
    }

    #[test]
    fn one_instantiation() {
        let e = env(&[("X", "forall x. P(x) -> Q(x)"), ("Y", "P(c)")]);
        let t = certified(&e, "Q(c)").unwrap();
        assert_eq!(t.to_string(), "X c Y");
        assert!(certified(
            &Environment::new(),
            "(forall x. P(x) -> Q(x)) -> P(c) -> Q(c)"
        )
        .is_some());
    }

    #[test]
    fn unprovable() {
        assert!(certified(&Environment::new(), "((a -> b) -> a) -> a").is_none());
        assert!(certified(&Environment::new(), "b -> a").is_none());
        assert!(certified(&env(&[("X", "a -> a")]), "a").is_none());
    }

    #[test]
    fn hypothetical_premises() {
        assert!(certified(&Environment::new(), "((a -> b) -> c) -> (b -> c)").is_some());
        assert!(certified(&Environment::new(), "(a -> b) -> (b -> c) -> a -> c").is_some());
        assert!(certified(&Environment::new(), "((((a -> b) -> a) -> a) -> b) -> b").is_some());
    }

    #[test]
    fn empty_pool_gets_a_constant() {
        let t = certified(
            &Environment::new(),
            "(forall x. P(x)) -> (forall y. P(y) -> q) -> q",
        )
        .unwrap();
        assert!(t.to_string().contains(" c0"));
    }

    #[test]
    fn cycles_do_not_loop() {
        let e = env(&[
            ("X", "forall x. P(x) -> P(x)"),
            ("Y", "forall x. Q(x) -> P(x)"),
            ("Z", "Q(d)"),
        ]);
        assert!(certified(&e, "P(d)").is_some());
        assert!(certified(&e, "P(e)").is_none());
    }

    #[test]
    fn provisional_failure_is_retried() {
        // b fails while a is open, but succeeds once a is proved another way.
        let e = env(&[
            ("A1", "b -> a"),
            ("A2", "c -> a"),
            ("B1", "a -> b"),
            ("C", "c"),
            ("D", "b -> d"),
            ("E", "a -> d -> e"),
        ]);
        assert!(certified(&e, "e").is_some());
    }

    #[test]
    fn hypothesis_names_avoid_env() {
        let e = env(&[("X0", "a")]);
        let t = certified(&e, "(a -> b) -> b").unwrap();
        assert_eq!(t.to_string(), "\\H1:(a -> b). H1 X0");
    }

    #[test]
    fn class_errors() {
        let e = env(&[("X", "(forall x. P(x)) -> q")]);
        assert!(matches!(
            prove(&e, &f("q"), &Unlimited),
            Err(Error::Unclassifiable(_))
        ));
        assert!(matches!(
            prove(&Environment::new(), &f("forall x. P(x)"), &Unlimited),
            Err(Error::Unclassifiable(_))
        ));
    }

    #[test]
    fn judgment_cap() {
        let e = env(&[("X", "a -> a")]);
        assert_eq!(
            prove_with_cap(&e, &f("a"), 0, &Unlimited).unwrap_err(),
            Error::JudgmentCap { cap: 0 }
        );
    }
}
