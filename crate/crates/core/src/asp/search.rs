//! Conflict-driven search for stable models of large ground programs.
//!
//! The program is encoded by its Clark completion over atom and body
//! variables. Completion models that are not stable are cut off with loop
//! clauses built from the unfounded set `M \ I(P,M)`. Every reported model
//! passes the stability test from scratch.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::ground::{GroundProgram, Model};
use super::semantics::lfp;
use crate::{Budget, Error, Result};

type Lit = u32;
const NO_REASON: u32 = u32::MAX;
const UNDEF: u8 = 2;

fn lit(var: usize, negative: bool) -> Lit {
    (var as u32) << 1 | negative as u32
}

fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

/// Counters reported by the search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub loop_clauses: u64,
}

struct Heap {
    heap: Vec<u32>,
    pos: Vec<u32>,
}

impl Heap {
    const ABSENT: u32 = u32::MAX;

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if act[self.heap[parent] as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c =
                if r < self.heap.len() && act[self.heap[r] as usize] > act[self.heap[l] as usize] {
                    r
                } else {
                    l
                };
            if act[self.heap[c] as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i] as usize] = i as u32;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.pos[v] != Self::ABSENT {
            return;
        }
        self.heap.push(v as u32);
        let i = self.heap.len() - 1;
        self.pos[v] = i as u32;
        self.up(i, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = Self::ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }
}

fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

/// Search state over one ground program.
pub struct StableSearch<'a> {
    g: &'a GroundProgram,
    natoms: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    value: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: Heap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    /// Body variable of every ground clause.
    rule_body: Vec<usize>,
    unsat: bool,
    pub stats: SearchStats,
}

impl<'a> StableSearch<'a> {
    pub fn new(g: &'a GroundProgram) -> Self {
        let natoms = g.num_atoms();
        // Bodies are shared between clauses with the same literals.
        let mut body_ids: HashMap<(Vec<u32>, Vec<u32>), usize> = HashMap::new();
        let mut bodies: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        let mut rule_body = Vec::with_capacity(g.clauses.len());
        for c in &g.clauses {
            let mut pos = c.pos.clone();
            pos.sort_unstable();
            pos.dedup();
            let mut neg = c.neg.clone();
            neg.sort_unstable();
            neg.dedup();
            let key = (pos, neg);
            let id = *body_ids.entry(key.clone()).or_insert_with(|| {
                bodies.push(key);
                natoms + bodies.len() - 1
            });
            rule_body.push(id);
        }
        let nvars = natoms + bodies.len();
        let mut s = StableSearch {
            g,
            natoms,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * nvars],
            value: vec![UNDEF; nvars],
            level: vec![0; nvars],
            reason: vec![NO_REASON; nvars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; nvars],
            var_inc: 1.0,
            heap: Heap {
                heap: Vec::new(),
                pos: vec![Heap::ABSENT; nvars],
            },
            phase: vec![false; nvars],
            seen: vec![false; nvars],
            rule_body,
            unsat: false,
            stats: SearchStats::default(),
        };
        // Body ↔ conjunction of its literals.
        for (k, (pos, neg)) in bodies.iter().enumerate() {
            let b = natoms + k;
            let mut big = vec![lit(b, false)];
            for &a in pos {
                s.add_initial(vec![lit(b, true), lit(a as usize, false)]);
                big.push(lit(a as usize, true));
            }
            for &a in neg {
                s.add_initial(vec![lit(b, true), lit(a as usize, true)]);
                big.push(lit(a as usize, false));
            }
            s.add_initial(big);
        }
        // Atom ↔ disjunction of its bodies.
        let mut support: Vec<Vec<usize>> = vec![Vec::new(); natoms];
        for (c, &b) in g.clauses.iter().zip(&s.rule_body) {
            support[c.head as usize].push(b);
        }
        for (a, bs) in support.iter_mut().enumerate() {
            bs.sort_unstable();
            bs.dedup();
            let mut big = vec![lit(a, true)];
            for &b in bs.iter() {
                s.add_initial(vec![lit(b, true), lit(a, false)]);
                big.push(lit(b, false));
            }
            s.add_initial(big);
        }
        for v in 0..natoms {
            s.heap.insert(v, &s.activity);
        }
        s
    }

    fn val(&self, l: Lit) -> u8 {
        let v = self.value[var(l)];
        if v == UNDEF {
            UNDEF
        } else {
            v ^ (l & 1) as u8
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = var(l);
        self.value[v] = (l & 1 == 0) as u8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn add_initial(&mut self, mut c: Vec<Lit>) {
        if self.unsat {
            return;
        }
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        match c.len() {
            0 => self.unsat = true,
            1 => match self.val(c[0]) {
                0 => self.unsat = true,
                1 => {}
                _ => {
                    let idx = self.clauses.len() as u32;
                    self.clauses.push(c.clone());
                    self.enqueue(c[0], idx);
                }
            },
            _ => {
                let idx = self.clauses.len() as u32;
                self.watches[c[0] as usize].push(idx);
                self.watches[c[1] as usize].push(idx);
                self.clauses.push(c);
            }
        }
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let falselit = p ^ 1;
            let ws = core::mem::take(&mut self.watches[falselit as usize]);
            let mut kept = Vec::with_capacity(ws.len());
            let mut conflict = None;
            let mut i = 0;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let c = &mut self.clauses[ci as usize];
                if c[0] == falselit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self.value[var(first)] != UNDEF
                    && self.value[var(first)] ^ (first & 1) as u8 == 1
                {
                    kept.push(ci);
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let lv = self.value[var(l)];
                    if lv == UNDEF || lv ^ (l & 1) as u8 == 1 {
                        c.swap(1, k);
                        let w = c[1];
                        self.watches[w as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                kept.push(ci);
                if self.val(first) == 0 {
                    conflict = Some(ci);
                    kept.extend_from_slice(&ws[i..]);
                    break;
                }
                self.enqueue(first, ci);
            }
            self.watches[falselit as usize] = kept;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.heap.pos[v] != Heap::ABSENT {
            let i = self.heap.pos[v] as usize;
            self.heap.up(i, &self.activity);
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut out: Vec<Lit> = vec![0];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let cur = self.decision_level();
        loop {
            let c = self.clauses[confl as usize].clone();
            let skip = usize::from(p.is_some());
            for &q in &c[skip..] {
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if v < self.natoms {
                        self.bump(v);
                    }
                    if self.level[v] >= cur {
                        path += 1;
                    } else {
                        out.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var(self.trail[index])] {
                    break;
                }
            }
            let pl = self.trail[index];
            p = Some(pl);
            confl = self.reason[var(pl)];
            self.seen[var(pl)] = false;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        out[0] = p.unwrap() ^ 1;
        for &q in &out[1..] {
            self.seen[var(q)] = false;
        }
        let mut bt = 0;
        if out.len() > 1 {
            let mut best = 1;
            for k in 2..out.len() {
                if self.level[var(out[k])] > self.level[var(out[best])] {
                    best = k;
                }
            }
            out.swap(1, best);
            bt = self.level[var(out[1])];
        }
        self.var_inc *= 1.0 / 0.95;
        (out, bt)
    }

    fn backtrack(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl as usize];
        for k in (start..self.trail.len()).rev() {
            let v = var(self.trail[k]);
            self.phase[v] = self.value[v] == 1;
            self.value[v] = UNDEF;
            self.reason[v] = NO_REASON;
            if v < self.natoms {
                self.heap.insert(v, &self.activity);
            }
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = self.trail.len();
    }

    /// Adds a clause that is false under the current assignment and returns
    /// it as a conflict, or `None` when it refutes the root level.
    fn add_false_clause(&mut self, mut c: Vec<Lit>) -> Option<u32> {
        c.sort_unstable();
        c.dedup();
        if c.is_empty() {
            return None;
        }
        c.sort_by_key(|&l| core::cmp::Reverse(self.level[var(l)]));
        let top = self.level[var(c[0])];
        if top == 0 {
            return None;
        }
        self.backtrack(top);
        let idx = self.clauses.len() as u32;
        if c.len() >= 2 {
            self.watches[c[0] as usize].push(idx);
            self.watches[c[1] as usize].push(idx);
        }
        self.clauses.push(c);
        Some(idx)
    }

    /// Resolves a conflict; returns false when the search space is exhausted.
    fn resolve(&mut self, confl: u32) -> bool {
        self.stats.conflicts += 1;
        if self.decision_level() == 0 {
            return false;
        }
        let (learnt, bt) = self.analyze(confl);
        self.backtrack(bt);
        let idx = self.clauses.len() as u32;
        if learnt.len() >= 2 {
            self.watches[learnt[0] as usize].push(idx);
            self.watches[learnt[1] as usize].push(idx);
        }
        let first = learnt[0];
        self.clauses.push(learnt);
        self.enqueue(first, idx);
        true
    }

    /// The loop clause for the unfounded set `M \ I(P,M)`, or `None` if the
    /// current total assignment is stable.
    fn unfounded_clause(&self, m: &[bool]) -> Option<Vec<Lit>> {
        let closed = lfp(self.g, m);
        let unfounded: Vec<usize> = (0..self.natoms).filter(|&a| m[a] && !closed[a]).collect();
        let &a = unfounded.iter().max_by_key(|&&a| self.level[a])?;
        let mut inu = vec![false; self.natoms];
        for &u in &unfounded {
            inu[u] = true;
        }
        let mut c = vec![lit(a, true)];
        for (k, cl) in self.g.clauses.iter().enumerate() {
            if inu[cl.head as usize] && cl.pos.iter().all(|&b| !inu[b as usize]) {
                c.push(lit(self.rule_body[k], false));
            }
        }
        Some(c)
    }

    /// Finds the next stable model, or `None` when there are no more.
    pub fn next_model(&mut self, budget: &dyn Budget) -> Result<Option<Model>> {
        if self.unsat {
            return Ok(None);
        }
        let mut restart_idx = 0u64;
        let mut until_restart = luby(0) * 100;
        loop {
            if let Some(confl) = self.propagate() {
                if !self.resolve(confl) {
                    self.unsat = true;
                    return Ok(None);
                }
                until_restart = until_restart.saturating_sub(1);
                continue;
            }
            if self.stats.conflicts & 0xff == 0 && budget.expired() {
                return Err(Error::BudgetExhausted);
            }
            if until_restart == 0 {
                restart_idx += 1;
                until_restart = luby(restart_idx) * 100;
                self.backtrack(0);
                continue;
            }
            let next = loop {
                match self.heap.pop(&self.activity) {
                    Some(v) if self.value[v] == UNDEF => break Some(v),
                    Some(_) => continue,
                    None => break None,
                }
            };
            match next {
                Some(v) => {
                    self.stats.decisions += 1;
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(lit(v, !self.phase[v]), NO_REASON);
                }
                None => {
                    let m: Vec<bool> = (0..self.natoms).map(|a| self.value[a] == 1).collect();
                    match self.unfounded_clause(&m) {
                        None => {
                            let model = self.g.model_of(&m);
                            // Block this model so the next call moves on.
                            let block: Vec<Lit> = (0..self.natoms).map(|a| lit(a, m[a])).collect();
                            match self.add_false_clause(block) {
                                Some(ci) => {
                                    if !self.resolve(ci) {
                                        self.unsat = true;
                                    }
                                }
                                None => self.unsat = true,
                            }
                            return Ok(Some(model));
                        }
                        Some(c) => {
                            self.stats.loop_clauses += 1;
                            match self.add_false_clause(c) {
                                Some(ci) => {
                                    if !self.resolve(ci) {
                                        self.unsat = true;
                                        return Ok(None);
                                    }
                                }
                                None => {
                                    self.unsat = true;
                                    return Ok(None);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Some stable model of `g`, if one exists.
pub fn find_stable_model(g: &GroundProgram, budget: &dyn Budget) -> Result<Option<Model>> {
    StableSearch::new(g).next_model(budget)
}

/// Up to `limit` stable models (all if `None`), sorted.
pub fn enumerate_stable_models(
    g: &GroundProgram,
    limit: Option<usize>,
    budget: &dyn Budget,
) -> Result<Vec<Model>> {
    let mut s = StableSearch::new(g);
    let mut out = Vec::new();
    while limit.is_none_or(|k| out.len() < k) {
        match s.next_model(budget)? {
            Some(m) => out.push(m),
            None => break,
        }
    }
    out.sort();
    Ok(out)
}
