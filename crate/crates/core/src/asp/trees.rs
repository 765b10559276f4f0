//! Refutation trees and derivations without returns.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::ground::{GroundProgram, Model};
use super::semantics::lfp;
use crate::Result;

/// Label of a refutation node: an atom, or an overlined atom `b̄` with `b ∈ M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Atom(u32),
    Bar(u32),
}

#[derive(Debug, Clone)]
pub struct RefNode {
    pub label: Label,
    /// One child per ground clause with this node's atom as head, in clause
    /// order. Empty for overlined leaves and back-edge leaves.
    pub children: Vec<usize>,
    /// For a leaf that closes a cycle, the ancestor with the same label.
    pub back_edge: Option<usize>,
    /// Δ: transitions `(parent atom, child atom)` along the path from the root.
    pub delta: BTreeSet<(u32, u32)>,
}

/// A possibly infinite refutation, stored as a finite tree with back edges.
/// Node 0 is the root.
#[derive(Debug, Clone)]
pub struct RefutationTree {
    pub nodes: Vec<RefNode>,
}

/// Builds a refutation for `a`, or `None` if `a ∈ I(P,M)`.
pub fn find_refutation(g: &GroundProgram, m: &Model, a: u32) -> Result<Option<RefutationTree>> {
    let (mv, _) = g.mask(m)?;
    let i = lfp(g, &mv);
    if i[a as usize] {
        return Ok(None);
    }
    let by_head = g.clauses_by_head();
    let mut tree = RefutationTree { nodes: Vec::new() };
    let mut path = Vec::new();
    build(
        g,
        &mv,
        &i,
        &by_head,
        a,
        BTreeSet::new(),
        &mut path,
        &mut tree,
    );
    Ok(Some(tree))
}

#[allow(clippy::too_many_arguments)]
fn build(
    g: &GroundProgram,
    m: &[bool],
    i: &[bool],
    by_head: &[Vec<usize>],
    a: u32,
    delta: BTreeSet<(u32, u32)>,
    path: &mut Vec<(u32, usize)>,
    tree: &mut RefutationTree,
) -> usize {
    let me = tree.nodes.len();
    let back = path.iter().find(|(b, _)| *b == a).map(|&(_, n)| n);
    tree.nodes.push(RefNode {
        label: Label::Atom(a),
        children: Vec::new(),
        back_edge: back,
        delta: delta.clone(),
    });
    if back.is_some() {
        return me;
    }
    path.push((a, me));
    let mut children = Vec::new();
    for &k in &by_head[a as usize] {
        let c = &g.clauses[k];
        // An overlined leaf closes the branch at once, so prefer it.
        if let Some(&b) = c.neg.iter().find(|&&b| m[b as usize]) {
            let leaf = tree.nodes.len();
            tree.nodes.push(RefNode {
                label: Label::Bar(b),
                children: Vec::new(),
                back_edge: None,
                delta: delta.clone(),
            });
            children.push(leaf);
            continue;
        }
        let b = *c
            .pos
            .iter()
            .find(|&&b| !i[b as usize])
            .expect("a clause of an underivable atom has a failing literal");
        let mut d = delta.clone();
        d.insert((a, b));
        children.push(build(g, m, i, by_head, b, d, path, tree));
    }
    path.pop();
    tree.nodes[me].children = children;
    me
}

/// Checks the structural conditions of a refutation for `a`.
pub fn check_refutation(
    g: &GroundProgram,
    m: &Model,
    a: u32,
    t: &RefutationTree,
) -> core::result::Result<(), String> {
    let (mv, _) = g.mask(m).map_err(|e| format!("{e}"))?;
    let by_head = g.clauses_by_head();
    if t.nodes.is_empty() || t.nodes[0].label != Label::Atom(a) {
        return Err("root is not labeled with the refuted atom".into());
    }
    if !t.nodes[0].delta.is_empty() {
        return Err("root history is not empty".into());
    }
    let mut seen = vec![false; t.nodes.len()];
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((n, ancestors)) = stack.pop() {
        if seen[n] {
            return Err(format!("node {n} is reachable twice"));
        }
        seen[n] = true;
        let node = &t.nodes[n];
        let Label::Atom(x) = node.label else {
            if !node.children.is_empty() {
                return Err(format!("overlined node {n} has children"));
            }
            continue;
        };
        if let Some(anc) = node.back_edge {
            if !ancestors.contains(&anc) || t.nodes[anc].label != node.label {
                return Err(format!(
                    "back edge of node {n} does not reach an equal ancestor"
                ));
            }
            if !node.children.is_empty() {
                return Err(format!("back-edge leaf {n} has children"));
            }
            continue;
        }
        let clauses = &by_head[x as usize];
        if node.children.len() != clauses.len() {
            return Err(format!(
                "node {n} has {} children but {} clauses target its atom",
                node.children.len(),
                clauses.len()
            ));
        }
        let mut anc = ancestors.clone();
        anc.push(n);
        for (&k, &ch) in clauses.iter().zip(&node.children) {
            let c = &g.clauses[k];
            let child = t.nodes.get(ch).ok_or(format!("dangling child {ch}"))?;
            match child.label {
                Label::Atom(b) => {
                    if !c.pos.contains(&b) {
                        return Err(format!("child {ch} is not a positive body atom"));
                    }
                    let mut d = node.delta.clone();
                    d.insert((x, b));
                    if child.delta != d {
                        return Err(format!("history of node {ch} is wrong"));
                    }
                }
                Label::Bar(b) => {
                    if !c.neg.contains(&b) || !mv[b as usize] {
                        return Err(format!("overlined leaf {ch} is not justified by the model"));
                    }
                }
            }
            stack.push((ch, anc.clone()));
        }
    }
    Ok(())
}

/// A node of a derivation from P̄ ∪ M̄.
#[derive(Debug, Clone)]
pub enum DerNode {
    /// A ground clause (by index) and the derivations of its positive body.
    Clause { clause: usize, children: Vec<usize> },
}

/// A finite derivation tree. Node 0 is the root. Overlined premises are
/// implicit leaves: every negative literal of a used clause must be in M̄.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub nodes: Vec<DerNode>,
}

/// Derivation stage of every atom: the iteration of the consequence
/// operator at which it first appears, or `None`.
fn stages(g: &GroundProgram, m: &[bool]) -> Vec<Option<usize>> {
    let mut st = vec![None; g.num_atoms()];
    let mut round = 0;
    loop {
        round += 1;
        let mut fresh = Vec::new();
        for c in &g.clauses {
            if st[c.head as usize].is_some() {
                continue;
            }
            let fires = c.neg.iter().all(|&b| !m[b as usize])
                && c.pos
                    .iter()
                    .all(|&b| st[b as usize].is_some_and(|s| s < round));
            if fires {
                fresh.push(c.head);
            }
        }
        if fresh.is_empty() {
            return st;
        }
        for h in fresh {
            st[h as usize].get_or_insert(round);
        }
    }
}

/// Builds a derivation of `a` in which no atom is justified twice on a
/// path, or `None` if `a ∉ I(P,M)`.
pub fn find_derivation_no_returns(
    g: &GroundProgram,
    m: &Model,
    a: u32,
) -> Result<Option<Derivation>> {
    let (mv, _) = g.mask(m)?;
    let st = stages(g, &mv);
    if st[a as usize].is_none() {
        return Ok(None);
    }
    let by_head = g.clauses_by_head();
    let mut d = Derivation { nodes: Vec::new() };
    derive(g, &mv, &st, &by_head, a, &mut d);
    Ok(Some(d))
}

fn derive(
    g: &GroundProgram,
    m: &[bool],
    st: &[Option<usize>],
    by_head: &[Vec<usize>],
    a: u32,
    d: &mut Derivation,
) -> usize {
    let s = st[a as usize].unwrap();
    let k = by_head[a as usize]
        .iter()
        .copied()
        .find(|&k| {
            let c = &g.clauses[k];
            c.neg.iter().all(|&b| !m[b as usize])
                && c.pos.iter().all(|&b| st[b as usize].is_some_and(|t| t < s))
        })
        .expect("an atom with a stage has a clause firing below it");
    let me = d.nodes.len();
    d.nodes.push(DerNode::Clause {
        clause: k,
        children: Vec::new(),
    });
    let kids: Vec<usize> = g.clauses[k]
        .pos
        .iter()
        .map(|&b| derive(g, m, st, by_head, b, d))
        .collect();
    d.nodes[me] = DerNode::Clause {
        clause: k,
        children: kids,
    };
    me
}

/// Checks that `d` derives `a` from P̄ ∪ M̄ and contains no return.
pub fn check_derivation(
    g: &GroundProgram,
    m: &Model,
    a: u32,
    d: &Derivation,
) -> core::result::Result<(), String> {
    let (mv, _) = g.mask(m).map_err(|e| format!("{e}"))?;
    fn go(
        g: &GroundProgram,
        m: &[bool],
        d: &Derivation,
        n: usize,
        want: u32,
        path: &mut Vec<u32>,
        budget: &mut usize,
    ) -> core::result::Result<(), String> {
        if *budget == 0 {
            return Err("derivation is not a finite tree".into());
        }
        *budget -= 1;
        let DerNode::Clause { clause, children } = d.nodes.get(n).ok_or("dangling node")?;
        let c = g.clauses.get(*clause).ok_or("unknown clause")?;
        if c.head != want {
            return Err(format!("node {n} does not derive the required atom"));
        }
        if path.contains(&c.head) {
            return Err(format!("node {n} is a return"));
        }
        if let Some(&b) = c.neg.iter().find(|&&b| m[b as usize]) {
            return Err(format!("overlined premise {} is not in M̄", g.atom(b)));
        }
        if children.len() != c.pos.len() {
            return Err(format!("node {n} has the wrong number of subderivations"));
        }
        path.push(c.head);
        for (&ch, &b) in children.iter().zip(&c.pos) {
            go(g, m, d, ch, b, path, budget)?;
        }
        path.pop();
        Ok(())
    }
    let mut budget = d.nodes.len();
    go(g, &mv, d, 0, a, &mut Vec::new(), &mut budget)
}
