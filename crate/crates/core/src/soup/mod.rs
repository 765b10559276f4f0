//! Refutation soups: sets of addressed disjudgments `Γ ⊬ a` in which every
//! question asked is answered. A soup for φ certifies that φ has no proof.
//!
//! Contexts hold instances `ψ[S]` of contextual occurrences, but membership,
//! inclusion and questions are judged on the formulas they denote, so two
//! occurrences of the same subformula are interchangeable.

mod text;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::asp::{is_stable, GroundProgram, Model};
use crate::sigma_to_asp::{Analysis, Translation};
use crate::{Budget, Error, Result};

pub use text::{parse_soup, render_soup};

/// An address: the low `addr_len` bits, most significant first when printed.
pub type Address = u32;

/// `Γ ⊬ a` placed at one or more addresses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disjudgment {
    /// Instance ids (see [`Analysis::instances`]).
    pub context: BTreeSet<usize>,
    /// Atom id (see [`Analysis::atoms`]).
    pub goal: usize,
    pub addresses: Vec<Address>,
}

/// A set of disjudgments with an explicit answer map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Soup {
    pub addr_len: usize,
    pub judgments: Vec<Disjudgment>,
    /// `(question, asking address) -> (i, answering address)`, `i` from 1.
    pub answers: BTreeMap<(usize, Address), (usize, Address)>,
}

/// Outcome of [`check_soup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoupReport {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Smallest `ℓ ≥ 1` with `2^ℓ ≥ n`.
pub fn address_bits(n: usize) -> usize {
    let mut l = 1;
    while (1usize << l) < n {
        l += 1;
    }
    l
}

pub fn show_address(addr: Address, len: usize) -> String {
    (0..len)
        .rev()
        .map(|b| if addr >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Formula ids of a context.
pub fn context_keys(a: &Analysis, ctx: &BTreeSet<usize>) -> BTreeSet<usize> {
    ctx.iter().map(|&i| a.instances[i].key).collect()
}

/// Questions `⟨ψ,S,T⟩` asked at `Γ ⊬ goal`, where `Γ` is given by formula ids.
pub fn questions_at(a: &Analysis, keys: &BTreeSet<usize>, goal: usize) -> Vec<usize> {
    a.questions
        .iter()
        .enumerate()
        .filter(|(_, q)| q.head == goal && keys.contains(&a.instances[q.inst].key))
        .map(|(i, _)| i)
        .collect()
}

/// Whether `Γ' ⊬ goal'` is an `i`-th answer to question `q` asked at `Γ`.
pub fn is_answer(
    a: &Analysis,
    q: usize,
    i: usize,
    from: &BTreeSet<usize>,
    to: &BTreeSet<usize>,
    to_goal: usize,
) -> bool {
    let qu = &a.questions[q];
    i >= 1
        && i <= qu.subgoals.len()
        && qu.subgoals[i - 1] == to_goal
        && from.is_subset(to)
        && qu.descendants[i - 1]
            .iter()
            .all(|&t| to.contains(&a.instances[t].key))
}

fn describe_question(a: &Analysis, q: usize) -> String {
    let qu = &a.questions[q];
    format!(
        "<f{}, {}, {}> ({})",
        qu.psi,
        a.show_subst(&qu.s),
        a.show_subst(&qu.t),
        a.instance_formula(qu.inst)
    )
}

fn describe_judgment(a: &Analysis, d: &Disjudgment) -> String {
    let ctx: Vec<String> = d
        .context
        .iter()
        .map(|&i| format!("{}", a.instance_formula(i)))
        .collect();
    format!("{{{}}} |/- {}", ctx.join(", "), a.atoms[d.goal])
}

/// Checks that `z` contains the initial disjudgment at address `0…0` and
/// answers every question asked at any of its members.
///
/// An explicit answer-map entry must be a correct answer. Questions without
/// an entry are accepted when some member answers them.
pub fn check_soup(z: &Soup, a: &Analysis) -> SoupReport {
    let mut diags = Vec::new();
    let mut at: BTreeMap<Address, usize> = BTreeMap::new();
    if z.addr_len == 0 || z.addr_len > 24 {
        diags.push(format!("address length {} outside 1..=24", z.addr_len));
        return SoupReport {
            ok: false,
            diagnostics: diags,
        };
    }
    for (j, d) in z.judgments.iter().enumerate() {
        if d.addresses.is_empty() {
            diags.push(format!("judgment {} has no address", j + 1));
        }
        if d.goal >= a.atoms.len() || d.context.iter().any(|&i| i >= a.instances.len()) {
            diags.push(format!("judgment {} refers to unknown objects", j + 1));
            return SoupReport {
                ok: false,
                diagnostics: diags,
            };
        }
        for &x in &d.addresses {
            if x >> z.addr_len != 0 {
                diags.push(format!("address {x} does not fit in {} bits", z.addr_len));
            } else if at.insert(x, j).is_some() {
                diags.push(format!(
                    "address {} used twice",
                    show_address(x, z.addr_len)
                ));
            }
        }
    }
    let keys: Vec<BTreeSet<usize>> = z
        .judgments
        .iter()
        .map(|d| context_keys(a, &d.context))
        .collect();
    let init_keys: BTreeSet<usize> = a
        .initial_context()
        .iter()
        .map(|&i| a.instances[i].key)
        .collect();
    match at.get(&0) {
        None => diags.push("no judgment at address 0".into()),
        Some(&j) => {
            if keys[j] != init_keys || z.judgments[j].goal != a.goal {
                diags.push(format!(
                    "judgment at address 0 is {}, not the initial disjudgment",
                    describe_judgment(a, &z.judgments[j])
                ));
            }
        }
    }
    if !diags.is_empty() {
        return SoupReport {
            ok: false,
            diagnostics: diags,
        };
    }
    for (j, d) in z.judgments.iter().enumerate() {
        for q in questions_at(a, &keys[j], d.goal) {
            let entry = d
                .addresses
                .iter()
                .find_map(|&x| z.answers.get(&(q, x)).map(|e| (x, *e)));
            match entry {
                Some((x, (i, to))) => {
                    let ok = at.get(&to).is_some_and(|&jj| {
                        is_answer(a, q, i, &keys[j], &keys[jj], z.judgments[jj].goal)
                    });
                    if !ok {
                        diags.push(format!(
                            "malformed answer: question {} at {} is not answered by ({i}, {})",
                            describe_question(a, q),
                            show_address(x, z.addr_len),
                            show_address(to, z.addr_len)
                        ));
                    }
                }
                None => {
                    let k = a.questions[q].subgoals.len();
                    let found = (0..z.judgments.len()).any(|jj| {
                        (1..=k)
                            .any(|i| is_answer(a, q, i, &keys[j], &keys[jj], z.judgments[jj].goal))
                    });
                    if !found {
                        diags.push(format!(
                            "unanswered question {} at {}",
                            describe_question(a, q),
                            describe_judgment(a, d)
                        ));
                    }
                }
            }
            if diags.len() >= 8 {
                break;
            }
        }
    }
    SoupReport {
        ok: diags.is_empty(),
        diagnostics: diags,
    }
}

/// Result of [`find_soup`].
#[derive(Debug, Clone)]
pub struct SoupSearch {
    pub soup: Option<Soup>,
    /// Candidate disjudgments reachable from the initial one.
    pub candidates: usize,
}

struct CandNode {
    keys: BTreeSet<usize>,
    goal: usize,
    /// Per question: its candidate answers `(i, node)`.
    questions: Vec<(usize, Vec<(usize, usize)>)>,
}

/// The candidate graph: every disjudgment reachable from the initial one by
/// minimal answers `Γ' = Γ ∪ {τ[S][T]}`.
fn candidate_graph(a: &Analysis, max: usize, budget: &dyn Budget) -> Result<Vec<CandNode>> {
    let mut nodes: Vec<CandNode> = Vec::new();
    let mut index: HashMap<(BTreeSet<usize>, usize), usize> = HashMap::new();
    let init: BTreeSet<usize> = a
        .initial_context()
        .iter()
        .map(|&i| a.instances[i].key)
        .collect();
    index.insert((init.clone(), a.goal), 0);
    nodes.push(CandNode {
        keys: init,
        goal: a.goal,
        questions: Vec::new(),
    });
    let mut next = 0;
    while next < nodes.len() {
        if budget.expired() {
            return Err(Error::BudgetExhausted);
        }
        let keys = nodes[next].keys.clone();
        let goal = nodes[next].goal;
        let mut qs = Vec::new();
        for q in questions_at(a, &keys, goal) {
            let qu = &a.questions[q];
            let mut answers = Vec::new();
            for (i, taus) in qu.descendants.iter().enumerate() {
                let mut k2 = keys.clone();
                k2.extend(taus.iter().map(|&t| a.instances[t].key));
                let g2 = qu.subgoals[i];
                let id = match index.get(&(k2.clone(), g2)) {
                    Some(&id) => id,
                    None => {
                        if nodes.len() >= max {
                            return Err(Error::JudgmentCap { cap: max });
                        }
                        let id = nodes.len();
                        index.insert((k2.clone(), g2), id);
                        nodes.push(CandNode {
                            keys: k2,
                            goal: g2,
                            questions: Vec::new(),
                        });
                        id
                    }
                };
                answers.push((i + 1, id));
            }
            qs.push((q, answers));
        }
        nodes[next].questions = qs;
        next += 1;
    }
    Ok(nodes)
}

/// Number of candidate disjudgments; a soup never needs more addresses than
/// this plus one (the initial disjudgment may also serve as an answer).
pub fn candidate_count(a: &Analysis, max: usize, budget: &dyn Budget) -> Result<usize> {
    Ok(candidate_graph(a, max, budget)?.len())
}

/// Address length that can hold every candidate disjudgment, which is
/// enough for [`model_from_soup`] on any soup found by [`find_soup`].
pub fn full_addr_len(a: &Analysis, max: usize, budget: &dyn Budget) -> Result<usize> {
    Ok(address_bits(candidate_count(a, max, budget)? + 1))
}

/// Greatest-fixpoint search: starting from all candidates, delete every
/// disjudgment with a question none of whose answers survives. Succeeds when
/// the initial disjudgment survives; the soup returned is trimmed.
pub fn find_soup(a: &Analysis, max_judgments: usize, budget: &dyn Budget) -> Result<SoupSearch> {
    let nodes = candidate_graph(a, max_judgments, budget)?;
    let alive = deletion(&nodes, (0..nodes.len()).collect());
    Ok(SoupSearch {
        soup: assemble(a, &nodes, &alive),
        candidates: nodes.len(),
    })
}

/// Deletion to a fixpoint, visiting nodes in `order`.
fn deletion(nodes: &[CandNode], order: Vec<usize>) -> Vec<bool> {
    let mut alive = vec![true; nodes.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for &n in &order {
            if alive[n]
                && nodes[n]
                    .questions
                    .iter()
                    .any(|(_, ans)| ans.iter().all(|&(_, m)| !alive[m]))
            {
                alive[n] = false;
                changed = true;
            }
        }
    }
    alive
}

fn assemble(a: &Analysis, nodes: &[CandNode], alive: &[bool]) -> Option<Soup> {
    if !alive[0] {
        return None;
    }
    let mut rep: HashMap<usize, usize> = HashMap::new();
    for (i, inst) in a.instances.iter().enumerate() {
        rep.entry(inst.key).or_insert(i);
    }
    let mut addr: HashMap<usize, Address> = HashMap::new();
    let mut order = vec![0usize];
    addr.insert(0, 0);
    let mut edges = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let n = order[k];
        for (q, ans) in &nodes[n].questions {
            let &(i, m) = ans
                .iter()
                .find(|(_, m)| alive[*m])
                .expect("alive nodes answer all questions");
            if !addr.contains_key(&m) {
                addr.insert(m, order.len() as Address);
                order.push(m);
            }
            edges.push((*q, n, i, m));
        }
        k += 1;
    }
    let addr_len = address_bits(order.len());
    let judgments = order
        .iter()
        .map(|&n| Disjudgment {
            context: nodes[n].keys.iter().map(|k| rep[k]).collect(),
            goal: nodes[n].goal,
            addresses: vec![addr[&n]],
        })
        .collect();
    let answers = edges
        .into_iter()
        .map(|(q, n, i, m)| ((q, addr[&n]), (i, addr[&m])))
        .collect();
    Some(Soup {
        addr_len,
        judgments,
        answers,
    })
}

/// [`find_soup`] with deletion rounds visiting candidates in reverse order;
/// deletion is confluent, so the verdict must match.
pub fn find_soup_reversed(
    a: &Analysis,
    max_judgments: usize,
    budget: &dyn Budget,
) -> Result<SoupSearch> {
    let nodes = candidate_graph(a, max_judgments, budget)?;
    let alive = deletion(&nodes, (0..nodes.len()).rev().collect());
    Ok(SoupSearch {
        soup: assemble(a, &nodes, &alive),
        candidates: nodes.len(),
    })
}

/// Reads the soup encoded by a stable model: `Γ_ξ` from the `e` atoms and
/// the goal from the `g` atom of every address that has one.
pub fn soup_from_model(m: &Model, t: &Translation, g: &GroundProgram) -> Result<Soup> {
    if !is_stable(g, m)? {
        return Err(Error::InvalidModel(
            "not a stable model of the translation".into(),
        ));
    }
    let a = &t.analysis;
    let l = t.addr_len;
    let mut ctx: BTreeMap<Address, BTreeSet<usize>> = BTreeMap::new();
    let mut neg: BTreeSet<(usize, Address)> = BTreeSet::new();
    let mut goals: BTreeMap<Address, Vec<usize>> = BTreeMap::new();
    let mut raw_answers: BTreeMap<(usize, Address), (usize, Address)> = BTreeMap::new();
    for atom in m {
        let p = atom.predicate.as_str();
        if p == "e" {
            let (i, x) = a.decode_e(atom, l)?;
            ctx.entry(x).or_default().insert(i);
        } else if p == "ebar" {
            neg.insert(a.decode_e(atom, l)?);
        } else if let Some((goal, x)) = a.decode_g(atom)? {
            goals.entry(x).or_default().push(goal);
        } else if let Some(i) = p.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
            let (q, xs) = a.decode_question(atom, l)?;
            raw_answers.entry((q, xs[0])).or_insert((i, xs[1]));
        }
    }
    for (x, is) in &ctx {
        if let Some(i) = is.iter().find(|&&i| neg.contains(&(i, *x))) {
            return Err(Error::InvalidModel(format!(
                "both e and ebar hold for {} at {}",
                a.instance_formula(*i),
                show_address(*x, l)
            )));
        }
    }
    let mut groups: BTreeMap<(BTreeSet<usize>, usize), Vec<Address>> = BTreeMap::new();
    for (x, gs) in &goals {
        if gs.len() != 1 {
            return Err(Error::InvalidModel(format!(
                "{} goals at address {}",
                gs.len(),
                show_address(*x, l)
            )));
        }
        let c = ctx.get(x).cloned().unwrap_or_default();
        groups.entry((c, gs[0])).or_default().push(*x);
    }
    let mut judgments: Vec<Disjudgment> = groups
        .into_iter()
        .map(|((context, goal), addresses)| Disjudgment {
            context,
            goal,
            addresses,
        })
        .collect();
    judgments.sort_by_key(|d| d.addresses[0]);
    let answers = raw_answers
        .into_iter()
        .filter(|((_, x), _)| goals.contains_key(x))
        .collect();
    Ok(Soup {
        addr_len: l,
        judgments,
        answers,
    })
}

/// A model built from a soup.
#[derive(Debug, Clone)]
pub struct Boiled {
    pub model: Model,
    /// Judgments dropped because no chain of answers reaches them.
    pub trimmed: usize,
    /// Judgment index per address, if the address is in use.
    pub placement: Vec<Option<usize>>,
}

/// Builds a stable model of `t` from a soup.
///
/// The soup is trimmed to the judgments reachable from the initial one
/// through answers. The initial judgment sits at address 0; every judgment
/// that answers some question gets an address of its own, and spare
/// addresses repeat the last such judgment. When no judgment is an answer
/// the spare addresses stay empty, since a goal there would be unsupported.
pub fn model_from_soup(z: &Soup, t: &Translation) -> Result<Boiled> {
    let a = &t.analysis;
    let report = check_soup(z, a);
    if !report.ok {
        return Err(Error::Invalid(format!(
            "not a soup: {}",
            report.diagnostics.join("; ")
        )));
    }
    let keys: Vec<BTreeSet<usize>> = z
        .judgments
        .iter()
        .map(|d| context_keys(a, &d.context))
        .collect();
    let n = z.judgments.len();
    let root = z
        .judgments
        .iter()
        .position(|d| d.addresses.contains(&0))
        .expect("checked");

    // Answer edges between judgments, then reachability from the root.
    let mut answered_by: Vec<bool> = vec![false; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(j) = queue.pop_front() {
        for q in questions_at(a, &keys[j], z.judgments[j].goal) {
            let k = a.questions[q].subgoals.len();
            for jj in 0..n {
                if (1..=k).any(|i| is_answer(a, q, i, &keys[j], &keys[jj], z.judgments[jj].goal)) {
                    answered_by[jj] = true;
                    if !seen[jj] {
                        seen[jj] = true;
                        order.push(jj);
                        queue.push_back(jj);
                    }
                }
            }
        }
    }
    let trimmed = n - order.len();

    let total = t.addresses() as usize;
    let mut placement: Vec<Option<usize>> = vec![None; total];
    placement[0] = Some(root);
    let answering: Vec<usize> = order.iter().copied().filter(|&j| answered_by[j]).collect();
    let needed = 1 + answering.len();
    if needed > total {
        return Err(Error::AddressSpace {
            needed,
            available: total,
        });
    }
    for (k, &j) in answering.iter().enumerate() {
        placement[k + 1] = Some(j);
    }
    if let Some(&last) = answering.last() {
        for p in placement.iter_mut().skip(needed) {
            *p = Some(last);
        }
    }

    let l = t.addr_len;
    let mut m = Model::new();
    for c in &t.program.clauses {
        if c.body.is_empty() {
            m.insert(c.head.ground(&BTreeMap::new()));
        }
    }
    let init: BTreeSet<usize> = a.initial_context().into_iter().collect();
    // E-membership per address, by instance.
    let mut member: Vec<Vec<bool>> = Vec::with_capacity(total);
    for (x, p) in placement.iter().enumerate() {
        let row: Vec<bool> = (0..a.instances.len())
            .map(|i| match p {
                _ if x == 0 => init.contains(&i),
                Some(j) => keys[*j].contains(&a.instances[i].key),
                None => false,
            })
            .collect();
        for (i, &e) in row.iter().enumerate() {
            m.insert(if e {
                a.e_atom(i, x as u32, l)
            } else {
                a.ebar_atom(i, x as u32, l)
            });
        }
        member.push(row);
    }
    for (x, p) in placement.iter().enumerate() {
        let Some(j) = *p else { continue };
        let goal = z.judgments[j].goal;
        m.insert(a.g_atom(goal, x as u32, l));
        for (qi, q) in a.questions.iter().enumerate() {
            if q.head != goal || !member[x][q.inst] {
                continue;
            }
            m.insert(a.q_atom(qi, x as u32, l));
            let mut any = false;
            for i in 1..=q.subgoals.len() {
                for (y, py) in placement.iter().enumerate() {
                    let valid = y != 0
                        && py.is_some_and(|jj| {
                            is_answer(a, qi, i, &keys[j], &keys[jj], z.judgments[jj].goal)
                        });
                    any |= valid;
                    m.insert(a.a_atom(qi, i, x as u32, y as u32, l, !valid));
                }
            }
            if any {
                m.insert(a.y_atom(qi, x as u32, l));
            }
        }
    }
    Ok(Boiled {
        model: m,
        trimmed,
        placement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::{enumerate_stable_models, find_stable_model};
    use crate::proof::prove_sigma1;
    use crate::sigma_to_asp::{analyze, translate, DEFAULT_EMISSION_CAP};
    use crate::syntax::parse_formula;
    use crate::Unlimited;

    fn an(s: &str) -> Analysis {
        analyze(&parse_formula(s).unwrap()).unwrap()
    }

    fn keys_of(a: &Analysis, fs: &[&str]) -> BTreeSet<usize> {
        fs.iter()
            .map(|f| {
                let f = crate::sigma_to_asp::alpha_normal(&parse_formula(f).unwrap());
                a.keys.iter().position(|k| *k == f).unwrap()
            })
            .collect()
    }

    #[test]
    fn questions_at_examples() {
        let a = an("b -> a");
        let ks = keys_of(&a, &["b"]);
        assert!(questions_at(&a, &ks, a.goal).is_empty());
        let a = an("a -> a");
        assert_eq!(questions_at(&a, &keys_of(&a, &["a"]), a.goal).len(), 1);
        let a = an("(forall y. P(y) -> Q(c)) -> P(d) -> Q(c)");
        let ks = keys_of(&a, &["forall y. P(y) -> Q(c)"]);
        assert_eq!(questions_at(&a, &ks, a.goal).len(), 2);
    }

    #[test]
    fn find_soup_examples() {
        let a = an("b -> a");
        let z = find_soup(&a, 1000, &Unlimited).unwrap().soup.unwrap();
        assert_eq!(z.judgments.len(), 1);
        assert!(check_soup(&z, &a).ok);
        assert!(find_soup(&an("a -> a"), 1000, &Unlimited)
            .unwrap()
            .soup
            .is_none());
        let a = an("((a -> b) -> a) -> a");
        let z = find_soup(&a, 1000, &Unlimited).unwrap().soup.unwrap();
        assert_eq!(z.judgments.len(), 2);
        assert!(check_soup(&z, &a).ok);
    }

    #[test]
    fn check_rejects_unanswered() {
        let a = an("a -> a");
        let z = Soup {
            addr_len: 1,
            judgments: vec![Disjudgment {
                context: a.initial_context().into_iter().collect(),
                goal: a.goal,
                addresses: vec![0],
            }],
            answers: BTreeMap::new(),
        };
        let r = check_soup(&z, &a);
        assert!(!r.ok);
        assert!(r.diagnostics[0].contains("unanswered"));
        let mut bad = z.clone();
        bad.judgments[0].addresses = vec![1];
        assert!(check_soup(&bad, &a).diagnostics[0].contains("address 0"));
    }

    #[test]
    fn malformed_answer_entry() {
        let a = an("((a -> b) -> a) -> a");
        let mut z = find_soup(&a, 1000, &Unlimited).unwrap().soup.unwrap();
        let key = *z.answers.keys().next().unwrap();
        z.answers.insert(key, (1, 0));
        let r = check_soup(&z, &a);
        assert!(r.diagnostics[0].contains("malformed"), "{:?}", r);
    }

    #[test]
    fn duality_with_prover() {
        for s in [
            "a",
            "a -> a",
            "b -> a",
            "((a -> b) -> a) -> a",
            "(a -> b) -> (b -> c) -> a -> c",
            "(c -> b) -> (b -> a) -> a",
            "(forall x. P(x)) -> P(c)",
            "(forall x. P(x) -> Q(x)) -> P(c) -> Q(c)",
            "(forall x. P(x) -> Q(x)) -> P(c) -> Q(d)",
            "(forall x. P(x) -> q) -> P(c) -> q",
            "(forall x. (P(x) -> q) -> q) -> q",
        ] {
            let phi = parse_formula(s).unwrap();
            let a = analyze(&phi).unwrap();
            let soup = find_soup(&a, 100_000, &Unlimited).unwrap();
            let rev = find_soup_reversed(&a, 100_000, &Unlimited).unwrap();
            let proof = prove_sigma1(&phi, &Unlimited).unwrap();
            assert_eq!(soup.soup.is_some(), proof.is_none(), "{s}");
            assert_eq!(soup.soup, rev.soup, "{s}");
        }
    }

    #[test]
    fn conversions_round_trip() {
        for s in [
            "b -> a",
            "a",
            "((a -> b) -> a) -> a",
            "(c -> b) -> (b -> a) -> a",
            "P(d) -> (forall x. P(x) -> Q(x)) -> Q(c)",
        ] {
            let phi = parse_formula(s).unwrap();
            let a = analyze(&phi).unwrap();
            let l = full_addr_len(&a, 10_000, &Unlimited).unwrap();
            let t = translate(&phi, l, false, DEFAULT_EMISSION_CAP).unwrap();
            let g = t.ground().unwrap();
            let z = find_soup(&a, 10_000, &Unlimited).unwrap().soup.unwrap();
            let boiled = model_from_soup(&z, &t).unwrap();
            assert!(is_stable(&g, &boiled.model).unwrap(), "{s}");
            for m in enumerate_stable_models(&g, Some(5), &Unlimited).unwrap() {
                let z = soup_from_model(&m, &t, &g).unwrap();
                assert!(check_soup(&z, &a).ok, "{s}: {:?}", check_soup(&z, &a));
                let back = model_from_soup(&z, &t).unwrap();
                assert!(is_stable(&g, &back.model).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn b_to_a_at_one_bit() {
        let phi = parse_formula("b -> a").unwrap();
        let t = translate(&phi, 1, false, DEFAULT_EMISSION_CAP).unwrap();
        let g = t.ground().unwrap();
        let z = find_soup(&t.analysis, 100, &Unlimited)
            .unwrap()
            .soup
            .unwrap();
        let boiled = model_from_soup(&z, &t).unwrap();
        assert!(is_stable(&g, &boiled.model).unwrap());
        assert_eq!(boiled.placement, vec![Some(0), None]);
        let m = find_stable_model(&g, &Unlimited).unwrap().unwrap();
        let z2 = soup_from_model(&m, &t, &g).unwrap();
        assert_eq!(z2.judgments.len(), 1);
    }
}
