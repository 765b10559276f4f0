//! Compiles stable-model entailment `P ⊨ Ω` into provability of a Σ₁ formula.
//!
//! The output is `ψ₁ → … → ψ_d → lupa` where each axiom `ψᵢ` is a closed Π₁
//! formula whose implication subformulas all have nullary targets. A proof
//! of `lupa` splits on every base atom to fix a model `M` and then shows that
//! `Ω ∈ M`, or that `P` is unsound for `M` (goal `caseA`), or that `P` is
//! incomplete for `M` (goal `caseB`).
//!
//! Symbols of the output, for source predicates `R`, `Q` and the `j`-th clause:
//!
//! | symbol | meaning |
//! |---|---|
//! | `R` | `R(c)` chosen true in `M` |
//! | `bar_R` | `R(c)` chosen false in `M` |
//! | `bang_R` | `R(c)` visited while deriving from `P̄ ∪ M̄` |
//! | `query_R` | `R(c)` claimed underivable |
//! | `pair_R_Q` | the goal `R(…)` passed to the subgoal `Q(…)` |
//! | `k<j>_<i>`, `kbar<j>_<i>` | clause `j` with `i` body-only variables fixed |
//! | `lupa`, `caseA`, `caseB`, `circ`, `bullet` | nullary control atoms |
//!
//! Underscores inside source names are doubled in derived symbols, so the
//! mangling is injective. A source predicate that collides with a derived
//! symbol is rejected.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::asp::{ground, interpretation, Model, DEFAULT_GROUNDING_CAP};
use crate::proof::{prove_with_cap, Environment, DEFAULT_JUDGMENT_CAP};
use crate::syntax::{Clause, Formula, GroundAtom, Program, Term};
use crate::{Budget, Error, Result};

pub const LUPA: &str = "lupa";
pub const CASE_A: &str = "caseA";
pub const CASE_B: &str = "caseB";
pub const CIRC: &str = "circ";
pub const BULLET: &str = "bullet";

/// Number of axiom schemas.
pub const SCHEMAS: usize = 13;

/// Short description of each schema, indexed by schema number minus one.
pub const SCHEMA_NAMES: [&str; SCHEMAS] = [
    "model choice",
    "goal openers",
    "unsoundness openers",
    "incompleteness openers",
    "clause simulation",
    "question fan-out",
    "constant mismatch",
    "repeated-variable mismatch",
    "body-only variable expansion",
    "subgoal transitions",
    "negative-literal closers",
    "memory transitivity",
    "loop closers",
];

fn esc(name: &str) -> String {
    name.replace('_', "__")
}

pub fn bar(r: &str) -> String {
    format!("bar_{}", esc(r))
}

pub fn bang(r: &str) -> String {
    format!("bang_{}", esc(r))
}

pub fn query(r: &str) -> String {
    format!("query_{}", esc(r))
}

pub fn pair(r: &str, q: &str) -> String {
    format!("pair_{}_{}", esc(r), esc(q))
}

/// `Kⁱ` for the clause at position `j` (0-based).
pub fn k(j: usize, i: usize) -> String {
    format!("k{j}_{i}")
}

/// `K̄ⁱ` for the clause at position `j` (0-based).
pub fn kbar(j: usize, i: usize) -> String {
    format!("kbar{j}_{i}")
}

/// One instance of a schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    /// Schema number, 1 to 13.
    pub schema: u8,
    /// What the instance was generated from: a predicate, clause index or tuple.
    pub source: String,
    pub formula: Formula,
}

/// The translated formula, kept as its list of axioms.
#[derive(Debug, Clone)]
pub struct Translation {
    pub axioms: Vec<Axiom>,
    pub omega: String,
}

impl Translation {
    /// `ψ₁ → … → ψ_d → lupa`.
    pub fn formula(&self) -> Formula {
        Formula::chain(
            self.axioms.iter().map(|a| a.formula.clone()).collect(),
            Formula::prop(LUPA),
        )
    }

    /// Axiom counts per schema, index 0 holding schema 1.
    pub fn stats(&self) -> [usize; SCHEMAS] {
        let mut out = [0; SCHEMAS];
        for a in &self.axioms {
            out[a.schema as usize - 1] += 1;
        }
        out
    }
}

fn atom(p: &str, args: &[String]) -> Formula {
    Formula::Atom {
        predicate: p.to_string(),
        args: args.to_vec(),
    }
}

fn names(args: &[Term]) -> Vec<String> {
    args.iter().map(|t| t.name().to_string()).collect()
}

fn generic(n: usize, from: usize) -> Vec<String> {
    (from..from + n).map(|i| format!("z{i}")).collect()
}

/// `p → q`, with `q` nullary.
fn to(p: Formula, q: &str) -> Formula {
    Formula::imp(p, Formula::prop(q))
}

struct Emitter {
    axioms: Vec<Axiom>,
}

impl Emitter {
    fn push(&mut self, schema: u8, source: String, vars: &[String], body: Formula) {
        self.axioms.push(Axiom {
            schema,
            source,
            formula: Formula::forall_many(vars, body),
        });
    }
}

/// Every symbol the translation introduces besides the source predicates.
fn derived_symbols(p: &Program, omega: &str) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = [LUPA, CASE_A, CASE_B, CIRC, BULLET]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if p.arity(omega).is_none() {
        out.insert(omega.to_string());
    }
    for r in p.signature.keys() {
        out.insert(bar(r));
        out.insert(bang(r));
        out.insert(query(r));
        for q in p.signature.keys() {
            out.insert(pair(r, q));
        }
    }
    for (j, c) in p.clauses.iter().enumerate() {
        for i in 0..=c.body_only_variables().len() {
            out.insert(k(j, i));
            out.insert(kbar(j, i));
        }
    }
    out
}

/// Emits the axioms for `P` and the nullary goal `omega`.
///
/// `omega` may be a predicate of `P` (then `Ω` is that atom) or fresh.
pub fn translate(p: &Program, omega: &str) -> Result<Translation> {
    if let Some(a) = p.arity(omega) {
        if a != 0 {
            return Err(Error::Invalid(format!(
                "goal `{omega}` must be nullary, it has arity {a}"
            )));
        }
    }
    let derived = derived_symbols(p, omega);
    let reserved = [LUPA, CASE_A, CASE_B, CIRC, BULLET];
    if reserved.contains(&omega) {
        return Err(Error::Invalid(format!("goal name `{omega}` is reserved")));
    }
    for r in p.signature.keys() {
        if derived.contains(r) && r != omega {
            return Err(Error::Invalid(format!(
                "predicate `{r}` collides with a symbol of the translation"
            )));
        }
    }

    let consts: Vec<String> = p.domain.iter().cloned().collect();
    let preds: Vec<(&String, usize)> = p.signature.iter().map(|(r, &a)| (r, a)).collect();
    let mut e = Emitter { axioms: Vec::new() };

    // 1: choose R(z) or bar_R(z).
    for &(r, a) in &preds {
        let z = generic(a, 1);
        let body = Formula::chain(
            [to(atom(r, &z), LUPA), to(atom(&bar(r), &z), LUPA)].into(),
            Formula::prop(LUPA),
        );
        e.push(1, r.clone(), &z, body);
    }

    // 2
    for g in [omega, CASE_A, CASE_B] {
        e.push(2, g.to_string(), &[], to(Formula::prop(g), LUPA));
    }

    // 3: bar_R(z) -> (bang_R(z) -> bullet) -> caseA
    for &(r, a) in &preds {
        let z = generic(a, 1);
        let body = Formula::chain(
            [atom(&bar(r), &z), to(atom(&bang(r), &z), BULLET)].into(),
            Formula::prop(CASE_A),
        );
        e.push(3, r.clone(), &z, body);
    }

    // 4: R(z) -> (query_R(z) -> circ) -> caseB
    for &(r, a) in &preds {
        let z = generic(a, 1);
        let body = Formula::chain(
            [atom(r, &z), to(atom(&query(r), &z), CIRC)].into(),
            Formula::prop(CASE_B),
        );
        e.push(4, r.clone(), &z, body);
    }

    // 5: one derivation step of P̄ ∪ M̄, read backwards.
    for (j, c) in p.clauses.iter().enumerate() {
        let vars: Vec<String> = c.variables().iter().map(|v| v.to_string()).collect();
        let mut prem = Vec::new();
        prem.push(atom(&bang(&c.head.predicate), &names(&c.head.args)));
        for b in c.positive_body() {
            prem.push(to(atom(&bang(&b.predicate), &names(&b.args)), BULLET));
        }
        for b in c.negative_body() {
            prem.push(atom(&bar(&b.predicate), &names(&b.args)));
        }
        e.push(
            5,
            clause_source(j, c),
            &vars,
            Formula::chain(prem, Formula::prop(BULLET)),
        );
    }

    // 6: query_R(z) -> (K0(z) -> Kbar0) ... -> circ, over the clauses for R.
    for &(r, a) in &preds {
        let z = generic(a, 1);
        let mut prem = [atom(&query(r), &z)].to_vec();
        for (j, _) in p
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| &c.head.predicate == r)
        {
            prem.push(to(atom(&k(j, 0), &z), &kbar(j, 0)));
        }
        e.push(6, r.clone(), &z, Formula::chain(prem, Formula::prop(CIRC)));
    }

    // 7: head constant c at a position holding d != c.
    for (j, c) in p.clauses.iter().enumerate() {
        let l = c.head.arity();
        for (pos, t) in c.head.args.iter().enumerate() {
            let Term::Const(cn) = t else { continue };
            for d in consts.iter().filter(|d| *d != cn) {
                let mut args = generic(l, 1);
                args[pos] = d.clone();
                let vars: Vec<String> = generic(l, 1)
                    .into_iter()
                    .enumerate()
                    .filter(|&(i, _)| i != pos)
                    .map(|(_, v)| v)
                    .collect();
                e.push(
                    7,
                    format!("{}, position {}, {d}", clause_source(j, c), pos + 1),
                    &vars,
                    to(atom(&k(j, 0), &args), &kbar(j, 0)),
                );
            }
        }
    }

    // 8: repeated head variable at positions holding c != d.
    for (j, c) in p.clauses.iter().enumerate() {
        let l = c.head.arity();
        let args = &c.head.args;
        for p1 in 0..l {
            for p2 in p1 + 1..l {
                if !(args[p1].is_var() && args[p1] == args[p2]) {
                    continue;
                }
                for c1 in &consts {
                    for c2 in consts.iter().filter(|c2| *c2 != c1) {
                        let mut inst = generic(l, 1);
                        inst[p1] = c1.clone();
                        inst[p2] = c2.clone();
                        let vars: Vec<String> = generic(l, 1)
                            .into_iter()
                            .enumerate()
                            .filter(|&(i, _)| i != p1 && i != p2)
                            .map(|(_, v)| v)
                            .collect();
                        e.push(
                            8,
                            format!(
                                "{}, positions {} and {}, {c1} {c2}",
                                clause_source(j, c),
                                p1 + 1,
                                p2 + 1
                            ),
                            &vars,
                            to(atom(&k(j, 0), &inst), &kbar(j, 0)),
                        );
                    }
                }
            }
        }
    }

    // 9: fix the body-only variables one at a time.
    for (j, c) in p.clauses.iter().enumerate() {
        let l = c.head.arity();
        let m = c.body_only_variables().len();
        for i in 0..m {
            let vars = generic(l + i, 1);
            let mut prem = [atom(&k(j, i), &vars)].to_vec();
            for d in &consts {
                let mut next = vars.clone();
                next.push(d.clone());
                prem.push(to(atom(&k(j, i + 1), &next), &kbar(j, i + 1)));
            }
            e.push(
                9,
                format!("{}, level {i}", clause_source(j, c)),
                &vars,
                Formula::chain(prem, Formula::prop(&kbar(j, i))),
            );
        }
    }

    // 10 and 11: close K^m by a failing positive subgoal or a true negated atom.
    for (j, c) in p.clauses.iter().enumerate() {
        let (vars, km) = clause_top(j, c);
        let r = &c.head.predicate;
        let u = names(&c.head.args);
        for b in c.positive_body() {
            let v = names(&b.args);
            let mut uv = u.clone();
            uv.extend(v.iter().cloned());
            let inner = Formula::chain(
                [
                    atom(&query(&b.predicate), &v),
                    atom(&pair(r, &b.predicate), &uv),
                ]
                .into(),
                Formula::prop(CIRC),
            );
            e.push(
                10,
                format!("{}, {b}", clause_source(j, c)),
                &vars,
                Formula::chain(
                    [km.clone(), inner].into(),
                    Formula::prop(&kbar(j, c.body_only_variables().len())),
                ),
            );
        }
        for b in c.negative_body() {
            e.push(
                11,
                format!("{}, not {b}", clause_source(j, c)),
                &vars,
                Formula::chain(
                    [km.clone(), atom(&b.predicate, &names(&b.args))].into(),
                    Formula::prop(&kbar(j, c.body_only_variables().len())),
                ),
            );
        }
    }

    // 12: pair_R_P(z,y) -> pair_P_Q(y,w) -> (pair_R_Q(z,w) -> circ) -> circ
    for &(r, ra) in &preds {
        for &(q1, pa) in &preds {
            for &(q2, qa) in &preds {
                let z = generic(ra, 1);
                let y = generic(pa, ra + 1);
                let w = generic(qa, ra + pa + 1);
                let cat = |a: &[String], b: &[String]| -> Vec<String> {
                    a.iter().chain(b).cloned().collect()
                };
                let mut vars = z.clone();
                vars.extend(y.iter().cloned());
                vars.extend(w.iter().cloned());
                let body = Formula::chain(
                    [
                        atom(&pair(r, q1), &cat(&z, &y)),
                        atom(&pair(q1, q2), &cat(&y, &w)),
                        to(atom(&pair(r, q2), &cat(&z, &w)), CIRC),
                    ]
                    .into(),
                    Formula::prop(CIRC),
                );
                e.push(12, format!("{r} {q1} {q2}"), &vars, body);
            }
        }
    }

    // 13: pair_P_P(z,z) -> circ
    for &(r, a) in &preds {
        let z = generic(a, 1);
        let zz: Vec<String> = z.iter().chain(&z).cloned().collect();
        e.push(13, r.clone(), &z, to(atom(&pair(r, r), &zz), CIRC));
    }

    Ok(Translation {
        axioms: e.axioms,
        omega: omega.to_string(),
    })
}

fn clause_source(j: usize, c: &Clause) -> String {
    format!("clause {j}: {c}")
}

/// Variables `x⃗ y⃗` of a clause and the atom `K^m(u⃗, y⃗)`.
fn clause_top(j: usize, c: &Clause) -> (Vec<String>, Formula) {
    let ys: Vec<String> = c
        .body_only_variables()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let mut vars: Vec<String> = c.head_variables().iter().map(|v| v.to_string()).collect();
    vars.extend(ys.iter().cloned());
    let mut args = names(&c.head.args);
    args.extend(ys.iter().cloned());
    (vars, atom(&k(j, ys.len()), &args))
}

fn ground_formula(a: &GroundAtom, barred: bool) -> Formula {
    let p = if barred {
        bar(&a.predicate)
    } else {
        a.predicate.clone()
    };
    atom(&p, &a.args)
}

/// The axioms together with `M ∪ M̄`, named `Ax<i>` and `M<i>`.
pub fn gamma_m(t: &Translation, p: &Program, m: &Model) -> Result<Environment> {
    let base = p.base();
    let in_base: BTreeSet<&GroundAtom> = base.iter().collect();
    if let Some(a) = m.iter().find(|a| !in_base.contains(a)) {
        return Err(Error::InvalidModel(format!("{a} is not in the base")));
    }
    let mut env = Environment::new();
    for (i, a) in t.axioms.iter().enumerate() {
        env.insert(format!("Ax{i}"), a.formula.clone());
    }
    for (i, a) in base.iter().enumerate() {
        env.insert(format!("M{i}"), ground_formula(a, !m.contains(a)));
    }
    Ok(env)
}

/// Prover verdict on `Γ_M ⊢ goal`.
fn decide(p: &Program, m: &Model, goal: &str, budget: &dyn Budget) -> Result<bool> {
    let t = translate(p, &fresh_goal(p))?;
    let env = gamma_m(&t, p, m)?;
    let (r, _) = prove_with_cap(&env, &Formula::prop(goal), DEFAULT_JUDGMENT_CAP, budget)?;
    Ok(r.is_some())
}

fn fresh_goal(p: &Program) -> String {
    let mut g = String::from("omega");
    while p.signature.contains_key(&g) {
        g.push('_');
    }
    g
}

/// `Γ_M ⊢ caseA`, cross-checked against "some atom of `I(P,M)` is missing from `M`".
pub fn check_case_a(p: &Program, m: &Model, budget: &dyn Budget) -> Result<bool> {
    let g = ground(p, DEFAULT_GROUNDING_CAP)?;
    let i = interpretation(&g, m)?;
    let expect = i.iter().any(|a| !m.contains(a));
    let got = decide(p, m, CASE_A, budget)?;
    if got != expect {
        return Err(Error::CrossCheck(format!(
            "caseA: prover says {got}, unsoundness test says {expect}"
        )));
    }
    Ok(got)
}

/// `Γ_M ⊢ caseB`, cross-checked against "some atom of `M` is missing from `I(P,M)`".
pub fn check_case_b(p: &Program, m: &Model, budget: &dyn Budget) -> Result<bool> {
    let g = ground(p, DEFAULT_GROUNDING_CAP)?;
    let i = interpretation(&g, m)?;
    let expect = m.iter().any(|a| !i.contains(a));
    let got = decide(p, m, CASE_B, budget)?;
    if got != expect {
        return Err(Error::CrossCheck(format!(
            "caseB: prover says {got}, incompleteness test says {expect}"
        )));
    }
    Ok(got)
}

/// Whether every implication subformula has a nullary target.
pub fn is_easy(f: &Formula) -> bool {
    let mut ok = true;
    f.walk(&mut |g| {
        if let Formula::Impl(_, r) = g {
            if r.target().predicate().is_some_and(|(_, a)| a != 0) {
                ok = false;
            }
        }
    });
    ok
}

/// Renders the translation with a header comment describing the vocabulary.
pub fn render(t: &Translation, p: &Program) -> String {
    let mut s = String::new();
    s.push_str("% Sigma1 formula compiled from an answer set program.\n");
    s.push_str(&format!(
        "% goal {}; control atoms {LUPA} {CASE_A} {CASE_B} {CIRC} {BULLET}\n",
        t.omega
    ));
    s.push_str("% derived symbols: bar_R bang_R query_R pair_R_Q k<j>_<i> kbar<j>_<i>; '_' in source names is doubled\n");
    s.push_str(&format!(
        "% {} predicates, {} clauses, {} constants, {} axioms\n",
        p.signature.len(),
        p.clauses.len(),
        p.domain.len(),
        t.axioms.len()
    ));
    let mut last = 0;
    for a in &t.axioms {
        if a.schema != last {
            s.push_str(&format!(
                "% schema {}: {}\n",
                a.schema,
                SCHEMA_NAMES[a.schema as usize - 1]
            ));
            last = a.schema;
        }
        s.push_str(&format!("({}) ->\n", a.formula));
    }
    s.push_str(LUPA);
    s.push('\n');
    s
}

/// Symbol table of a translation, for reports.
pub fn vocabulary(p: &Program, omega: &str) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for s in [LUPA, CASE_A, CASE_B, CIRC, BULLET, omega] {
        out.insert(s.to_string(), 0);
    }
    for (r, &a) in &p.signature {
        out.insert(r.clone(), a);
        out.insert(bar(r), a);
        out.insert(bang(r), a);
        out.insert(query(r), a);
        for (q, &b) in &p.signature {
            out.insert(pair(r, q), a + b);
        }
    }
    for (j, c) in p.clauses.iter().enumerate() {
        let l = c.head.arity();
        for i in 0..=c.body_only_variables().len() {
            out.insert(k(j, i), l + i);
            out.insert(kbar(j, i), 0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::stable_models;
    use crate::proof::{check, is_lnf, prove_sigma1};
    use crate::syntax::{parse_formula, parse_program};
    use crate::Unlimited;

    fn tr(src: &str) -> (Program, Translation) {
        let p = parse_program(src).unwrap();
        let t = translate(&p, "omega").unwrap();
        (p, t)
    }

    #[test]
    fn hand_count_for_self_negation() {
        let (_, t) = tr("p :- not p.");
        assert_eq!(t.stats(), [1, 3, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1]);
        assert_eq!(t.axioms.len(), 11);
    }

    #[test]
    fn clause_simulation_shape() {
        let (_, t) = tr("#domain a. r(x) :- p(x), q(x), not s(x).");
        let a = t.axioms.iter().find(|a| a.schema == 5).unwrap();
        let expect = parse_formula(
            "forall x. bang_r(x) -> (bang_p(x) -> bullet) -> (bang_q(x) -> bullet) -> bar_s(x) -> bullet",
        )
        .unwrap();
        assert!(a.formula.alpha_eq(&expect), "{}", a.formula);
    }

    #[test]
    fn expansion_chain_has_one_axiom_per_variable() {
        let (_, t) = tr("#domain a, b. r :- p(y1, y2, y3).");
        let nine: Vec<_> = t.axioms.iter().filter(|a| a.schema == 9).collect();
        assert_eq!(nine.len(), 3);
        for a in nine {
            let (prem, _) = a
                .formula
                .pi_shape()
                .premises
                .iter()
                .fold((0, ()), |(n, _), _| (n + 1, ()));
            assert_eq!(prem, 3, "{}", a.formula);
        }
    }

    #[test]
    fn repeated_variable_closer() {
        let (_, t) = tr("#domain a, c. r(x, y, x) :- s(y).");
        let want = parse_formula("forall z. k0_0(a, z, c) -> kbar0_0").unwrap();
        assert!(t
            .axioms
            .iter()
            .any(|a| a.schema == 8 && a.formula.alpha_eq(&want)));
        assert_eq!(t.stats()[7], 2);
    }

    #[test]
    fn constant_closer() {
        let (_, t) = tr("#domain a, b. r(a, y) :- s(y).");
        let want = parse_formula("forall z. k0_0(b, z) -> kbar0_0").unwrap();
        assert!(t
            .axioms
            .iter()
            .any(|a| a.schema == 7 && a.formula.alpha_eq(&want)));
    }

    #[test]
    fn fan_out_lists_clauses_in_order() {
        let (_, t) = tr("p :- q. r :- q. p :- not r.");
        let six = t
            .axioms
            .iter()
            .find(|a| a.schema == 6 && a.source == "p")
            .unwrap();
        assert_eq!(
            six.formula.to_string(),
            "query_p -> (k0_0 -> kbar0_0) -> (k2_0 -> kbar2_0) -> circ"
        );
    }

    #[test]
    fn output_is_easy_sigma1() {
        let (p, t) = tr("#domain a, b. p(x) :- q(x, y), not p(y). q(a, b). q(x, x) :- p(x).");
        let f = t.formula();
        assert!(f.classify().is_sigma1());
        assert!(is_easy(&f));
        for a in &t.axioms {
            assert!(a.formula.classify().is_pi1());
            assert!(a.formula.free_vars().is_subset(&p.domain), "{}", a.formula);
        }
        let again = parse_formula(&render(&t, &parse_program("p.").unwrap())).unwrap();
        assert!(again.alpha_eq(&f));
    }

    #[test]
    fn name_collisions() {
        let p = parse_program("bar_p. p.").unwrap();
        assert!(matches!(translate(&p, "omega"), Err(Error::Invalid(_))));
        let p = parse_program("a_b. a. b__x.").unwrap();
        assert_ne!(pair("a_b", "c"), pair("a", "b_c"));
        assert!(translate(&p, "omega").is_ok());
        let p = parse_program("q(c).").unwrap();
        assert!(matches!(translate(&p, "q"), Err(Error::Invalid(_))));
    }

    fn agrees(src: &str) {
        let (p, t) = tr(src);
        let phi = t.formula();
        let proof = prove_sigma1(&phi, &Unlimited).unwrap();
        let empty = stable_models(&p, 22, &Unlimited).unwrap().is_empty();
        assert_eq!(proof.is_some(), empty, "{src}");
        if let Some(pr) = proof {
            let env = Environment::new();
            assert!(check(&env, &pr, &phi));
            assert!(is_lnf(&env, &pr, &phi));
        }
    }

    #[test]
    fn provable_iff_no_stable_model() {
        agrees("p :- not p.");
        agrees("p :- not q. q :- not p.");
        agrees("p.");
        agrees("p :- p.");
        agrees("p :- not p, q. q.");
        agrees("#domain a, b. p(x) :- not q(x). q(a).");
        agrees("#domain a. p(x) :- not p(x).");
        agrees("#domain a, b. p(x) :- q(y), not p(x). q(b).");
    }

    #[test]
    fn omega_as_program_atom() {
        let p = parse_program("omega :- not q. q :- not omega.").unwrap();
        let t = translate(&p, "omega").unwrap();
        assert!(prove_sigma1(&t.formula(), &Unlimited).unwrap().is_none());
        let p = parse_program("omega :- not q. q :- not omega. omega :- q.").unwrap();
        let t = translate(&p, "omega").unwrap();
        assert!(prove_sigma1(&t.formula(), &Unlimited).unwrap().is_some());
    }

    #[test]
    fn gamma_contents() {
        let p = parse_program("p. q :- q.").unwrap();
        let t = translate(&p, "omega").unwrap();
        let m: Model = [GroundAtom::nullary("p")].into();
        let env = gamma_m(&t, &p, &m).unwrap();
        let facts: Vec<String> = env
            .iter()
            .filter(|(k, _)| k.starts_with('M'))
            .map(|(_, f)| f.to_string())
            .collect();
        assert_eq!(facts, ["p", "bar_q"]);
        let stray: Model = [GroundAtom::nullary("z")].into();
        assert!(gamma_m(&t, &p, &stray).is_err());
    }

    #[test]
    fn case_examples() {
        let b = &Unlimited;
        let fact = parse_program("p.").unwrap();
        let none = Model::new();
        let just_p: Model = [GroundAtom::nullary("p")].into();
        assert!(check_case_a(&fact, &none, b).unwrap());
        assert!(!check_case_a(&fact, &just_p, b).unwrap());
        assert!(!check_case_b(&fact, &just_p, b).unwrap());
        let empty = parse_program("#domain c.")
            .unwrap()
            .with_predicate("p", 0)
            .unwrap();
        assert!(!check_case_a(&empty, &just_p, b).unwrap());
        assert!(check_case_b(&empty, &just_p, b).unwrap());
        let circ = parse_program("p :- p.").unwrap();
        assert!(check_case_b(&circ, &just_p, b).unwrap());
    }
}
