//! Seeded generation of small programs and Σ₁ formulas.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use asp_sigma_core::sigma_to_asp::formula_length;
use asp_sigma_core::syntax::Formula;

/// Shape bounds for a generated corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub max_predicates: usize,
    /// Largest predicate arity.
    pub max_arity: usize,
    /// Largest domain (programs only).
    pub max_domain: usize,
    /// Clauses per program, or the largest formula length.
    pub max_size: usize,
    pub count: usize,
    pub seed: u64,
}

impl CorpusSpec {
    /// Programs over at most two predicates of arity at most one, at most
    /// two constants and at most three clauses.
    pub fn small_programs(count: usize, seed: u64) -> Self {
        CorpusSpec {
            max_predicates: 2,
            max_arity: 1,
            max_domain: 2,
            max_size: 3,
            count,
            seed,
        }
    }

    /// Σ₁ formulas of length at most 8 with predicates of arity at most one.
    pub fn small_formulas(count: usize, seed: u64) -> Self {
        CorpusSpec {
            max_predicates: 2,
            max_arity: 1,
            max_domain: 2,
            max_size: 8,
            count,
            seed,
        }
    }
}

const PREDS: [&str; 4] = ["p", "q", "r", "s"];
const CONSTS: [&str; 4] = ["c", "d", "e", "k"];
const VARS: [&str; 2] = ["x", "y"];

fn atom_text(rng: &mut ChaCha8Rng, pred: &str, arity: usize, terms: &[&str]) -> String {
    if arity == 0 {
        return pred.to_string();
    }
    let args: Vec<&str> = (0..arity)
        .map(|_| terms[rng.random_range(0..terms.len())])
        .collect();
    format!("{pred}({})", args.join(","))
}

/// Program texts, deterministic in the spec. Each declares its domain and
/// ends with a `% predicates` line naming its whole signature, since a
/// predicate may occur in no clause.
pub fn generate_programs(spec: &CorpusSpec) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while out.len() < spec.count && attempts < spec.count * 50 {
        attempts += 1;
        let np = rng.random_range(1..=spec.max_predicates.min(PREDS.len()));
        let preds: Vec<(&str, usize)> = (0..np)
            .map(|i| (PREDS[i], rng.random_range(0..=spec.max_arity)))
            .collect();
        let nd = rng.random_range(1..=spec.max_domain.min(CONSTS.len()));
        let consts = &CONSTS[..nd];
        let mut terms: Vec<&str> = consts.to_vec();
        terms.extend(VARS);
        let nc = rng.random_range(0..=spec.max_size);
        let mut text = format!("#domain {}.\n", consts.join(", "));
        for _ in 0..nc {
            let (h, ha) = preds[rng.random_range(0..preds.len())];
            let mut line = atom_text(&mut rng, h, ha, &terms);
            let nb = rng.random_range(0..=2);
            let body: Vec<String> = (0..nb)
                .map(|_| {
                    let (b, ba) = preds[rng.random_range(0..preds.len())];
                    let a = atom_text(&mut rng, b, ba, &terms);
                    if rng.random_bool(0.5) {
                        format!("not {a}")
                    } else {
                        a
                    }
                })
                .collect();
            if !body.is_empty() {
                line.push_str(" :- ");
                line.push_str(&body.join(", "));
            }
            line.push_str(".\n");
            text.push_str(&line);
        }
        // Unused predicates still belong to the language.
        let sig: Vec<String> = preds.iter().map(|(p, a)| format!("{p}/{a}")).collect();
        text.push_str(&format!("% predicates {}\n", sig.join(" ")));
        if seen.insert(text.clone()) {
            out.push(text);
        }
    }
    out
}

/// Predicates listed on the `% predicates p/1 q/0` line of a generated program.
pub fn declared_predicates(text: &str) -> Vec<(String, usize)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("% predicates "))
        .flat_map(|rest| rest.split_whitespace())
        .filter_map(|pa| {
            let (p, a) = pa.split_once('/')?;
            Some((p.to_string(), a.parse().ok()?))
        })
        .collect()
}

struct FormulaGen<'a> {
    rng: &'a mut ChaCha8Rng,
    arity: usize,
    fresh: usize,
}

impl FormulaGen<'_> {
    fn atom(&mut self, scope: &[String]) -> Formula {
        let bound = !scope.is_empty() && self.rng.random_bool(0.7);
        if self.arity == 0 || (!bound && self.rng.random_bool(0.4)) {
            let p = ["a", "b", "g"][self.rng.random_range(0..3)];
            return Formula::prop(p);
        }
        let p = ["P", "Q"][self.rng.random_range(0..2)];
        let t = if bound {
            scope[self.rng.random_range(0..scope.len())].clone()
        } else {
            ["c", "d"][self.rng.random_range(0..2)].to_string()
        };
        Formula::atom(p, &[&t])
    }

    fn sigma(&mut self, depth: usize, scope: &[String]) -> Formula {
        if depth == 0 || self.rng.random_bool(0.3) {
            return self.atom(scope);
        }
        let l = self.pi(depth - 1, scope);
        let r = self.sigma(depth - 1, scope);
        Formula::imp(l, r)
    }

    fn pi(&mut self, depth: usize, scope: &[String]) -> Formula {
        if depth == 0 {
            return self.atom(scope);
        }
        match self.rng.random_range(0..10) {
            0..=2 => self.atom(scope),
            3..=6 if self.arity > 0 => {
                let x = format!("x{}", self.fresh);
                self.fresh += 1;
                let mut inner = scope.to_vec();
                inner.push(x.clone());
                let body = self.pi(depth, &inner);
                Formula::forall(&x, body)
            }
            _ => {
                let l = self.sigma(depth - 1, scope);
                let r = self.pi(depth - 1, scope);
                Formula::imp(l, r)
            }
        }
    }
}

/// Whether some quantifier of `f` binds an occurring variable.
fn binds(f: &Formula) -> bool {
    let mut found = false;
    f.walk(&mut |g| {
        if let Formula::Forall(x, body) = g {
            found |= body.free_vars().contains(x);
        }
    });
    found
}

/// Distinct Σ₁ formulas of length at most `spec.max_size`, half of them
/// propositional and half with unary predicates, deterministic in the spec.
pub fn generate_formulas(spec: &CorpusSpec) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x5EED_F0F0);
    let mut out = Vec::with_capacity(spec.count);
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while out.len() < spec.count && attempts < spec.count * 2000 {
        attempts += 1;
        // Slots cycle through propositional, unary, and unary with a binder
        // that is actually used.
        let slot = out.len() % 4;
        let arity = if spec.max_arity > 0 && slot != 0 && slot != 2 {
            1
        } else {
            0
        };
        let depth = rng.random_range(1..=4);
        let mut g = FormulaGen {
            rng: &mut rng,
            arity,
            fresh: 0,
        };
        let f = g.sigma(depth, &[]);
        if formula_length(&f) > spec.max_size
            || !f.classify().is_sigma1()
            || f.max_arity() > spec.max_arity
        {
            continue;
        }
        if arity == 1 && f.max_arity() == 0 || slot == 3 && arity == 1 && !binds(&f) {
            continue;
        }
        if seen.insert(f.to_string()) {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use asp_sigma_core::syntax::parse_program;

    #[test]
    fn programs_are_deterministic_and_parse() {
        let spec = CorpusSpec::small_programs(50, 7);
        let a = generate_programs(&spec);
        assert_eq!(a, generate_programs(&spec));
        assert_eq!(a.len(), 50);
        for t in &a {
            let p = parse_program(t).unwrap();
            assert!(p.domain.len() <= 2);
            assert!(p.clauses.len() <= 3);
            assert!(!declared_predicates(t).is_empty());
        }
    }

    #[test]
    fn formulas_respect_bounds() {
        let spec = CorpusSpec::small_formulas(60, 3);
        let fs = generate_formulas(&spec);
        assert_eq!(fs.len(), 60);
        assert_eq!(fs, generate_formulas(&spec));
        assert!(fs
            .iter()
            .all(|f| formula_length(f) <= 8 && f.max_arity() <= 1));
        assert!(fs.iter().any(|f| f.max_arity() == 1));
        assert!(fs.iter().any(|f| f.max_arity() == 0));
        assert!(fs.iter().filter(|f| binds(f)).count() >= 15);
    }
}
