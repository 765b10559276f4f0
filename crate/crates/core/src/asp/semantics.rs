use alloc::vec;
use alloc::vec::Vec;

use super::ground::{ground, GroundClause, GroundProgram, Model, DEFAULT_GROUNDING_CAP};
use crate::syntax::{GroundAtom, Program};
use crate::{Budget, Error, Result};

/// Default bound on the base size for subset enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 22;

/// The Gelfond–Lifschitz reduct: clauses blocked by `m` are deleted and the
/// remaining negative literals dropped.
pub fn reduct(g: &GroundProgram, m: &[bool]) -> GroundProgram {
    let clauses = g
        .clauses
        .iter()
        .filter(|c| c.neg.iter().all(|&a| !m[a as usize]))
        .map(|c| GroundClause {
            head: c.head,
            pos: c.pos.clone(),
            neg: Vec::new(),
        })
        .collect();
    g.with_clauses(clauses)
}

/// Least model of the clauses not blocked by `m`, with negation read against `m`.
///
/// Computed by counting unsatisfied positive premises per clause, which
/// reaches the same fixpoint as iterating the immediate-consequence operator.
pub fn lfp(g: &GroundProgram, m: &[bool]) -> Vec<bool> {
    let n = g.num_atoms();
    let mut watch: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut missing: Vec<u32> = vec![0; g.clauses.len()];
    let mut out = vec![false; n];
    let mut queue: Vec<u32> = Vec::new();
    for (k, c) in g.clauses.iter().enumerate() {
        if c.neg.iter().any(|&a| m[a as usize]) {
            missing[k] = u32::MAX;
            continue;
        }
        missing[k] = c.pos.len() as u32;
        for &a in &c.pos {
            watch[a as usize].push(k as u32);
        }
        if c.pos.is_empty() && !out[c.head as usize] {
            out[c.head as usize] = true;
            queue.push(c.head);
        }
    }
    while let Some(a) = queue.pop() {
        for &k in &watch[a as usize] {
            let k = k as usize;
            missing[k] -= 1;
            if missing[k] == 0 {
                let h = g.clauses[k].head as usize;
                if !out[h] {
                    out[h] = true;
                    queue.push(h as u32);
                }
            }
        }
    }
    out
}

/// I(P,M) for a set-valued model.
pub fn interpretation(g: &GroundProgram, m: &Model) -> Result<Model> {
    let (v, _) = g.mask(m)?;
    Ok(g.model_of(&lfp(g, &v)))
}

/// Whether `m = I(P,M)`.
pub fn is_stable(g: &GroundProgram, m: &Model) -> Result<bool> {
    let (v, stray) = g.mask(m)?;
    Ok(!stray && lfp(g, &v) == v)
}

/// Every stable model, by enumerating all subsets of the base.
///
/// Models are returned in sorted order.
pub fn stable_models(p: &Program, cap: usize, budget: &dyn Budget) -> Result<Vec<Model>> {
    let base = p.base_size();
    if base > cap {
        return Err(Error::EnumerationCap { base, cap });
    }
    let g = ground(p, DEFAULT_GROUNDING_CAP)?;
    stable_models_ground(&g, budget)
}

/// Subset enumeration over the base of an already ground program.
///
/// Ids `0..base_size` must be the base, as produced by [`ground`].
pub fn stable_models_ground(g: &GroundProgram, budget: &dyn Budget) -> Result<Vec<Model>> {
    let b = g.base_size();
    if b >= usize::BITS as usize - 1 {
        return Err(Error::EnumerationCap {
            base: b,
            cap: usize::BITS as usize - 2,
        });
    }
    let mut out = Vec::new();
    let mut v = vec![false; g.num_atoms()];
    for bits in 0usize..(1usize << b) {
        if bits & 0xfff == 0 && budget.expired() {
            return Err(Error::BudgetExhausted);
        }
        for (i, slot) in v.iter_mut().enumerate().take(b) {
            *slot = bits >> i & 1 == 1;
        }
        if lfp(g, &v) == v {
            out.push(g.model_of(&v));
        }
    }
    out.sort();
    Ok(out)
}

/// SMS entailment: `a` holds in every stable model (vacuous if there is none).
pub fn sms_entails(p: &Program, a: &GroundAtom, cap: usize, budget: &dyn Budget) -> Result<bool> {
    let models = stable_models(p, cap, budget)?;
    Ok(models.iter().all(|m| m.contains(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;
    use crate::Unlimited;
    use alloc::collections::BTreeSet;
    use alloc::string::{String, ToString};

    fn models(src: &str) -> Vec<Vec<String>> {
        let p = parse_program(src).unwrap();
        stable_models(&p, DEFAULT_ENUMERATION_CAP, &Unlimited)
            .unwrap()
            .into_iter()
            .map(|m| m.iter().map(|a| a.to_string()).collect())
            .collect()
    }

    fn set(atoms: &[&str]) -> Model {
        atoms.iter().map(|a| GroundAtom::nullary(a)).collect()
    }

    #[test]
    fn reduct_examples() {
        let g = ground(&parse_program("p :- not q. q :- q.").unwrap(), 100).unwrap();
        let q = g.id(&GroundAtom::nullary("q")).unwrap() as usize;
        let mut m = vec![false; g.num_atoms()];
        assert_eq!(reduct(&g, &m).render(), "p.\nq :- q.\n");
        m[q] = true;
        assert_eq!(reduct(&g, &m).render(), "q :- q.\n");

        let g = ground(&parse_program("p :- not q. q :- not p.").unwrap(), 100).unwrap();
        let (m, _) = g.mask(&set(&["p"])).unwrap();
        let r = reduct(&g, &m);
        assert_eq!(r.render(), "p.\n");
        assert!(r.clauses.iter().all(|c| c.neg.is_empty()));
    }

    #[test]
    fn interpretation_examples() {
        let g = ground(&parse_program("p. q :- p.").unwrap(), 100).unwrap();
        assert_eq!(interpretation(&g, &Model::new()).unwrap(), set(&["p", "q"]));
        let g = ground(&parse_program("p :- not q.").unwrap(), 100).unwrap();
        assert_eq!(interpretation(&g, &Model::new()).unwrap(), set(&["p"]));
    }

    #[test]
    fn stability_examples() {
        let g = ground(&parse_program("p :- not p.").unwrap(), 100).unwrap();
        assert!(!is_stable(&g, &Model::new()).unwrap());
        assert!(!is_stable(&g, &set(&["p"])).unwrap());
        let g = ground(&parse_program("p :- not q. q :- not p.").unwrap(), 100).unwrap();
        assert!(is_stable(&g, &set(&["p"])).unwrap());
        let g = ground(&parse_program("#domain c.").unwrap(), 100).unwrap();
        assert!(is_stable(&g, &Model::new()).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(models("p :- not q. q :- not p."), [["p"], ["q"]]);
        assert!(models("p :- not p.").is_empty());
        assert_eq!(models("p."), [["p"]]);
    }

    #[test]
    fn entailment_examples() {
        let p = parse_program("p :- not q. q :- not p. r :- p. r :- q.").unwrap();
        assert!(sms_entails(&p, &GroundAtom::nullary("r"), 22, &Unlimited).unwrap());
        let p = parse_program("p :- not p.")
            .unwrap()
            .with_predicate("omega", 0)
            .unwrap();
        assert!(sms_entails(&p, &GroundAtom::nullary("omega"), 22, &Unlimited).unwrap());
        let p = parse_program("p.").unwrap().with_predicate("q", 0).unwrap();
        assert!(!sms_entails(&p, &GroundAtom::nullary("q"), 22, &Unlimited).unwrap());
    }

    #[test]
    fn enumeration_cap() {
        let p = parse_program("#domain a,b,c,d,e. p(x,y).").unwrap();
        assert_eq!(
            stable_models(&p, 22, &Unlimited).unwrap_err(),
            Error::EnumerationCap { base: 25, cap: 22 }
        );
    }

    #[test]
    fn model_outside_base_rejected() {
        let g = ground(&parse_program("p.").unwrap(), 100).unwrap();
        let m: Model = BTreeSet::from([GroundAtom::nullary("zz")]);
        assert!(matches!(is_stable(&g, &m), Err(Error::InvalidModel(_))));
    }
}
