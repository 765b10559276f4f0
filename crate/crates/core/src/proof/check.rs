use alloc::format;
use alloc::string::String;

use super::term::{Arg, Environment, ProofTerm};
use crate::syntax::Formula;

/// Infers the formula proved by `term` under `env`.
///
/// Abstractions carry their annotations, so inference is syntax directed.
/// The error is a human-readable reason for rejection.
pub fn infer(env: &Environment, term: &ProofTerm) -> Result<Formula, String> {
    match term {
        ProofTerm::Var(x) => env
            .get(x)
            .cloned()
            .ok_or_else(|| format!("undeclared proof variable {x}")),
        ProofTerm::Abs(x, a, body) => {
            let mut inner = env.clone();
            inner.insert(x.clone(), a.clone());
            Ok(Formula::imp(a.clone(), infer(&inner, body)?))
        }
        ProofTerm::ObjAbs(x, body) => {
            if let Some((y, _)) = env.iter().find(|(_, f)| f.free_vars().contains(x)) {
                return Err(format!("eigenvariable {x} occurs free in the type of {y}"));
            }
            Ok(Formula::forall(x, infer(env, body)?))
        }
        ProofTerm::App(f, a) => match infer(env, f)? {
            Formula::Impl(l, r) => {
                let got = infer(env, a)?;
                if got.alpha_eq(&l) {
                    Ok(*r)
                } else {
                    Err(format!("argument proves {got}, expected {l}"))
                }
            }
            other => Err(format!(
                "applying a proof of {other}, which is not an implication"
            )),
        },
        ProofTerm::ObjApp(f, y) => match infer(env, f)? {
            Formula::Forall(x, b) => Ok(b.subst1(&x, y)),
            other => Err(format!(
                "instantiating a proof of {other}, which is not universal"
            )),
        },
    }
}

/// Whether `env ⊢ term : goal` is derivable with the five rules of
/// minimal predicate logic, comparing formulas up to alpha-conversion.
pub fn check(env: &Environment, term: &ProofTerm, goal: &Formula) -> bool {
    check_verbose(env, term, goal).is_ok()
}

/// [`check`] with a diagnostic on failure.
pub fn check_verbose(env: &Environment, term: &ProofTerm, goal: &Formula) -> Result<(), String> {
    let got = infer(env, term)?;
    if got.alpha_eq(goal) {
        Ok(())
    } else {
        Err(format!("term proves {got}, not {goal}"))
    }
}

/// Long normal form, judged against the expected type.
///
/// At `∀x φ` the term must be `\y. N` with `N` long normal at `φ[x:=y]`; at
/// `φ → ψ` it must be `\X:φ. N` with `N` long normal at `ψ`; at an atom it
/// must be a variable applied to object names and long normal proofs.
pub fn is_lnf(env: &Environment, term: &ProofTerm, ty: &Formula) -> bool {
    match (ty, term) {
        (Formula::Forall(x, b), ProofTerm::ObjAbs(y, n)) => is_lnf(env, n, &b.subst1(x, y)),
        (Formula::Impl(l, r), ProofTerm::Abs(x, a, n)) => {
            if !a.alpha_eq(l) {
                return false;
            }
            let mut inner = env.clone();
            inner.insert(x.clone(), a.clone());
            is_lnf(&inner, n, r)
        }
        (Formula::Atom { .. }, _) => {
            let (head, args) = term.spine();
            let ProofTerm::Var(h) = head else {
                return false;
            };
            let Some(mut cur) = env.get(h).cloned() else {
                return false;
            };
            for arg in args {
                cur = match (cur, arg) {
                    (Formula::Forall(x, b), Arg::Object(y)) => b.subst1(&x, y),
                    (Formula::Impl(l, r), Arg::Proof(n)) => {
                        if !is_lnf(env, n, &l) {
                            return false;
                        }
                        *r
                    }
                    _ => return false,
                };
            }
            cur.alpha_eq(ty)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::parse_term;
    use crate::syntax::parse_formula;
    use alloc::string::ToString;

    fn env(pairs: &[(&str, &str)]) -> Environment {
        pairs
            .iter()
            .map(|(x, f)| (x.to_string(), parse_formula(f).unwrap()))
            .collect()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn t(s: &str) -> ProofTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn axiom_and_abstraction() {
        assert!(check(&env(&[("X", "a")]), &t("X"), &f("a")));
        assert!(!check(&env(&[("X", "a")]), &t("X"), &f("b")));
        assert!(!check(&Environment::new(), &t("X"), &f("a")));
        assert!(check(&Environment::new(), &t("\\X:a. X"), &f("a -> a")));
    }

    #[test]
    fn eigenvariable_condition() {
        let e = env(&[("X", "forall x. P(x)")]);
        assert!(check(&e, &t("\\y. X y"), &f("forall y. P(y)")));
        let bad = env(&[("X", "forall x. P(x)"), ("Z", "Q(y)")]);
        let err = check_verbose(&bad, &t("\\y. X y"), &f("forall y. P(y)")).unwrap_err();
        assert!(err.contains("eigenvariable"));
    }

    #[test]
    fn application_mismatch() {
        let e = env(&[("X", "a -> b"), ("Y", "c")]);
        assert!(!check(&e, &t("X Y"), &f("b")));
        assert!(!check(&e, &t("Y X"), &f("b")));
        assert!(!check(&e, &t("Y c"), &f("b")));
    }

    #[test]
    fn shadowing_replaces() {
        let e = env(&[("X", "b")]);
        assert!(check(&e, &t("\\X:a. X"), &f("a -> a")));
        assert!(!check(&e, &t("\\X:a. X"), &f("a -> b")));
    }

    #[test]
    fn instantiation_avoids_capture() {
        let e = env(&[("X", "forall x. forall y. R(x,y)")]);
        assert!(check(&e, &t("\\y. X y"), &f("forall y. forall z. R(y,z)")));
    }

    #[test]
    fn long_normal_forms() {
        let empty = Environment::new();
        assert!(is_lnf(&empty, &t("\\X:a. X"), &f("a -> a")));
        let e = env(&[("X", "a -> a")]);
        assert!(!is_lnf(&e, &t("X"), &f("a -> a")));
        let e = env(&[("X", "a -> b"), ("Y", "a")]);
        assert!(is_lnf(&e, &t("X Y"), &f("b")));
        let e = env(&[("X", "(a -> a) -> b")]);
        assert!(is_lnf(&e, &t("X (\\Y:a. Y)"), &f("b")));
        let e = env(&[("X", "forall x. P(x)")]);
        assert!(is_lnf(&e, &t("\\y. X y"), &f("forall y. P(y)")));
        assert!(!is_lnf(&e, &t("X"), &f("forall y. P(y)")));
        // a beta-redex is not long normal
        let e = env(&[("Y", "a")]);
        assert!(!is_lnf(&e, &t("(\\X:a. X) Y"), &f("a")));
    }
}
