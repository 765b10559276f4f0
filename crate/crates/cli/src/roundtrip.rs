//! Round-trip drivers: each corpus instance runs through both engines and
//! the translation between them, and the verdicts are compared.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use asp_sigma_core::asp::{
    find_stable_model, is_stable, sms_entails, stable_models, DEFAULT_ENUMERATION_CAP,
};
use asp_sigma_core::proof::{check, is_lnf, prove_sigma1, Environment};
use asp_sigma_core::sigma_to_asp::{analyze, translate_analysis, DEFAULT_EMISSION_CAP};
use asp_sigma_core::soup::{
    check_soup, find_soup, full_addr_len, model_from_soup, soup_from_model,
};
use asp_sigma_core::syntax::{parse_program, Formula, GroundAtom, Program};
use asp_sigma_core::{asp_to_sigma, Error};

use crate::corpus::{declared_predicates, generate_formulas, generate_programs, CorpusSpec};
use crate::io::Deadline;

/// Cap on candidate disjudgments explored by the soup search.
pub const SOUP_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    AspToLogic,
    LogicToAsp,
}

/// A named boolean outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundTripReport {
    pub id: usize,
    pub direction: Direction,
    pub input: String,
    /// ASP side: `P ⊨ Ω`, or whether the translated program has a stable model.
    pub asp_verdict: Option<bool>,
    /// Whether the formula is provable.
    pub prover_verdict: Option<bool>,
    /// Whether a refutation soup exists (formula direction only).
    pub soup_verdict: Option<bool>,
    /// Address length used for the translated program.
    pub addr_len: Option<usize>,
    /// Equalities between the verdicts that were computed.
    pub agreement: Vec<Flag>,
    /// Certificate and conversion checks.
    pub checks: Vec<Flag>,
    /// Set when the instance ran out of budget.
    pub skipped: Option<String>,
    /// Set when a stage failed for any other reason.
    pub error: Option<String>,
    pub timings_ms: Vec<(&'static str, f64)>,
    /// SHA-256 of the input and every verdict and flag, timings excluded.
    pub digest: String,
}

impl RoundTripReport {
    fn new(id: usize, direction: Direction, input: String) -> Self {
        RoundTripReport {
            id,
            direction,
            input,
            asp_verdict: None,
            prover_verdict: None,
            soup_verdict: None,
            addr_len: None,
            agreement: Vec::new(),
            checks: Vec::new(),
            skipped: None,
            error: None,
            timings_ms: Vec::new(),
            digest: String::new(),
        }
    }

    /// No disagreement, failed check or error. Skipped instances pass.
    pub fn ok(&self) -> bool {
        self.error.is_none()
            && self.agreement.iter().all(|f| f.holds)
            && self.checks.iter().all(|f| f.holds)
    }

    /// Every comparison was made and every check held.
    pub fn complete(&self) -> bool {
        self.ok() && self.skipped.is_none()
    }

    fn agree(&mut self, name: &'static str, holds: bool) {
        self.agreement.push(Flag { name, holds });
    }

    fn check(&mut self, name: &'static str, holds: bool) {
        self.checks.push(Flag { name, holds });
    }

    fn timed<T>(&mut self, stage: &'static str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings_ms
            .push((stage, t.elapsed().as_secs_f64() * 1e3));
        out
    }

    fn fail(&mut self, e: Error) {
        match e {
            Error::BudgetExhausted => self.skipped = Some("wall-clock budget exhausted".into()),
            Error::GroundingCap { .. }
            | Error::EnumerationCap { .. }
            | Error::JudgmentCap { .. }
            | Error::EmissionCap { .. } => self.skipped = Some(e.to_string()),
            e => self.error = Some(e.to_string()),
        }
    }

    fn seal(mut self) -> Self {
        let mut h = Sha256::new();
        let show = |v: Option<bool>| match v {
            Some(true) => "1",
            Some(false) => "0",
            None => "-",
        };
        let mut s = format!(
            "{}|{:?}|{}|{}|{}|{}|{:?}|",
            self.id,
            self.direction,
            self.input,
            show(self.asp_verdict),
            show(self.prover_verdict),
            show(self.soup_verdict),
            self.addr_len
        );
        for f in self.agreement.iter().chain(&self.checks) {
            let _ = write!(s, "{}={};", f.name, f.holds);
        }
        let _ = write!(s, "|{:?}|{:?}", self.skipped, self.error);
        h.update(s.as_bytes());
        self.digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        self
    }

    /// One summary line.
    pub fn line(&self) -> String {
        let v = |x: Option<bool>| match x {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        let status = if !self.ok() {
            "FAIL"
        } else if self.skipped.is_some() {
            "SKIP"
        } else {
            "ok"
        };
        let mut s = format!(
            "#{:<4} {status:<4} asp={} prove={} soup={}",
            self.id,
            v(self.asp_verdict),
            v(self.prover_verdict),
            v(self.soup_verdict)
        );
        if let Some(l) = self.addr_len {
            let _ = write!(s, " len={l}");
        }
        for f in self
            .agreement
            .iter()
            .chain(&self.checks)
            .filter(|f| !f.holds)
        {
            let _ = write!(s, " !{}", f.name);
        }
        if let Some(r) = self.skipped.as_ref().or(self.error.as_ref()) {
            let _ = write!(s, " ({r})");
        }
        let _ = write!(s, "  {}", self.input.replace('\n', " "));
        s
    }
}

/// Parses a generated program and adds the predicates listed in its
/// `% predicates` line, so unused ones stay in the language.
pub fn load_program(text: &str) -> asp_sigma_core::Result<Program> {
    let mut p = parse_program(text)?;
    for (name, arity) in declared_predicates(text) {
        p = p.with_predicate(&name, arity)?;
    }
    Ok(p)
}

/// Goal symbol for the program direction: `omega`, primed until fresh.
fn fresh_goal(p: &Program) -> String {
    let mut g = String::from("omega");
    while p.arity(&g).is_some() {
        g.push('_');
    }
    g
}

fn certificate_ok(phi: &Formula, term: &asp_sigma_core::proof::ProofTerm) -> bool {
    let env = Environment::new();
    check(&env, term, phi) && is_lnf(&env, term, phi)
}

/// Entailment of a fresh `Ω` against provability of the translated formula.
pub fn roundtrip_asp_one(id: usize, text: &str, timeout: Duration) -> RoundTripReport {
    let mut r = RoundTripReport::new(id, Direction::AspToLogic, text.trim_end().to_string());
    let budget = Deadline::after(timeout);
    if let Err(e) = asp_stage(&mut r, text, &budget) {
        r.fail(e);
    }
    r.seal()
}

fn asp_stage(r: &mut RoundTripReport, text: &str, budget: &Deadline) -> asp_sigma_core::Result<()> {
    let p = load_program(text)?;
    let goal = fresh_goal(&p);
    let omega = GroundAtom::nullary(&goal);
    let entails = r.timed("entail", || {
        sms_entails(&p, &omega, DEFAULT_ENUMERATION_CAP, budget)
    })?;
    r.asp_verdict = Some(entails);
    let models = r.timed("models", || {
        stable_models(&p, DEFAULT_ENUMERATION_CAP, budget)
    })?;
    r.agree("entails=no-models", entails == models.is_empty());
    let t = r.timed("translate", || asp_to_sigma::translate(&p, &goal))?;
    let phi = t.formula();
    let proof = r.timed("prove", || prove_sigma1(&phi, budget))?;
    r.prover_verdict = Some(proof.is_some());
    r.agree("entails=provable", entails == proof.is_some());
    if let Some(term) = &proof {
        r.check("certificate", certificate_ok(&phi, term));
    }
    Ok(())
}

/// Options for the formula direction.
#[derive(Debug, Clone, Copy)]
pub struct LogicOptions {
    pub timeout: Duration,
    /// Fixed address length; the full length when `None`.
    pub addr_len: Option<usize>,
    /// Also check that a stable model at each shorter length implies refutability.
    pub soundness_below: usize,
}

impl Default for LogicOptions {
    fn default() -> Self {
        LogicOptions {
            timeout: Duration::from_secs(30),
            addr_len: None,
            soundness_below: 2,
        }
    }
}

/// Refutability against soup existence and stable models of the translation.
pub fn roundtrip_logic_one(id: usize, phi: &Formula, opts: &LogicOptions) -> RoundTripReport {
    let mut r = RoundTripReport::new(id, Direction::LogicToAsp, phi.to_string());
    let budget = Deadline::after(opts.timeout);
    if let Err(e) = logic_stage(&mut r, phi, opts, &budget) {
        r.fail(e);
    }
    r.seal()
}

fn logic_stage(
    r: &mut RoundTripReport,
    phi: &Formula,
    opts: &LogicOptions,
    budget: &Deadline,
) -> asp_sigma_core::Result<()> {
    let proof = r.timed("prove", || prove_sigma1(phi, budget))?;
    let refutable = proof.is_none();
    r.prover_verdict = Some(!refutable);
    if let Some(term) = &proof {
        r.check("certificate", certificate_ok(phi, term));
    }

    let a = analyze(phi)?;
    let found = r.timed("soup", || find_soup(&a, SOUP_CAP, budget))?;
    r.soup_verdict = Some(found.soup.is_some());
    r.agree("refutable=soup", refutable == found.soup.is_some());
    if let Some(z) = &found.soup {
        r.check("found-soup-checks", check_soup(z, &a).ok);
    }

    let l = match opts.addr_len {
        Some(l) => l,
        None => full_addr_len(&a, SOUP_CAP, budget)?,
    };
    r.addr_len = Some(l);
    let t = r.timed("translate", || {
        translate_analysis(a.clone(), l, false, DEFAULT_EMISSION_CAP)
    })?;
    let g = t.ground()?;
    let model = r.timed("solve", || find_stable_model(&g, budget))?;
    r.asp_verdict = Some(model.is_some());
    if opts.addr_len.is_none() {
        r.agree("refutable=model", refutable == model.is_some());
    } else if model.is_some() {
        // Below the full length only soundness is expected.
        r.agree("model=>refutable", refutable);
    }

    if let Some(m) = &model {
        let z = soup_from_model(m, &t, &g)?;
        r.check("model-to-soup", check_soup(&z, &t.analysis).ok);
        let back = model_from_soup(&z, &t)?;
        r.check("soup-to-model", is_stable(&g, &back.model)?);
    }
    if let (Some(z), None) = (&found.soup, opts.addr_len) {
        let boiled = model_from_soup(z, &t)?;
        r.check("found-soup-to-model", is_stable(&g, &boiled.model)?);
    }

    for small in 1..l.min(opts.soundness_below + 1) {
        let ts = translate_analysis(a.clone(), small, false, DEFAULT_EMISSION_CAP)?;
        let gs = ts.ground()?;
        if find_stable_model(&gs, budget)?.is_some() {
            r.agree("short-model=>refutable", refutable);
        }
    }
    Ok(())
}

/// Runs [`roundtrip_asp_one`] on every generated program, in parallel,
/// reports in instance order.
pub fn roundtrip_asp(spec: &CorpusSpec, timeout: Duration) -> Vec<RoundTripReport> {
    let programs = generate_programs(spec);
    programs
        .par_iter()
        .enumerate()
        .map(|(id, text)| roundtrip_asp_one(id, text, timeout))
        .collect()
}

/// Runs [`roundtrip_logic_one`] on every generated formula, in parallel,
/// reports in instance order.
pub fn roundtrip_logic(spec: &CorpusSpec, opts: &LogicOptions) -> Vec<RoundTripReport> {
    let formulas = generate_formulas(spec);
    formulas
        .par_iter()
        .enumerate()
        .map(|(id, phi)| roundtrip_logic_one(id, phi, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use asp_sigma_core::syntax::parse_formula;

    fn asp(text: &str) -> RoundTripReport {
        roundtrip_asp_one(0, text, Duration::from_secs(10))
    }

    #[test]
    fn program_examples() {
        let r = asp("p :- not p.");
        assert!(r.complete(), "{}", r.line());
        assert_eq!((r.asp_verdict, r.prover_verdict), (Some(true), Some(true)));
        let r = asp("p :- not q.\nq :- not p.");
        assert!(r.complete());
        assert_eq!(
            (r.asp_verdict, r.prover_verdict),
            (Some(false), Some(false))
        );
        let r = asp("% predicates p/0\n");
        assert!(r.complete());
        assert_eq!(
            (r.asp_verdict, r.prover_verdict),
            (Some(false), Some(false))
        );
    }

    #[test]
    fn formula_examples() {
        let opts = LogicOptions::default();
        for (s, refutable) in [
            ("a -> a", false),
            ("b -> a", true),
            ("((a -> b) -> a) -> a", true),
        ] {
            let r = roundtrip_logic_one(0, &parse_formula(s).unwrap(), &opts);
            assert!(r.complete(), "{}", r.line());
            assert_eq!(r.prover_verdict, Some(!refutable));
            assert_eq!(r.soup_verdict, Some(refutable));
            assert_eq!(r.asp_verdict, Some(refutable));
        }
    }

    #[test]
    fn digests_are_reproducible() {
        let spec = CorpusSpec::small_programs(20, 11);
        let a: Vec<String> = roundtrip_asp(&spec, Duration::from_secs(10))
            .into_iter()
            .map(|r| r.digest)
            .collect();
        let b: Vec<String> = roundtrip_asp(&spec, Duration::from_secs(10))
            .into_iter()
            .map(|r| r.digest)
            .collect();
        assert_eq!(a, b);
        assert_eq!(a[0].len(), 64);
    }

    #[test]
    fn budget_is_reported_not_fatal() {
        let r = roundtrip_asp_one(3, "p :- not q.\nq :- not p.", Duration::ZERO);
        assert!(r.skipped.is_some());
        assert!(r.ok());
        assert!(!r.complete());
    }
}
