//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each and exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use asp_sigma::corpus::{generate_formulas, generate_programs, CorpusSpec};
use asp_sigma::roundtrip::{
    load_program, roundtrip_asp, roundtrip_logic, LogicOptions, RoundTripReport,
};
use asp_sigma_core::asp::{
    check_derivation, check_refutation, find_derivation_no_returns, find_refutation, ground,
    horn_interpretation, interpretation, is_stable, stable_models, GroundProgram, Model,
    DEFAULT_ENUMERATION_CAP, DEFAULT_GROUNDING_CAP,
};
use asp_sigma_core::asp_to_sigma::{self, check_case_a, check_case_b};
use asp_sigma_core::sigma_to_asp::{self, formula_length, DEFAULT_EMISSION_CAP};
use asp_sigma_core::syntax::{parse_program, Formula, GroundAtom, Program, Term};
use asp_sigma_core::Unlimited;

type Outcome = Result<String, String>;

const SEED: u64 = 20240611;

/// The small corpus plus a wider one whose bases reach six atoms.
fn programs() -> Vec<(String, Program)> {
    let mut texts = generate_programs(&CorpusSpec::small_programs(600, SEED));
    let wide = CorpusSpec {
        max_domain: 3,
        ..CorpusSpec::small_programs(200, SEED + 1)
    };
    texts.extend(generate_programs(&wide));
    texts
        .into_iter()
        .map(|t| {
            let p = load_program(&t).expect("corpus programs parse");
            (t, p)
        })
        .collect()
}

fn all_models(base: &[GroundAtom]) -> impl Iterator<Item = Model> + '_ {
    (0u32..1 << base.len()).map(move |bits| {
        base.iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

fn dump(reports: &[&RoundTripReport]) -> String {
    reports
        .iter()
        .take(10)
        .map(|r| format!("\n      {}", r.line()))
        .collect()
}

// Criterion 1 ---------------------------------------------------------------

/// Ground clause as strings: head, positive body, negative body.
type NaiveClause = (String, Vec<String>, Vec<String>);

fn naive_ground(p: &Program) -> Vec<NaiveClause> {
    let dom: Vec<&String> = p.domain.iter().collect();
    let mut out = Vec::new();
    for c in &p.clauses {
        let mut vars: Vec<&str> = Vec::new();
        for a in std::iter::once(&c.head).chain(c.body.iter().map(|l| &l.atom)) {
            for t in &a.args {
                if let Term::Var(v) = t {
                    if !vars.contains(&v.as_str()) {
                        vars.push(v);
                    }
                }
            }
        }
        let total = dom.len().pow(vars.len() as u32);
        for mut k in 0..total {
            let mut env = BTreeMap::new();
            for v in &vars {
                env.insert(*v, dom[k % dom.len()].as_str());
                k /= dom.len();
            }
            let show = |a: &asp_sigma_core::syntax::Atom| {
                let args: Vec<&str> = a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => env[v.as_str()],
                        Term::Const(c) => c.as_str(),
                    })
                    .collect();
                if args.is_empty() {
                    a.predicate.clone()
                } else {
                    format!("{}({})", a.predicate, args.join(","))
                }
            };
            let pos = c
                .body
                .iter()
                .filter(|l| l.is_positive())
                .map(|l| show(&l.atom))
                .collect();
            let neg = c
                .body
                .iter()
                .filter(|l| !l.is_positive())
                .map(|l| show(&l.atom))
                .collect();
            out.push((show(&c.head), pos, neg));
        }
    }
    out
}

fn naive_base(p: &Program) -> Vec<String> {
    let mut out = Vec::new();
    for (pred, &k) in &p.signature {
        match k {
            0 => out.push(pred.clone()),
            1 => out.extend(p.domain.iter().map(|c| format!("{pred}({c})"))),
            _ => panic!("the oracle only handles arity up to one"),
        }
    }
    out
}

/// Stable models by testing every subset against the least model of its reduct.
fn naive_stable_models(p: &Program) -> BTreeSet<BTreeSet<String>> {
    let ground = naive_ground(p);
    let base = naive_base(p);
    let mut out = BTreeSet::new();
    for bits in 0u64..1 << base.len() {
        let m: BTreeSet<&str> = base
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, a)| a.as_str())
            .collect();
        let reduct: Vec<&NaiveClause> = ground
            .iter()
            .filter(|(_, _, neg)| neg.iter().all(|a| !m.contains(a.as_str())))
            .collect();
        let mut derived: BTreeSet<&str> = BTreeSet::new();
        loop {
            let before = derived.len();
            for (h, pos, _) in &reduct {
                if pos.iter().all(|a| derived.contains(a.as_str())) {
                    derived.insert(h);
                }
            }
            if derived.len() == before {
                break;
            }
        }
        if derived == m {
            out.insert(m.iter().map(|s| s.to_string()).collect());
        }
    }
    out
}

fn criterion_1(corpus: &[(String, Program)]) -> Outcome {
    let start = Instant::now();
    let small: Vec<&(String, Program)> = corpus.iter().take(600).collect();
    let mismatches: Vec<String> = small
        .par_iter()
        .filter_map(|(text, p)| {
            let ours: BTreeSet<BTreeSet<String>> =
                stable_models(p, DEFAULT_ENUMERATION_CAP, &Unlimited)
                    .expect("within caps")
                    .iter()
                    .map(|m| m.iter().map(|a| a.to_string()).collect())
                    .collect();
            let oracle = naive_stable_models(p);
            (ours != oracle).then(|| format!("{text}: {ours:?} vs {oracle:?}"))
        })
        .collect();
    let elapsed = start.elapsed();
    if !mismatches.is_empty() {
        return Err(format!(
            "{} disagreements, first: {}",
            mismatches.len(),
            mismatches[0]
        ));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!(
        "{} programs agree with the naive oracle in {elapsed:.2?}",
        small.len()
    ))
}

// Criterion 2 ---------------------------------------------------------------

fn criterion_2(corpus: &[(String, Program)]) -> Outcome {
    let start = Instant::now();
    let eligible: Vec<&(String, Program)> =
        corpus.iter().filter(|(_, p)| p.base_size() <= 6).collect();
    let checked: usize = eligible
        .par_iter()
        .map(|(text, p)| {
            let g = ground(p, DEFAULT_GROUNDING_CAP).unwrap();
            let base = p.base();
            let mut n = 0;
            for m in all_models(&base) {
                let i = interpretation(&g, &m).unwrap();
                let h = horn_interpretation(&g, &m).unwrap();
                assert_eq!(i, h, "identity fails for {text} at {m:?}");
                n += 1;
            }
            n
        })
        .sum();
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!(
        "{} programs, {checked} (P, M) pairs, in {elapsed:.2?}",
        eligible.len()
    ))
}

// Criteria 3 and 4 ------------------------------------------------------------

fn criterion_3(reports: &[RoundTripReport]) -> Outcome {
    let bad: Vec<&RoundTripReport> = reports.iter().filter(|r| !r.complete()).collect();
    if !bad.is_empty() {
        return Err(format!(
            "{} of {} instances disagree or were skipped:{}",
            bad.len(),
            reports.len(),
            dump(&bad)
        ));
    }
    let entailed = reports
        .iter()
        .filter(|r| r.asp_verdict == Some(true))
        .count();
    Ok(format!(
        "{} programs, {entailed} entail omega, zero disagreements",
        reports.len()
    ))
}

fn criterion_4(reports: &[RoundTripReport]) -> Outcome {
    let bad: Vec<&RoundTripReport> = reports
        .iter()
        .filter(|r| {
            let names: Vec<&str> = r.agreement.iter().map(|f| f.name).collect();
            !r.complete()
                || !names.contains(&"refutable=soup")
                || !names.contains(&"refutable=model")
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!(
            "{} of {} formulas fail:{}",
            bad.len(),
            reports.len(),
            dump(&bad)
        ));
    }
    let refutable = reports
        .iter()
        .filter(|r| r.prover_verdict == Some(false))
        .count();
    let quantified = reports
        .iter()
        .filter(|r| r.input.contains("forall"))
        .count();
    let max_len = reports.iter().filter_map(|r| r.addr_len).max().unwrap_or(0);
    Ok(format!(
        "{} formulas ({refutable} refutable, {quantified} quantified), three-way agreement at full address length (up to {max_len} bits)",
        reports.len()
    ))
}

fn criterion_5(all: &[&RoundTripReport]) -> Outcome {
    let certs: Vec<bool> = all
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|f| f.name == "certificate")
                .map(|f| f.holds)
        })
        .collect();
    let failed = certs.iter().filter(|h| !**h).count();
    let proofs = all
        .iter()
        .filter(|r| r.prover_verdict == Some(true))
        .count();
    if certs.len() != proofs {
        return Err(format!(
            "{proofs} proofs but {} certificate checks",
            certs.len()
        ));
    }
    if failed > 0 || certs.is_empty() {
        return Err(format!(
            "{failed} of {} certificates fail check or lnf",
            certs.len()
        ));
    }
    Ok(format!(
        "{} certificates pass check and is_lnf",
        certs.len()
    ))
}

// Criterion 6 ---------------------------------------------------------------

fn duality(p: &Program, g: &GroundProgram) -> Result<usize, String> {
    let base = p.base();
    let mut n = 0;
    for m in all_models(&base) {
        let i = interpretation(g, &m).map_err(|e| e.to_string())?;
        for a in &base {
            let id = g.id(a).expect("base atom");
            let refute = find_refutation(g, &m, id).map_err(|e| e.to_string())?;
            let derive = find_derivation_no_returns(g, &m, id).map_err(|e| e.to_string())?;
            let ctx = || format!("{a} under {m:?}");
            match (&refute, &derive) {
                (Some(t), None) => {
                    check_refutation(g, &m, id, t).map_err(|e| format!("{}: {e}", ctx()))?;
                    if i.contains(a) {
                        return Err(format!("refuted {} although it is in I(P,M)", ctx()));
                    }
                }
                (None, Some(d)) => {
                    check_derivation(g, &m, id, d).map_err(|e| format!("{}: {e}", ctx()))?;
                    if !i.contains(a) {
                        return Err(format!("derived {} although it is not in I(P,M)", ctx()));
                    }
                }
                _ => return Err(format!("not exactly one side succeeds for {}", ctx())),
            }
            n += 1;
        }
    }
    Ok(n)
}

fn criterion_6(corpus: &[(String, Program)]) -> Outcome {
    let eligible: Vec<&(String, Program)> =
        corpus.iter().filter(|(_, p)| p.base_size() <= 5).collect();
    let results: Vec<Result<usize, String>> = eligible
        .par_iter()
        .map(|(text, p)| {
            let g = ground(p, DEFAULT_GROUNDING_CAP).map_err(|e| e.to_string())?;
            duality(p, &g).map_err(|e| format!("{}: {e}", text.replace('\n', " ")))
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!(
        "{} programs, {total} (M, a) pairs, exactly one side each, trees verified",
        eligible.len()
    ))
}

// Criterion 7 ---------------------------------------------------------------

fn criterion_7(reports: &[RoundTripReport]) -> Outcome {
    let with_model: Vec<&RoundTripReport> = reports
        .iter()
        .filter(|r| r.asp_verdict == Some(true))
        .collect();
    let bad: Vec<&RoundTripReport> = with_model
        .iter()
        .copied()
        .filter(|r| {
            let has = |n: &str| r.checks.iter().any(|f| f.name == n && f.holds);
            !(has("model-to-soup") && has("soup-to-model"))
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("{} conversions fail:{}", bad.len(), dump(&bad)));
    }
    if with_model.is_empty() {
        return Err("no stable models were found".into());
    }
    Ok(format!(
        "{} stable models: soup_from_model passes check_soup, model_from_soup is stable",
        with_model.len()
    ))
}

// Criterion 8 ---------------------------------------------------------------

fn criterion_8(corpus: &[(String, Program)]) -> Outcome {
    let eligible: Vec<&(String, Program)> =
        corpus.iter().filter(|(_, p)| p.base_size() <= 4).collect();
    let results: Vec<Result<usize, String>> = eligible
        .par_iter()
        .map(|(text, p)| {
            let g = ground(p, DEFAULT_GROUNDING_CAP).map_err(|e| e.to_string())?;
            let base = p.base();
            let mut n = 0;
            for m in all_models(&base) {
                let what = || format!("{} at {m:?}", text.replace('\n', " "));
                let a = check_case_a(p, &m, &Unlimited).map_err(|e| format!("{}: {e}", what()))?;
                let b = check_case_b(p, &m, &Unlimited).map_err(|e| format!("{}: {e}", what()))?;
                let stable = is_stable(&g, &m).map_err(|e| e.to_string())?;
                if stable == (a || b) {
                    return Err(format!("{}: stable={stable}, caseA={a}, caseB={b}", what()));
                }
                n += 1;
            }
            Ok(n)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!(
        "{} programs, {total} models, zero cross-check failures",
        eligible.len()
    ))
}

// Criterion 9 ---------------------------------------------------------------

/// A program with `size` clauses over unary predicates and two constants.
fn sized_program(size: usize) -> Program {
    let mut text = String::from("#domain c, d.\n");
    for j in 0..size {
        let _ = match j % 3 {
            0 => writeln!(text, "p{j}(x) :- p{}(y), not p{}(x).", j + 1, j + 2),
            1 => writeln!(text, "p{j}(c) :- not p{}(d).", j + 1),
            _ => writeln!(text, "p{j}(x) :- p{}(x), p{}(x).", j + 1, j + 2),
        };
    }
    parse_program(&text).unwrap()
}

/// A Σ₁ formula of length exactly `size` (at least 5, not 6).
fn sized_formula(size: usize) -> Formula {
    let mut k = (size - 5) / 7;
    while size - 5 - 7 * k == 1 {
        k -= 1;
    }
    let mut rem = size - 5 - 7 * k;
    let mut premises = vec![Formula::atom("P0", &["c"])];
    for i in 0..k {
        let body = Formula::imp(
            Formula::atom(&format!("P{i}"), &["x"]),
            Formula::atom(&format!("P{}", i + 1), &["x"]),
        );
        premises.push(Formula::forall("x", body));
    }
    if rem % 2 == 1 {
        premises.push(Formula::atom("R", &["c"]));
        rem -= 3;
    }
    for j in 0..rem / 2 {
        premises.push(Formula::prop(&format!("a{j}")));
    }
    let f = Formula::chain(premises, Formula::atom(&format!("P{k}"), &["c"]));
    assert_eq!(formula_length(&f), size);
    f
}

/// Largest local growth exponent between consecutive sizes.
fn exponent(sizes: &[usize], counts: &[usize]) -> f64 {
    sizes
        .windows(2)
        .zip(counts.windows(2))
        .map(|(s, c)| (c[1] as f64 / c[0] as f64).ln() / (s[1] as f64 / s[0] as f64).ln())
        .fold(f64::MIN, f64::max)
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/goldens/polynomial.txt")
}

fn criterion_9() -> Outcome {
    let sizes = [10, 20, 40];
    let mut lines = Vec::new();
    let mut series: Vec<(&str, Vec<usize>)> = Vec::new();
    let (mut axioms, mut length) = (Vec::new(), Vec::new());
    for &s in &sizes {
        let p = sized_program(s);
        let t = asp_to_sigma::translate(&p, "omega").map_err(|e| e.to_string())?;
        axioms.push(t.axioms.len());
        length.push(formula_length(&t.formula()));
        lines.push(format!(
            "asp-to-sigma clauses={s} axioms={} length={}",
            axioms.last().unwrap(),
            length.last().unwrap()
        ));
    }
    series.push(("asp-to-sigma axioms", axioms));
    series.push(("asp-to-sigma length", length));
    for l in [1, 2] {
        let mut clauses = Vec::new();
        for &s in &sizes {
            let t = sigma_to_asp::translate(&sized_formula(s), l, false, DEFAULT_EMISSION_CAP)
                .map_err(|e| e.to_string())?;
            clauses.push(t.program.clauses.len());
            lines.push(format!(
                "sigma-to-asp n={s} addr-len={l} clauses={}",
                clauses.last().unwrap()
            ));
        }
        series.push((
            if l == 1 {
                "sigma-to-asp clauses at 1 bit"
            } else {
                "sigma-to-asp clauses at 2 bits"
            },
            clauses,
        ));
    }
    let text = lines.join("\n") + "\n";
    let path = golden_path();
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
    }
    let golden = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if golden != text {
        return Err(format!("counts differ from the goldens:\n{text}"));
    }
    let mut worst = 0f64;
    for (name, counts) in &series {
        let e = exponent(&sizes, counts);
        if e > 4.0 {
            return Err(format!("{name} grows with exponent {e:.2}: {counts:?}"));
        }
        worst = worst.max(e);
    }
    Ok(format!(
        "largest growth exponent {worst:.2} (bound 4), counts match goldens"
    ))
}

// Driver --------------------------------------------------------------------

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(msg)
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS  {name} ({secs:.2}s): {detail}");
            true
        }
        Err(reason) => {
            println!("FAIL  {name} ({secs:.2}s): {reason}");
            false
        }
    }
}

fn main() {
    let corpus = programs();
    let texts: Vec<String> = corpus.iter().map(|(t, _)| t.clone()).collect();
    let formulas = CorpusSpec::small_formulas(120, SEED);
    assert!(generate_formulas(&formulas).len() >= 100);

    let asp_reports = {
        let small = roundtrip_asp(
            &CorpusSpec::small_programs(600, SEED),
            Duration::from_secs(10),
        );
        let wide = CorpusSpec {
            max_domain: 3,
            ..CorpusSpec::small_programs(200, SEED + 1)
        };
        let mut all = small;
        all.extend(roundtrip_asp(&wide, Duration::from_secs(10)));
        all
    };
    assert_eq!(asp_reports.len(), texts.len());
    let logic_reports = roundtrip_logic(
        &formulas,
        &LogicOptions {
            timeout: Duration::from_secs(30),
            ..LogicOptions::default()
        },
    );

    let results = [
        run("1 stable-model oracle", || criterion_1(&corpus)),
        run("2 reduct/overline identity", || criterion_2(&corpus)),
        run("3 entailment vs provability", || criterion_3(&asp_reports)),
        run("4 refutability vs soups vs stable models", || {
            criterion_4(&logic_reports)
        }),
        run("5 certificate validity", || {
            let all: Vec<&RoundTripReport> = asp_reports.iter().chain(&logic_reports).collect();
            criterion_5(&all)
        }),
        run("6 refutation/derivation duality", || criterion_6(&corpus)),
        run("7 soup conversions", || criterion_7(&logic_reports)),
        run("8 case A/B characterizations", || criterion_8(&corpus)),
        run("9 polynomial growth", criterion_9),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!("{passed}/{} acceptance criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
