//! Subcommand dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use asp_sigma_core::asp::{
    enumerate_stable_models, ground, is_stable, stable_models, Model, DEFAULT_ENUMERATION_CAP,
    DEFAULT_GROUNDING_CAP,
};
use asp_sigma_core::proof::{check_verbose, is_lnf, parse_term, prove_sigma1, Environment};
use asp_sigma_core::sigma_to_asp::{
    self, analyze, translate_analysis, Analysis, DEFAULT_EMISSION_CAP,
};
use asp_sigma_core::soup::{
    check_soup, find_soup, full_addr_len, model_from_soup, parse_soup, render_soup, soup_from_model,
};
use asp_sigma_core::syntax::{parse_formula, parse_ground_atom, Formula, Program};
use asp_sigma_core::{asp_to_sigma, Budget};

use crate::corpus::CorpusSpec;
use crate::io::{
    exit_for, file_or_text, parse_model, read_file, render_model, render_model_lines, Deadline,
    Exit,
};
use crate::roundtrip::{self, load_program, LogicOptions, RoundTripReport, SOUP_CAP};

#[derive(Parser, Debug)]
#[command(
    name = "asp-sigma",
    version,
    about = "Answer set programs and Σ₁ minimal logic, translated both ways"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Corpus seed for the round-trip commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in seconds, per instance for the round trips
    /// (default 10, or 30 for roundtrip-logic).
    #[arg(long, global = true)]
    timeout: Option<f64>,
    /// Largest base that stable-model enumeration will scan.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap_base: usize,
    /// Address length of the formula-to-program translation.
    #[arg(long, global = true)]
    addr_len: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the ground instances of a program.
    Ground { program: String },
    /// Print the stable models of a program, one per line.
    Solve {
        program: String,
        /// Stop after this many models.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Whether a ground atom holds in every stable model.
    Entail { program: String, atom: String },
    /// Search a long normal proof of a Σ₁ formula.
    Prove { formula: String },
    /// Check a proof term against a formula.
    Check { term: String, formula: String },
    /// Compile a program and goal into a Σ₁ formula.
    TranslateAsp {
        program: String,
        #[arg(long, default_value = "omega")]
        goal: String,
        /// Print axiom counts per schema.
        #[arg(long)]
        stats: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a Σ₁ formula into a program with a stable model iff it is refutable.
    TranslateFormula {
        formula: String,
        /// Emit syntax facts for every filling of irrelevant positions.
        #[arg(long)]
        full_facts: bool,
        /// Use the address length that holds every candidate disjudgment.
        #[arg(long, conflicts_with = "addr_len")]
        full: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a soup for a formula.
    SoupCheck { formula: String, soup: String },
    /// Search a refutation soup.
    SoupFind {
        formula: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a soup into a stable model of the translated formula.
    SoupToModel { formula: String, soup: String },
    /// Read the soup encoded by a stable model of the translated formula.
    ModelToSoup { formula: String, model: String },
    /// Entailment against provability over a generated program corpus.
    RoundtripAsp {
        #[arg(long, default_value_t = 500)]
        count: usize,
        /// Print only failures and the summary.
        #[arg(short, long)]
        quiet: bool,
    },
    /// Refutability against soups and stable models over a generated formula corpus.
    RoundtripLogic {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(short, long)]
        quiet: bool,
    },
}

struct Ctx<'a> {
    json: bool,
    seed: u64,
    timeout: Option<f64>,
    cap_base: usize,
    addr_len: Option<usize>,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn budget(&self) -> Deadline {
        Deadline::after(self.duration(10.0))
    }

    fn duration(&self, default: f64) -> Duration {
        Duration::from_secs_f64(self.timeout.unwrap_or(default).max(0.0))
    }

    /// Prints `text`, or `value` under `--json`.
    fn emit(&mut self, text: &str, value: Value) -> Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(&value)?)?;
        } else {
            write!(self.out, "{text}")?;
            if !text.is_empty() && !text.ends_with('\n') {
                writeln!(self.out)?;
            }
        }
        Ok(())
    }
}

/// Runs the tool with `args` (program name first), writing to stdout and
/// stderr. Returns the exit status.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_to(args, &mut lock, &mut std::io::stderr())
}

/// [`run`] with explicit output streams.
pub fn run_to<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return Exit::Input as i32;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        seed: cli.seed,
        timeout: cli.timeout,
        cap_base: cli.cap_base,
        addr_len: cli.addr_len,
        out,
    };
    match dispatch(&mut ctx, cli.cmd) {
        Ok(code) => code as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_for(&e) as i32
        }
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Cmd) -> Result<Exit> {
    match cmd {
        Cmd::Ground { program } => cmd_ground(ctx, &program),
        Cmd::Solve { program, limit } => cmd_solve(ctx, &program, limit),
        Cmd::Entail { program, atom } => cmd_entail(ctx, &program, &atom),
        Cmd::Prove { formula } => cmd_prove(ctx, &formula),
        Cmd::Check { term, formula } => cmd_check(ctx, &term, &formula),
        Cmd::TranslateAsp {
            program,
            goal,
            stats,
            output,
        } => cmd_translate_asp(ctx, &program, &goal, stats, output),
        Cmd::TranslateFormula {
            formula,
            full_facts,
            full,
            output,
        } => cmd_translate_formula(ctx, &formula, full_facts, full, output),
        Cmd::SoupCheck { formula, soup } => cmd_soup_check(ctx, &formula, &soup),
        Cmd::SoupFind { formula, output } => cmd_soup_find(ctx, &formula, output),
        Cmd::SoupToModel { formula, soup } => cmd_soup_to_model(ctx, &formula, &soup),
        Cmd::ModelToSoup { formula, model } => cmd_model_to_soup(ctx, &formula, &model),
        Cmd::RoundtripAsp { count, quiet } => {
            let spec = CorpusSpec::small_programs(count, ctx.seed);
            let reports = roundtrip::roundtrip_asp(&spec, ctx.duration(10.0));
            report_all(ctx, &reports, quiet)
        }
        Cmd::RoundtripLogic {
            count,
            max_len,
            quiet,
        } => {
            let mut spec = CorpusSpec::small_formulas(count, ctx.seed);
            spec.max_size = max_len;
            let opts = LogicOptions {
                timeout: ctx.duration(30.0),
                addr_len: ctx.addr_len,
                ..LogicOptions::default()
            };
            let reports = roundtrip::roundtrip_logic(&spec, &opts);
            report_all(ctx, &reports, quiet)
        }
    }
}

fn program(path: &str) -> Result<Program> {
    load_program(&read_file(path)?).with_context(|| format!("in {path}"))
}

fn formula(arg: &str) -> Result<Formula> {
    let text = file_or_text(arg)?;
    Ok(parse_formula(&text)?)
}

fn write_output(ctx: &mut Ctx, output: Option<PathBuf>, text: &str, value: Value) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
            ctx.emit(
                &format!("wrote {}\n", path.display()),
                json!({ "wrote": path }),
            )
        }
        None => ctx.emit(text, value),
    }
}

/// Every stable model: subset enumeration within the base cap, the
/// conflict-driven search beyond it.
fn models(ctx: &Ctx, p: &Program, limit: Option<usize>, budget: &dyn Budget) -> Result<Vec<Model>> {
    if p.base_size() <= ctx.cap_base {
        let mut ms = stable_models(p, ctx.cap_base, budget)?;
        if let Some(k) = limit {
            ms.truncate(k);
        }
        Ok(ms)
    } else {
        let g = ground(p, DEFAULT_GROUNDING_CAP)?;
        Ok(enumerate_stable_models(&g, limit, budget)?)
    }
}

fn cmd_ground(ctx: &mut Ctx, path: &str) -> Result<Exit> {
    let p = program(path)?;
    let g = ground(&p, DEFAULT_GROUNDING_CAP)?;
    let text = g.render();
    let clauses: Vec<&str> = text.lines().collect();
    let value = json!({ "atoms": g.base_size(), "clauses": clauses });
    ctx.emit(&text, value)?;
    Ok(Exit::Ok)
}

fn cmd_solve(ctx: &mut Ctx, path: &str, limit: Option<usize>) -> Result<Exit> {
    let p = program(path)?;
    let ms = models(ctx, &p, limit, &ctx.budget())?;
    let text = if ms.is_empty() {
        "no stable models\n".to_string()
    } else {
        ms.iter().map(|m| render_model(m) + "\n").collect()
    };
    let list: Vec<Vec<String>> = ms
        .iter()
        .map(|m| m.iter().map(|a| a.to_string()).collect())
        .collect();
    ctx.emit(&text, json!({ "models": list }))?;
    Ok(if ms.is_empty() {
        Exit::Negative
    } else {
        Exit::Ok
    })
}

fn cmd_entail(ctx: &mut Ctx, path: &str, atom: &str) -> Result<Exit> {
    let p = program(path)?;
    let a = parse_ground_atom(atom)?;
    let ms = models(ctx, &p, None, &ctx.budget())?;
    let entailed = ms.iter().all(|m| m.contains(&a));
    let text = if entailed {
        format!("ENTAILED {a} ({} stable models)\n", ms.len())
    } else {
        let w = ms
            .iter()
            .find(|m| !m.contains(&a))
            .expect("a counter-model");
        format!(
            "NOT ENTAILED {a}: stable model {} lacks it\n",
            render_model(w)
        )
    };
    ctx.emit(
        &text,
        json!({ "atom": a.to_string(), "entailed": entailed, "models": ms.len() }),
    )?;
    Ok(if entailed { Exit::Ok } else { Exit::Negative })
}

fn cmd_prove(ctx: &mut Ctx, arg: &str) -> Result<Exit> {
    let phi = formula(arg)?;
    match prove_sigma1(&phi, &ctx.budget())? {
        Some(t) => {
            ctx.emit(
                &format!("PROVABLE\n{t}\n"),
                json!({ "provable": true, "certificate": t.to_string() }),
            )?;
            Ok(Exit::Ok)
        }
        None => {
            ctx.emit(
                "NOT PROVABLE\n",
                json!({ "provable": false, "certificate": null }),
            )?;
            Ok(Exit::Negative)
        }
    }
}

fn cmd_check(ctx: &mut Ctx, term: &str, arg: &str) -> Result<Exit> {
    let t = parse_term(&file_or_text(term)?)?;
    let phi = formula(arg)?;
    let env = Environment::new();
    let verdict = check_verbose(&env, &t, &phi);
    let lnf = verdict.is_ok() && is_lnf(&env, &t, &phi);
    let text = match &verdict {
        Ok(()) if lnf => "VALID (long normal form)\n".to_string(),
        Ok(()) => "VALID (not in long normal form)\n".to_string(),
        Err(e) => format!("INVALID: {e}\n"),
    };
    let reason = verdict.as_ref().err().cloned();
    ctx.emit(
        &text,
        json!({ "valid": verdict.is_ok(), "lnf": lnf, "reason": reason }),
    )?;
    Ok(if verdict.is_ok() {
        Exit::Ok
    } else {
        Exit::Negative
    })
}

fn cmd_translate_asp(
    ctx: &mut Ctx,
    path: &str,
    goal: &str,
    stats: bool,
    output: Option<PathBuf>,
) -> Result<Exit> {
    let p = program(path)?;
    let t = asp_to_sigma::translate(&p, goal)?;
    let counts = t.stats();
    if stats {
        let mut text = String::new();
        for (k, c) in counts.iter().enumerate() {
            text.push_str(&format!(
                "{:>2} {:<30} {c}\n",
                k + 1,
                asp_to_sigma::SCHEMA_NAMES[k]
            ));
        }
        text.push_str(&format!("   {:<30} {}\n", "total", t.axioms.len()));
        let per: Vec<Value> = counts
            .iter()
            .enumerate()
            .map(|(k, c)| json!({ "schema": k + 1, "name": asp_to_sigma::SCHEMA_NAMES[k], "axioms": c }))
            .collect();
        ctx.emit(&text, json!({ "schemas": per, "total": t.axioms.len() }))?;
        if output.is_none() {
            return Ok(Exit::Ok);
        }
    }
    let text = asp_to_sigma::render(&t, &p);
    let value =
        json!({ "goal": t.omega, "formula": t.formula().to_string(), "schema_counts": counts });
    write_output(ctx, output, &text, value)?;
    Ok(Exit::Ok)
}

fn address_length(ctx: &Ctx, a: &Analysis, full: bool, budget: &dyn Budget) -> Result<usize> {
    Ok(match ctx.addr_len {
        Some(l) => l,
        None if full => full_addr_len(a, SOUP_CAP, budget)?,
        None => a.default_addr_len(),
    })
}

fn cmd_translate_formula(
    ctx: &mut Ctx,
    arg: &str,
    full_facts: bool,
    full: bool,
    output: Option<PathBuf>,
) -> Result<Exit> {
    let phi = formula(arg)?;
    let a = analyze(&phi)?;
    let l = address_length(ctx, &a, full, &ctx.budget())?;
    let t = translate_analysis(a, l, full_facts, DEFAULT_EMISSION_CAP)?;
    let text = sigma_to_asp::render(&t);
    let value = json!({
        "n": t.analysis.n,
        "r": t.analysis.r,
        "addr_len": l,
        "bound_addr_len": t.analysis.bound_addr_len(),
        "schema_counts": t.counts,
        "clauses": t.program.clauses.len(),
    });
    write_output(ctx, output, &text, value)?;
    Ok(Exit::Ok)
}

fn cmd_soup_check(ctx: &mut Ctx, arg: &str, soup: &str) -> Result<Exit> {
    let a = analyze(&formula(arg)?)?;
    let z = parse_soup(&read_file(soup)?, &a)?;
    let report = check_soup(&z, &a);
    let mut text = if report.ok {
        "VALID SOUP\n".to_string()
    } else {
        "INVALID SOUP\n".to_string()
    };
    for d in &report.diagnostics {
        text.push_str(&format!("  {d}\n"));
    }
    ctx.emit(
        &text,
        json!({ "valid": report.ok, "diagnostics": report.diagnostics }),
    )?;
    Ok(if report.ok { Exit::Ok } else { Exit::Negative })
}

fn cmd_soup_find(ctx: &mut Ctx, arg: &str, output: Option<PathBuf>) -> Result<Exit> {
    let a = analyze(&formula(arg)?)?;
    let found = find_soup(&a, SOUP_CAP, &ctx.budget())?;
    match found.soup {
        Some(z) => {
            let text = render_soup(&z, &a);
            let value = json!({
                "refutable": true,
                "judgments": z.judgments.len(),
                "addr_len": z.addr_len,
                "candidates": found.candidates,
                "soup": text,
            });
            write_output(ctx, output, &text, value)?;
            Ok(Exit::Ok)
        }
        None => {
            let value = json!({ "refutable": false, "candidates": found.candidates });
            ctx.emit("NO SOUP (the formula is provable)\n", value)?;
            Ok(Exit::Negative)
        }
    }
}

fn cmd_soup_to_model(ctx: &mut Ctx, arg: &str, soup: &str) -> Result<Exit> {
    let budget = ctx.budget();
    let a = analyze(&formula(arg)?)?;
    let z = parse_soup(&read_file(soup)?, &a)?;
    let l = address_length(ctx, &a, true, &budget)?;
    let t = translate_analysis(a, l, false, DEFAULT_EMISSION_CAP)?;
    let g = t.ground()?;
    let boiled = model_from_soup(&z, &t)?;
    let stable = is_stable(&g, &boiled.model)?;
    let text = format!(
        "% model of the translation at address length {l}; stable: {}\n{}",
        if stable { "yes" } else { "no" },
        render_model_lines(&boiled.model)
    );
    let atoms: Vec<String> = boiled.model.iter().map(|x| x.to_string()).collect();
    ctx.emit(
        &text,
        json!({ "addr_len": l, "stable": stable, "trimmed": boiled.trimmed, "model": atoms }),
    )?;
    if !stable {
        bail!(asp_sigma_core::Error::CrossCheck(
            "model built from a valid soup is not stable".into()
        ));
    }
    Ok(Exit::Ok)
}

fn cmd_model_to_soup(ctx: &mut Ctx, arg: &str, model: &str) -> Result<Exit> {
    let a = analyze(&formula(arg)?)?;
    let m = parse_model(&read_file(model)?)?;
    let l = address_length(ctx, &a, false, &ctx.budget())?;
    let t = translate_analysis(a, l, false, DEFAULT_EMISSION_CAP)?;
    let g = t.ground()?;
    let z = soup_from_model(&m, &t, &g)?;
    let report = check_soup(&z, &t.analysis);
    let text = render_soup(&z, &t.analysis);
    ctx.emit(&text, json!({ "addr_len": l, "valid": report.ok, "diagnostics": report.diagnostics, "soup": text }))?;
    if !report.ok {
        bail!(asp_sigma_core::Error::CrossCheck(
            "soup read from a stable model fails its check".into()
        ));
    }
    Ok(Exit::Ok)
}

fn report_all(ctx: &mut Ctx, reports: &[RoundTripReport], quiet: bool) -> Result<Exit> {
    let failed = reports.iter().filter(|r| !r.ok()).count();
    let skipped = reports
        .iter()
        .filter(|r| r.ok() && r.skipped.is_some())
        .count();
    let mut text = String::new();
    for r in reports.iter().filter(|r| !quiet || !r.ok()) {
        text.push_str(&r.line());
        text.push('\n');
    }
    text.push_str(&format!(
        "{} instances: {} agree, {failed} disagree, {skipped} skipped\n",
        reports.len(),
        reports.len() - failed - skipped
    ));
    let value = json!({
        "instances": reports.len(),
        "failed": failed,
        "skipped": skipped,
        "reports": reports,
    });
    ctx.emit(&text, value)?;
    Ok(if failed == 0 {
        Exit::Ok
    } else {
        Exit::Negative
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["asp-sigma"];
        argv.extend_from_slice(args);
        let code = run_to(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn temp(name: &str, text: &str) -> String {
        let dir = std::env::temp_dir().join(format!("asp-sigma-cmd-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn solve_and_entail() {
        let odd = temp("odd.lp", "p :- not p.\n");
        let (code, out, _) = run_str(&["solve", &odd]);
        assert_eq!((code, out.as_str()), (1, "no stable models\n"));
        let choice = temp("choice.lp", "p :- not q.\nq :- not p.\n");
        let (code, out, _) = run_str(&["solve", &choice]);
        assert_eq!((code, out.as_str()), (0, "{p}\n{q}\n"));
        assert_eq!(run_str(&["entail", &odd, "omega"]).0, 0);
        assert_eq!(run_str(&["entail", &choice, "p"]).0, 1);
        let (code, out, _) = run_str(&["--json", "solve", &choice]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["models"][1][0], "q");
    }

    #[test]
    fn prove_and_check() {
        let (code, out, _) = run_str(&["prove", "a -> a"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PROVABLE\n"));
        let term = out.lines().nth(1).unwrap().to_string();
        let (code, out, _) = run_str(&["check", &term, "a -> a"]);
        assert_eq!((code, out.as_str()), (0, "VALID (long normal form)\n"));
        assert_eq!(
            run_str(&["prove", "b -> a"]),
            (1, "NOT PROVABLE\n".into(), String::new())
        );
        assert_eq!(run_str(&["check", "\\X:b. X", "b -> a"]).0, 1);
    }

    #[test]
    fn exit_codes_for_bad_input_and_budget() {
        assert_eq!(run_str(&["prove", "a ->"]).0, 2);
        assert_eq!(run_str(&["solve", "/nonexistent/file.lp"]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
        let choice = temp("big.lp", "p :- not q.\nq :- not p.\n");
        assert_eq!(run_str(&["--timeout", "0", "solve", &choice]).0, 3);
    }

    #[test]
    fn soup_commands_chain() {
        let soup = temp("peirce.soup", "");
        let (code, _, _) = run_str(&["soup-find", "((a -> b) -> a) -> a", "-o", &soup]);
        assert_eq!(code, 0);
        assert_eq!(run_str(&["soup-check", "((a -> b) -> a) -> a", &soup]).0, 0);
        let (code, out, err) = run_str(&["soup-to-model", "((a -> b) -> a) -> a", &soup]);
        assert_eq!(code, 0, "{err}");
        let model = temp("peirce.model", &out);
        let (code, _, err) = run_str(&[
            "--addr-len",
            "2",
            "model-to-soup",
            "((a -> b) -> a) -> a",
            &model,
        ]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(run_str(&["soup-find", "a -> a"]).0, 1);
    }

    #[test]
    fn translations() {
        let odd = temp("odd2.lp", "p :- not p.\n");
        let (code, out, _) = run_str(&["translate-asp", &odd, "--stats"]);
        assert_eq!(code, 0);
        assert!(out.contains("total"));
        let (code, out, _) = run_str(&["translate-asp", &odd]);
        assert_eq!(code, 0);
        assert!(parse_formula(&out).is_ok());
        let (code, out, _) = run_str(&["translate-formula", "b -> a", "--addr-len", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("address length = 1"));
        let lp = temp("ba.lp", &out);
        assert_eq!(run_str(&["solve", &lp, "--limit", "1"]).0, 0);
        let (_, out, _) = run_str(&["translate-formula", "a -> a", "--full"]);
        let lp = temp("aa.lp", &out);
        assert_eq!(run_str(&["solve", &lp]).0, 1);
    }

    #[test]
    fn roundtrips() {
        let (code, out, _) = run_str(&["roundtrip-asp", "--count", "30", "-q"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("30 instances"));
        let (code, out, _) = run_str(&["--json", "roundtrip-logic", "--count", "20"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reports"].as_array().unwrap().len(), 20);
    }
}
