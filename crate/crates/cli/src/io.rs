//! Reading inputs, model files, wall-clock budgets and exit codes.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use asp_sigma_core::asp::Model;
use asp_sigma_core::syntax::{is_variable_name, parse_ground_atom};
use asp_sigma_core::{Budget, Error};

/// Exit status of the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    /// A negative verdict where a positive one was asked for.
    Negative = 1,
    Input = 2,
    Budget = 3,
}

/// Maps a library error to the exit status it warrants.
pub fn exit_for(e: &anyhow::Error) -> Exit {
    match e.downcast_ref::<Error>() {
        Some(
            Error::BudgetExhausted
            | Error::GroundingCap { .. }
            | Error::EnumerationCap { .. }
            | Error::JudgmentCap { .. }
            | Error::EmissionCap { .. }
            | Error::AddressSpace { .. },
        ) => Exit::Budget,
        Some(Error::CrossCheck(_)) => Exit::Negative,
        _ => Exit::Input,
    }
}

/// A wall-clock deadline.
#[derive(Debug, Clone, Copy)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn after(d: Duration) -> Deadline {
        Deadline(Instant::now().checked_add(d))
    }

    pub fn never() -> Deadline {
        Deadline(None)
    }
}

impl Budget for Deadline {
    fn expired(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_file(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

/// The contents of `arg` if it names a file, otherwise `arg` itself.
pub fn file_or_text(arg: &str) -> Result<String> {
    if arg == "-" || Path::new(arg).is_file() {
        read_file(arg)
    } else {
        Ok(arg.to_string())
    }
}

/// Drops `%` comments.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('%').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses a model: ground atoms separated by whitespace, commas or periods,
/// optionally inside braces. Atom arguments may contain commas inside parentheses.
pub fn parse_model(text: &str) -> Result<Model> {
    let text = strip_comments(text);
    let mut m = Model::new();
    let mut depth = 0;
    let mut cur = String::new();
    let mut flush = |cur: &mut String| -> Result<()> {
        let t = cur.trim();
        if !t.is_empty() {
            let a = parse_ground_atom(t)?;
            if let Some(v) = a.args.iter().find(|x| is_variable_name(x)) {
                anyhow::bail!("`{t}` is not ground: `{v}` is a variable");
            }
            m.insert(a);
        }
        cur.clear();
        Ok(())
    };
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            '{' | '}' => flush(&mut cur)?,
            ',' | '.' if depth == 0 => flush(&mut cur)?,
            c if c.is_whitespace() && depth == 0 => flush(&mut cur)?,
            c if c.is_whitespace() => {}
            _ => cur.push(c),
        }
    }
    flush(&mut cur)?;
    Ok(m)
}

/// `{a, p(c)}` in sorted order.
pub fn render_model(m: &Model) -> String {
    let atoms: Vec<String> = m.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", atoms.join(", "))
}

/// One atom per line, each followed by a period.
pub fn render_model_lines(m: &Model) -> String {
    m.iter().map(|a| format!("{a}.\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_round_trip() {
        let m = parse_model("{p(c,d), q} % comment\n r(c).").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(render_model(&m), "{p(c,d), q, r(c)}");
        assert_eq!(parse_model(&render_model_lines(&m)).unwrap(), m);
        assert!(parse_model("{}").unwrap().is_empty());
        assert!(parse_model("p(X)").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_for(&Error::BudgetExhausted.into()), Exit::Budget);
        assert_eq!(exit_for(&Error::EmptyDomain.into()), Exit::Input);
        assert_eq!(exit_for(&anyhow::anyhow!("io")), Exit::Input);
        assert!(!Deadline::never().expired());
        assert!(Deadline::after(Duration::ZERO).expired());
    }
}
