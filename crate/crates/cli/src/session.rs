//! REPL and batch sessions.

use std::fs::OpenOptions;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::eval::{eval, run_command, set_zeta, Config, Format, Output};
use crate::parse::{parse_line, Command, Line};
use crate::value::Value;

/// Result of one input line.
#[derive(Debug)]
pub enum Outcome {
    Blank,
    Done(Output),
    Failed(CliError),
    Quit,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// Formats one outcome; `None` for lines that print nothing.
pub fn render(input: &str, outcome: &Outcome, format: Format) -> Option<String> {
    match (outcome, format) {
        (Outcome::Blank | Outcome::Quit, _) => None,
        (Outcome::Done(o), Format::Human) => Some(o.human()),
        (Outcome::Failed(e), Format::Human) => Some(format!("error: {e}")),
        (Outcome::Done(o), Format::Structured) => Some(format!(
            "input={}\tvalue={}\tresidual={}\ttier={}",
            escape(input.trim()),
            escape(&o.value),
            o.residual.as_deref().unwrap_or("-"),
            o.tier
        )),
        (Outcome::Failed(e), Format::Structured) => {
            let span = e.span().map_or("-".to_string(), |(a, b)| format!("{a}..{b}"));
            Some(format!(
                "input={}\terror={}\tspan={span}\tcode={}\tmessage={}",
                escape(input.trim()),
                e.kind(),
                e.exit_code(),
                escape(&e.to_string())
            ))
        }
    }
}

fn evaluate(line: &Line, cfg: &Config, ans: Option<&Value>) -> Outcome {
    let result = match line {
        Line::Empty => return Outcome::Blank,
        Line::Expr(e) => eval(e, cfg, ans).map(Output::from_value),
        Line::Command(c) => run_command(c, cfg, ans),
    };
    match result {
        Ok(o) => Outcome::Done(o),
        Err(e) => Outcome::Failed(e),
    }
}

/// Interactive state: configuration and the `ans` register.
pub struct Session {
    pub cfg: Config,
    pub ans: Option<Value>,
    history: Option<PathBuf>,
}

impl Session {
    pub fn new(cfg: Config) -> Self {
        Session {
            cfg,
            ans: None,
            history: None,
        }
    }

    pub fn with_history(mut self, path: impl Into<PathBuf>) -> Self {
        self.history = Some(path.into());
        self
    }

    fn record(&self, input: &str) -> Result<(), CliError> {
        let Some(path) = &self.history else {
            return Ok(());
        };
        let io = |source| CliError::Io {
            path: path.clone(),
            source,
        };
        let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        writeln!(f, "{input}").map_err(io)
    }

    /// Applies a `:set` command, returning the confirmation.
    fn apply(&mut self, c: &Command) -> Result<Output, CliError> {
        match c {
            Command::SetTrunc(k) => {
                self.cfg.trunc = *k;
                Ok(Output {
                    value: format!("trunc = {k}"),
                    residual: None,
                    tier: "config",
                    ans: None,
                })
            }
            Command::SetZeta(e) => {
                self.cfg.zeta = set_zeta(e, &self.cfg)?;
                Ok(Output {
                    value: format!("zeta = {}", self.cfg.zeta),
                    residual: None,
                    tier: "config",
                    ans: None,
                })
            }
            _ => unreachable!(),
        }
    }

    pub fn run_line(&mut self, input: &str) -> Outcome {
        if !input.trim().is_empty() {
            if let Err(e) = self.record(input) {
                return Outcome::Failed(e);
            }
        }
        let line = match parse_line(input) {
            Ok(l) => l,
            Err(e) => return Outcome::Failed(e),
        };
        let outcome = match &line {
            Line::Command(Command::Quit) => Outcome::Quit,
            Line::Command(c @ (Command::SetTrunc(_) | Command::SetZeta(_))) => match self.apply(c) {
                Ok(o) => Outcome::Done(o),
                Err(e) => Outcome::Failed(e),
            },
            l => evaluate(l, &self.cfg, self.ans.as_ref()),
        };
        if let Outcome::Done(Output { ans: Some(v), .. }) = &outcome {
            self.ans = Some(v.clone());
        }
        outcome
    }

    /// Reads lines until end of input or `:quit`, printing each result.
    pub fn repl(
        &mut self,
        input: impl BufRead,
        mut out: impl Write,
        mut err: impl Write,
        prompt: bool,
    ) -> std::io::Result<()> {
        let mut lines = input.lines();
        loop {
            if prompt {
                write!(out, "> ")?;
                out.flush()?;
            }
            let Some(line) = lines.next() else {
                return Ok(());
            };
            let line = line?;
            let outcome = self.run_line(&line);
            if let Outcome::Quit = outcome {
                return Ok(());
            }
            if let Some(text) = render(&line, &outcome, self.cfg.format) {
                match (&outcome, self.cfg.format) {
                    (Outcome::Failed(_), Format::Human) => writeln!(err, "{text}")?,
                    _ => writeln!(out, "{text}")?,
                }
            }
        }
    }
}

/// Output of a batch run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchReport {
    pub output: String,
    pub errors: String,
    /// 0 when every line succeeded, otherwise the largest error code seen.
    pub exit_code: i32,
}

enum Planned {
    Ready(Outcome),
    Eval(Line, Config),
}

/// Evaluates a batch script. `:set` lines and parsing run first, in order,
/// to fix the configuration each line sees; independent lines are then
/// evaluated in parallel and lines reading `ans` in a final ordered pass.
pub fn run_batch(text: &str, cfg: &Config) -> BatchReport {
    let mut session = Session::new(cfg.clone());
    let mut plan: Vec<(&str, Planned)> = Vec::new();
    for input in text.lines() {
        let planned = match parse_line(input) {
            Err(e) => Planned::Ready(Outcome::Failed(e)),
            Ok(Line::Command(Command::Quit)) => break,
            Ok(Line::Command(c @ (Command::SetTrunc(_) | Command::SetZeta(_)))) => {
                Planned::Ready(match session.apply(&c) {
                    Ok(o) => Outcome::Done(o),
                    Err(e) => Outcome::Failed(e),
                })
            }
            Ok(line) => Planned::Eval(line, session.cfg.clone()),
        };
        plan.push((input, planned));
    }
    let independent = |p: &Planned| match p {
        Planned::Eval(Line::Expr(e), _) => !e.uses_ans(),
        Planned::Eval(Line::Command(c), _) => !c.uses_ans(),
        _ => false,
    };
    let early: Vec<Option<Outcome>> = surreal::par::map(&plan, |(_, p)| match p {
        Planned::Eval(line, cfg) if independent(p) => Some(evaluate(line, cfg, None)),
        _ => None,
    });
    let mut report = BatchReport {
        output: String::new(),
        errors: String::new(),
        exit_code: 0,
    };
    let mut ans: Option<Value> = None;
    for ((input, planned), done) in plan.into_iter().zip(early) {
        let outcome = match (done, planned) {
            (Some(o), _) => o,
            (None, Planned::Ready(o)) => o,
            (None, Planned::Eval(line, cfg)) => evaluate(&line, &cfg, ans.as_ref()),
        };
        match &outcome {
            Outcome::Done(Output { ans: Some(v), .. }) => ans = Some(v.clone()),
            Outcome::Failed(e) => report.exit_code = report.exit_code.max(e.exit_code()),
            _ => {}
        }
        if let Some(text) = render(input, &outcome, cfg.format) {
            let sink = match (&outcome, cfg.format) {
                (Outcome::Failed(_), Format::Human) => &mut report.errors,
                _ => &mut report.output,
            };
            sink.push_str(&text);
            sink.push('\n');
        }
    }
    report
}

pub fn run_batch_file(path: &Path, cfg: &Config) -> Result<BatchReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(run_batch(&text, cfg))
}
