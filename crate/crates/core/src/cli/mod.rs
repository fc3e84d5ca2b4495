//! The `epsilon` command-line tool. Exit status 0 when every check passes,
//! 1 when a property or verification fails, 2 on usage or input errors.

mod commands;
mod demo;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

pub use demo::DEMOS;

/// Environment variable bounding the worker threads of exhaustive searches.
pub const THREADS_VAR: &str = "EPSILON_KERNEL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "epsilon", version, about = "Epsilon-calculus toolkit")]
pub struct Cli {
    /// Emit a JSON document instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Formula given inline or as the path of a file holding it.
#[derive(Debug, Args)]
pub struct FormulaArg {
    /// Formula text, or a file containing it.
    #[arg(long)]
    pub formula: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replace quantifiers by ε-terms.
    Translate {
        #[command(flatten)]
        formula: FormulaArg,
        /// classical | intuitionistic
        #[arg(long, default_value = "classical")]
        mode: String,
        /// Print each rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Prenex form and matrix.
    Prenex {
        #[command(flatten)]
        formula: FormulaArg,
    },
    /// Skolem resolution of prenex axioms by ε-defined symbols.
    Skolemize {
        /// An axiom; may be repeated.
        #[arg(long = "formula")]
        formulas: Vec<String>,
        /// File with one axiom per line.
        #[arg(long)]
        axioms: Option<PathBuf>,
    },
    /// Evaluate a closed formula or term in a finite model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        formula: FormulaArg,
        /// `min`, or a file of `phi {..} = e` lines; defaults to the model file's table, else `min`.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Check the ε-equivalences and the null-term collapse in one model.
    CheckModel {
        #[arg(long)]
        model: PathBuf,
        /// A formula with one free variable; may be repeated.
        #[arg(long = "formula")]
        formulas: Vec<String>,
        #[arg(long)]
        phi: Option<String>,
    },
    /// Open set of a sentence in a finite space.
    Heyting {
        #[arg(long)]
        space: PathBuf,
        #[command(flatten)]
        formula: FormulaArg,
        /// Also check Markov's principle for this unary predicate.
        #[arg(long)]
        markov: Option<String>,
        /// Fail unless the formula is valid.
        #[arg(long)]
        require_valid: bool,
    },
    /// Forcing, persistence and choice-function conditions in a Kripke structure.
    KripkeCheck {
        #[arg(long)]
        structure: PathBuf,
        /// A sentence; may be repeated.
        #[arg(long = "formula")]
        formulas: Vec<String>,
    },
    /// Exhaustive search for structures refusing excluded middle under the ε-schemas.
    LemSearch {
        #[arg(long, default_value_t = 3)]
        worlds: usize,
        #[arg(long, default_value_t = 2)]
        domain: usize,
    },
    /// Check a derivation file against a calculus.
    ProveCheck {
        #[arg(long)]
        derivation: PathBuf,
        /// cp | cp-eps | cp-eps* | ce | cpi-eps
        #[arg(long, default_value = "cp-eps")]
        profile: String,
    },
    /// Remove ε-terms from a proper derivation of an ε-free formula.
    EliminateEpsilon {
        #[arg(long)]
        derivation: PathBuf,
        /// Eliminate only this innermost ε-term.
        #[arg(long)]
        target: Option<String>,
    },
    /// Build and check the ε-derivation of induction for a unary formula.
    ReplayInduction {
        #[command(flatten)]
        formula: FormulaArg,
        /// Check under CP_ε instead of CP_ε*, allowing improper formulas.
        #[arg(long)]
        improper: bool,
    },
    /// Numeric substitution for a set of critical formulas.
    HSubstitute {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 64)]
        cap: u64,
        /// Defaults to 10 * cap * (number of ε-terms).
        #[arg(long)]
        max_iter: Option<usize>,
        /// Print every repair and reset.
        #[arg(long)]
        trace: bool,
        /// Also scan all assignments with values below this bound.
        #[arg(long)]
        oracle: Option<u64>,
    },
    /// Run a scripted scenario.
    Demo {
        /// a1a5 | infinitesimal | cardinals | induction | nested-substitution | bell | heyting-gap
        name: String,
        #[arg(long)]
        cap: Option<u64>,
    },
}

/// What a subcommand produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn new(passed: bool, text: impl Into<String>, json: Value) -> Self {
        Report { passed, text: text.into(), json }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub(crate) fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Run one command; never panics on bad input.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    use Command::*;
    match &cli.command {
        Translate { formula, mode, trace } => commands::translate(&formula.formula, mode, *trace),
        Prenex { formula } => commands::prenex(&formula.formula),
        Skolemize { formulas, axioms } => commands::skolemize(formulas, axioms.as_deref()),
        Eval { model, formula, phi } => commands::eval(model, &formula.formula, phi.as_deref()),
        CheckModel { model, formulas, phi } => commands::check_model(model, formulas, phi.as_deref()),
        Heyting { space, formula, markov, require_valid } => {
            commands::heyting(space, &formula.formula, markov.as_deref(), *require_valid)
        }
        KripkeCheck { structure, formulas } => commands::kripke_check(structure, formulas),
        LemSearch { worlds, domain } => commands::lem_search(*worlds, *domain),
        ProveCheck { derivation, profile } => commands::prove_check(derivation, profile),
        EliminateEpsilon { derivation, target } => commands::eliminate(derivation, target.as_deref()),
        ReplayInduction { formula, improper } => commands::replay(&formula.formula, *improper),
        HSubstitute { problem, cap, max_iter, trace, oracle } => {
            commands::h_substitute(problem, *cap, *max_iter, *trace, *oracle)
        }
        Demo { name, cap } => demo::run(name, *cap),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // a second call in the same process keeps the first pool
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parse `args` (program name first), run, write the report and return the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    configure_threads();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let body = if cli.json {
        let mut doc = serde_json::Map::new();
        doc.insert("command".into(), Value::String(command_name(&cli.command).into()));
        doc.insert("passed".into(), Value::Bool(report.passed));
        doc.insert("report".into(), report.json.clone());
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        let mut s = report.text.clone();
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, body.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if report.passed {
        0
    } else {
        1
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Translate { .. } => "translate",
        Command::Prenex { .. } => "prenex",
        Command::Skolemize { .. } => "skolemize",
        Command::Eval { .. } => "eval",
        Command::CheckModel { .. } => "check-model",
        Command::Heyting { .. } => "heyting",
        Command::KripkeCheck { .. } => "kripke-check",
        Command::LemSearch { .. } => "lem-search",
        Command::ProveCheck { .. } => "prove-check",
        Command::EliminateEpsilon { .. } => "eliminate-epsilon",
        Command::ReplayInduction { .. } => "replay-induction",
        Command::HSubstitute { .. } => "h-substitute",
        Command::Demo { .. } => "demo",
    }
}

/// Inline text, or the contents of the file it names.
pub(crate) fn text_or_file(v: &str) -> Result<String, CliError> {
    let p = std::path::Path::new(v);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|source| CliError::Io { path: v.to_string(), source })
    } else {
        Ok(v.to_string())
    }
}

pub(crate) fn read_file(p: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("epsilon").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn translate_existential() {
        let (code, out, _) = run_str(&["translate", "--formula", "exists x. P(x)"]);
        assert_eq!(code, 0);
        let printed = crate::syntax::parse_formula(out.trim()).unwrap();
        assert_eq!(printed, crate::syntax::parse_formula("P(eps x. P(x))").unwrap());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["no-such-command"]).0, 2);
        assert_eq!(run_str(&["translate", "--formula", "forall x. P(x)", "--mode", "intuitionistic"]).0, 2);
        assert_eq!(run_str(&["translate", "--formula", "P(x) and"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn json_document() {
        let (code, out, _) = run_str(&["--json", "prenex", "--formula", "(forall x. P(x)) and Q"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], "prenex");
        assert_eq!(v["passed"], true);
    }
}
