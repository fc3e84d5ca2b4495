//! Derivations and their text format.
//!
//! One line per step: `n. <formula> ; <justification>`, numbered from 1.
//! `#` starts a comment. Justifications:
//!
//! ```text
//! premise
//! taut                       propositional tautology over opaque atoms
//! taut-from i, j, ...        (Li ∧ Lj ∧ ...) ⇒ L is a tautology
//! mp i, j                    Li = A, Lj = A -> L
//! inst i [t]                 Li = forall x. A, L = A(t)
//! gen-forall i a             Li = psi -> A(a), L = psi -> forall x. A  (or Li = A(a))
//! gen-exists i a             Li = A(a) -> psi, L = (exists x. A) -> psi
//! axiom <schema> [arg] ...   arguments are formulas, terms or `x. F`
//! ```

use std::fmt;

use crate::syntax::{lex, parse_formula, Formula, ParseContext, Parser, Symbol, Term, Tok};

use super::schema::{Arg, ArgKind, Schema};
use super::ProofError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Taut,
    TautFrom(Vec<usize>),
    Mp(usize, usize),
    Inst(usize, Term),
    GenForall(usize, Symbol),
    GenExists(usize, Symbol),
    Axiom(Schema, Vec<Arg>),
}

impl Justification {
    /// Line numbers this justification cites.
    pub fn refs(&self) -> Vec<usize> {
        match self {
            Justification::TautFrom(v) => v.clone(),
            Justification::Mp(i, j) => vec![*i, *j],
            Justification::Inst(i, _) | Justification::GenForall(i, _) | Justification::GenExists(i, _) => vec![*i],
            _ => vec![],
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Justification::Premise => "premise",
            Justification::Taut => "taut",
            Justification::TautFrom(_) => "taut-from",
            Justification::Mp(..) => "mp",
            Justification::Inst(..) => "inst",
            Justification::GenForall(..) => "gen-forall",
            Justification::GenExists(..) => "gen-exists",
            Justification::Axiom(..) => "axiom",
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Premise | Justification::Taut => f.write_str(self.rule_name()),
            Justification::TautFrom(v) => {
                let v: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(f, "taut-from {}", v.join(", "))
            }
            Justification::Mp(i, j) => write!(f, "mp {i}, {j}"),
            Justification::Inst(i, t) => write!(f, "inst {i} [{t}]"),
            Justification::GenForall(i, a) => write!(f, "gen-forall {i} {a}"),
            Justification::GenExists(i, a) => write!(f, "gen-exists {i} {a}"),
            Justification::Axiom(s, args) => {
                write!(f, "axiom {s}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub lines: Vec<Line>,
}

impl Derivation {
    pub fn new() -> Self {
        Derivation::default()
    }

    /// Append a line and return its number.
    pub fn push(&mut self, formula: Formula, just: Justification) -> usize {
        self.lines.push(Line { formula, just });
        self.lines.len()
    }

    /// Line by 1-based number.
    pub fn line(&self, n: usize) -> Option<&Line> {
        n.checked_sub(1).and_then(|i| self.lines.get(i))
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn premises(&self) -> Vec<&Formula> {
        self.lines.iter().filter(|l| l.just == Justification::Premise).map(|l| &l.formula).collect()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Distinct closed ε-terms in the line formulas.
    pub fn epsilon_terms(&self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        for l in &self.lines {
            for t in crate::syntax::closed_eps_subterms(&l.formula) {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Every name used in formulas and justification arguments.
    pub fn used_names(&self) -> std::collections::BTreeSet<Symbol> {
        let mut out = std::collections::BTreeSet::new();
        for l in &self.lines {
            out.extend(crate::syntax::used_names(&l.formula));
            match &l.just {
                Justification::Axiom(_, args) => {
                    for a in args {
                        match a {
                            Arg::Formula(f) | Arg::Abstraction(_, f) => out.extend(crate::syntax::used_names(f)),
                            Arg::Term(t) => out.extend(term_names(t)),
                        }
                    }
                }
                Justification::Inst(_, t) => out.extend(term_names(t)),
                Justification::GenForall(_, a) | Justification::GenExists(_, a) => {
                    out.insert(a.clone());
                }
                _ => {}
            }
        }
        out
    }
}

fn term_names(t: &Term) -> std::collections::BTreeSet<Symbol> {
    crate::syntax::used_names(&Formula::Eq(t.clone(), t.clone()))
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lines.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", i + 1, l.formula, l.just)?;
        }
        Ok(())
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ProofError {
    ProofError::Syntax { line, message: message.into() }
}

/// Parse the text format. `line` in errors is the 1-based file line.
pub fn parse_derivation(src: &str) -> Result<Derivation, ProofError> {
    let mut d = Derivation::new();
    for (k, raw) in src.lines().enumerate() {
        let at = k + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (num, rest) = text.split_once('.').ok_or_else(|| syntax(at, "expected `n. formula ; justification`"))?;
        let num: usize = num.trim().parse().map_err(|_| syntax(at, format!("bad line number `{}`", num.trim())))?;
        if num != d.len() + 1 {
            return Err(syntax(at, format!("expected line number {}, found {num}", d.len() + 1)));
        }
        let (formula, just) = rest.rsplit_once(';').ok_or_else(|| syntax(at, "missing `;` before the justification"))?;
        let formula = parse_formula(formula.trim()).map_err(|e| syntax(at, e.to_string()))?;
        let just = parse_justification(just.trim()).map_err(|m| syntax(at, m))?;
        d.push(formula, just);
    }
    Ok(d)
}

fn numbers(s: &str) -> Result<Vec<usize>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| format!("bad line reference `{p}`")))
        .collect()
}

pub fn parse_justification(s: &str) -> Result<Justification, String> {
    let (rule, rest) = s.split_once(char::is_whitespace).map(|(a, b)| (a, b.trim())).unwrap_or((s, ""));
    let none = |j: Justification| if rest.is_empty() { Ok(j) } else { Err(format!("`{rule}` takes no arguments")) };
    match rule {
        "premise" => none(Justification::Premise),
        "taut" => none(Justification::Taut),
        "taut-from" => {
            let v = numbers(rest)?;
            if v.is_empty() {
                return Err("`taut-from` needs at least one line".into());
            }
            Ok(Justification::TautFrom(v))
        }
        "mp" => match numbers(rest)?.as_slice() {
            [i, j] => Ok(Justification::Mp(*i, *j)),
            _ => Err("`mp` takes two line numbers".into()),
        },
        "gen-forall" | "gen-exists" => {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let [i, a] = parts.as_slice() else {
                return Err(format!("`{rule}` takes a line number and a symbol"));
            };
            let i: usize = i.parse().map_err(|_| format!("bad line reference `{i}`"))?;
            let a = Symbol::new(a);
            if !a.is_identifier() {
                return Err(format!("`{a}` is not a symbol"));
            }
            Ok(if rule == "gen-forall" { Justification::GenForall(i, a) } else { Justification::GenExists(i, a) })
        }
        "inst" => {
            let (i, arg) = rest.split_once(char::is_whitespace).ok_or("`inst` takes a line number and a term")?;
            let i: usize = i.parse().map_err(|_| format!("bad line reference `{i}`"))?;
            let args = parse_args(arg, &[ArgKind::Term])?;
            let Some(Arg::Term(t)) = args.into_iter().next() else { unreachable!("one term parsed") };
            Ok(Justification::Inst(i, t))
        }
        "axiom" => {
            let (name, args) = rest.split_once(char::is_whitespace).map(|(a, b)| (a, b.trim())).unwrap_or((rest, ""));
            let schema = Schema::from_name(name).ok_or_else(|| format!("unknown schema `{name}`"))?;
            Ok(Justification::Axiom(schema, parse_args(args, schema.kinds())?))
        }
        other => Err(format!("unknown rule `{other}`")),
    }
}

/// Bracketed arguments of the given kinds.
pub fn parse_args(src: &str, kinds: &[ArgKind]) -> Result<Vec<Arg>, String> {
    let toks = lex(src, 1).map_err(|e| e.to_string())?;
    let ctx = ParseContext::new();
    let mut p = Parser::new(&toks, &ctx);
    let mut out = Vec::new();
    for k in kinds {
        p.expect(&Tok::LBracket, "`[`").map_err(|e| e.to_string())?;
        let arg = match k {
            ArgKind::Formula => p.formula().map(Arg::Formula),
            ArgKind::Term => p.term().map(Arg::Term),
            ArgKind::Abstraction => p.abstraction().map(|(b, f)| Arg::Abstraction(b, f)),
        }
        .map_err(|e| e.to_string())?;
        p.expect(&Tok::RBracket, "`]`").map_err(|e| e.to_string())?;
        out.push(arg);
    }
    if !p.at_end() {
        return Err(format!("expected {} argument(s)", kinds.len()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "\
# a small derivation
1. P(c) ; premise
2. P(c) -> P(c) ; taut
3. P(c) ; mp 1, 2
4. P(c) -> P(eps x. P(x)) ; axiom eps [x. P(x)] [c]
5. P(eps x. P(x)) ; mp 3, 4
6. forall x. Q(x) ; premise
7. Q(c) ; inst 6 [c]
";

    #[test]
    fn parse_and_print_round_trip() {
        let d = parse_derivation(SRC).unwrap();
        assert_eq!(d.len(), 7);
        assert_eq!(d.lines[3].just, Justification::Axiom(Schema::Eps, match &d.lines[3].just {
            Justification::Axiom(_, a) => a.clone(),
            _ => panic!(),
        }));
        let again = parse_derivation(&d.to_string()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn numbering_is_enforced() {
        let e = parse_derivation("1. P ; premise\n3. P ; taut").unwrap_err();
        assert!(e.to_string().contains("expected line number 2"), "{e}");
    }

    #[test]
    fn bad_rules() {
        assert!(parse_justification("modus 1, 2").is_err());
        assert!(parse_justification("mp 1").is_err());
        assert!(parse_justification("axiom nope [P]").is_err());
        assert!(parse_justification("axiom k [P]").is_err());
        assert_eq!(parse_justification("taut-from 1, 2, 3"), Ok(Justification::TautFrom(vec![1, 2, 3])));
        assert_eq!(parse_justification("gen-exists 4 a0"), Ok(Justification::GenExists(4, Symbol::new("a0"))));
    }

    #[test]
    fn epsilon_terms_listed() {
        let d = parse_derivation(SRC).unwrap();
        assert_eq!(d.epsilon_terms().len(), 1);
        assert_eq!(d.premises().len(), 2);
    }
}
