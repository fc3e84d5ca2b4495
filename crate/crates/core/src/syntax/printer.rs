//! Pretty printing. Output reparses to an α-equal object: binder names are
//! chosen from the hints, primed until they clash with nothing in scope.

use std::collections::BTreeSet;
use std::fmt;

use super::ast::{Binder, Formula, Term};
use super::lexer::is_keyword;
use super::ops::used_names;
use super::parser::looks_like_variable;
use super::symbol::Symbol;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

struct Glyphs {
    forall: &'static str,
    exists: &'static str,
    eps: &'static str,
    not: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
    neq: &'static str,
    le: &'static str,
    truth: &'static str,
    falsity: &'static str,
}

const ASCII: Glyphs = Glyphs {
    forall: "forall ",
    exists: "exists ",
    eps: "eps ",
    not: "not ",
    and: " and ",
    or: " or ",
    implies: " -> ",
    neq: " != ",
    le: " <= ",
    truth: "true",
    falsity: "false",
};

const UNICODE: Glyphs = Glyphs {
    forall: "∀",
    exists: "∃",
    eps: "ε",
    not: "¬",
    and: " ∧ ",
    or: " ∨ ",
    implies: " ⇒ ",
    neq: " ≠ ",
    le: " ≤ ",
    truth: "⊤",
    falsity: "⊥",
};

struct Printer {
    glyphs: &'static Glyphs,
    taken: BTreeSet<Symbol>,
    scope: Vec<Symbol>,
    out: String,
}

// Formula precedence levels, loosest first.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

// Term contexts.
const ARG: u8 = 0;
const SUM: u8 = 1;
const PROD: u8 = 2;

impl Printer {
    fn new(style: Style, taken: BTreeSet<Symbol>) -> Self {
        let glyphs = match style {
            Style::Ascii => &ASCII,
            Style::Unicode => &UNICODE,
        };
        Printer { glyphs, taken, scope: Vec::new(), out: String::new() }
    }

    fn pick(&self, hint: &Binder) -> Symbol {
        let base = hint.hint().as_str();
        let base = if base.is_empty() || is_keyword(base) || !Symbol::new(base).is_identifier() { "x" } else { base };
        let mut name = base.to_string();
        while self.taken.contains(name.as_str()) || self.scope.iter().any(|s| s.as_str() == name) {
            name.push('\'');
        }
        Symbol::from(name)
    }

    /// `top`: position where a trailing quantifier may extend freely.
    fn formula(&mut self, f: &Formula, level: u8, top: bool) {
        let g = self.glyphs;
        match f {
            Formula::True => self.out.push_str(g.truth),
            Formula::False => self.out.push_str(g.falsity),
            Formula::Pred(p, args) => self.pred(p, args),
            Formula::Eq(a, b) => {
                self.term(a, SUM);
                self.out.push_str(" = ");
                self.term(b, SUM);
            }
            Formula::Not(inner) => {
                if let Formula::Eq(a, b) = &**inner {
                    self.term(a, SUM);
                    self.out.push_str(g.neq);
                    self.term(b, SUM);
                    return;
                }
                self.out.push_str(g.not);
                self.formula(inner, UNARY, false);
            }
            Formula::And(a, b) => self.binary(a, b, g.and, AND, level),
            Formula::Or(a, b) => self.binary(a, b, g.or, OR, level),
            Formula::Implies(a, b) => {
                let paren = level > IMP;
                if paren {
                    self.out.push('(');
                }
                self.formula(a, IMP + 1, false);
                self.out.push_str(g.implies);
                self.formula(b, IMP, false);
                if paren {
                    self.out.push(')');
                }
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let paren = !top;
                if paren {
                    self.out.push('(');
                }
                let kw = if matches!(f, Formula::Forall(..)) { g.forall } else { g.exists };
                let name = self.pick(x);
                self.out.push_str(kw);
                self.out.push_str(name.as_str());
                self.out.push_str(". ");
                self.scope.push(name);
                self.formula(body, IMP, true);
                self.scope.pop();
                if paren {
                    self.out.push(')');
                }
            }
        }
    }

    fn binary(&mut self, a: &Formula, b: &Formula, op: &str, own: u8, level: u8) {
        let paren = level > own;
        if paren {
            self.out.push('(');
        }
        // right-nested chains print flat
        self.formula(a, own + 1, false);
        self.out.push_str(op);
        self.formula(b, own, false);
        if paren {
            self.out.push(')');
        }
    }

    fn pred(&mut self, p: &Symbol, args: &[Term]) {
        match (p.as_str(), args) {
            ("<", [a, b]) => {
                self.term(a, SUM);
                self.out.push_str(" < ");
                self.term(b, SUM);
            }
            ("<=", [a, b]) => {
                self.term(a, SUM);
                self.out.push_str(self.glyphs.le);
                self.term(b, SUM);
            }
            _ => {
                self.out.push_str(p.as_str());
                if !args.is_empty() {
                    self.args(args);
                }
            }
        }
    }

    fn args(&mut self, args: &[Term]) {
        self.out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                self.out.push_str(", ");
            }
            self.term(a, ARG);
        }
        self.out.push(')');
    }

    fn term(&mut self, t: &Term, ctx: u8) {
        match t {
            Term::Bound(i) => match self.scope.len().checked_sub(i + 1) {
                Some(k) => {
                    let name = self.scope[k].clone();
                    self.out.push_str(name.as_str());
                }
                None => self.out.push_str(&format!("?{i}")),
            },
            Term::Var(v) => self.out.push_str(v.as_str()),
            Term::App(f, args) => match (f.as_str(), args.as_slice()) {
                ("+", [a, b]) => {
                    let paren = ctx > SUM;
                    if paren {
                        self.out.push('(');
                    }
                    self.term(a, SUM);
                    self.out.push_str(" + ");
                    self.term(b, PROD);
                    if paren {
                        self.out.push(')');
                    }
                }
                ("*", [a, b]) => {
                    let paren = ctx > PROD;
                    if paren {
                        self.out.push('(');
                    }
                    self.term(a, PROD);
                    self.out.push_str(" * ");
                    self.term(b, PROD + 1);
                    if paren {
                        self.out.push(')');
                    }
                }
                _ => {
                    self.out.push_str(f.as_str());
                    if !args.is_empty() {
                        self.args(args);
                    }
                }
            },
            Term::Eps(x, body) => {
                let paren = ctx != ARG;
                if paren {
                    self.out.push('(');
                }
                let name = self.pick(x);
                self.out.push_str(self.glyphs.eps);
                self.out.push_str(name.as_str());
                self.out.push_str(". ");
                self.scope.push(name);
                self.formula(body, IMP, true);
                self.scope.pop();
                if paren {
                    self.out.push(')');
                }
            }
        }
    }
}

fn taken_for_formula(f: &Formula) -> BTreeSet<Symbol> {
    used_names(f)
}

fn taken_for_term(t: &Term) -> BTreeSet<Symbol> {
    used_names(&Formula::Eq(t.clone(), t.clone()))
}

pub fn formula_to_string(f: &Formula, style: Style) -> String {
    let mut p = Printer::new(style, taken_for_formula(f));
    p.formula(f, IMP, true);
    p.out
}

pub fn term_to_string(t: &Term, style: Style) -> String {
    let mut p = Printer::new(style, taken_for_term(t));
    p.term(t, ARG);
    p.out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&formula_to_string(self, Style::Ascii))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&term_to_string(self, Style::Ascii))
    }
}

impl Formula {
    pub fn to_unicode(&self) -> String {
        formula_to_string(self, Style::Unicode)
    }
}

impl Term {
    pub fn to_unicode(&self) -> String {
        term_to_string(self, Style::Unicode)
    }
}

/// Free variables whose names would not reparse as variables, and constants
/// whose names would; file writers declare these explicitly.
pub fn needs_declaration(f: &Formula) -> (BTreeSet<Symbol>, BTreeSet<Symbol>) {
    let vars = super::ops::free_vars(f).into_iter().filter(|v| !looks_like_variable(v.as_str())).collect();
    let consts = super::ops::function_symbols(f)
        .into_iter()
        .filter(|(s, a)| *a == 0 && looks_like_variable(s.as_str()))
        .map(|(s, _)| s)
        .collect();
    (vars, consts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::{parse_formula, parse_term};

    fn round(s: &str) -> String {
        parse_formula(s).unwrap().to_string()
    }

    #[test]
    fn prints_flat_chains() {
        assert_eq!(round("P or Q or R"), "P or Q or R");
        assert_eq!(round("(P -> Q) -> R"), "(P -> Q) -> R");
        assert_eq!(round("P -> Q -> R"), "P -> Q -> R");
        assert_eq!(round("not (P and Q)"), "not (P and Q)");
    }

    #[test]
    fn quantifier_operands_parenthesized() {
        assert_eq!(round("(forall x. P(x)) -> Q"), "(forall x. P(x)) -> Q");
        assert_eq!(round("forall x. exists y. x < y"), "forall x. exists y. x < y");
    }

    #[test]
    fn capture_avoided_by_renaming() {
        // exists y. F(y, x) with x := y
        let f = parse_formula("exists y. F(y, x)").unwrap();
        let g = crate::syntax::substitute(&f, &Symbol::new("x"), &Term::var("y"));
        assert_eq!(g.to_string(), "exists y'. F(y', y)");
        assert_eq!(parse_formula(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn eps_in_operands() {
        let t = parse_term("eps x. x != x").unwrap();
        let f = Formula::neq(t.clone(), t);
        assert_eq!(f.to_string(), "(eps x. x != x) != (eps x. x != x)");
        assert_eq!(f.to_unicode(), "(εx. x ≠ x) ≠ (εx. x ≠ x)");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(round("x + y + z = (x + y) * 2"), "x + y + z = (x + y) * 2");
        assert_eq!(round("x + (y + z) = x * (y * z)"), "x + (y + z) = x * (y * z)");
    }
}
