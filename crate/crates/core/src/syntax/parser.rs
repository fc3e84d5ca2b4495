//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula  := iff
//! iff      := imp ("<->" imp)?
//! imp      := disj ("->" imp)?
//! disj     := conj ("or" disj)?
//! conj     := unary ("and" conj)?
//! unary    := "not" unary | ("forall" | "exists") ident+ "." formula | atom
//! atom     := "true" | "false" | "(" formula ")" | expr (relop expr)?
//! relop    := "=" | "!=" | "<" | "<=" | ">" | ">="
//! expr     := prod ("+" prod)*
//! prod     := primary ("*" primary)*
//! primary  := numeral | ident ("(" expr ("," expr)* ")")? | "eps" ident "." formula | "(" expr ")"
//! ```
//!
//! A bare `expr` in formula position must be a predicate application, or an
//! ε-term `eps x. G` which abbreviates `G(eps x. G)`; so `eps y. eps x. F(x,y)`
//! reads as `eps y. F(eps x. F(x,y), y)`. Quantifier and ε bodies extend as
//! far to the right as possible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ast::{Binder, Formula, Term};
use super::lexer::{lex, Spanned, Tok};
use super::ops::{instantiate, map_formula, shift_term, subst_many};
use super::signature::Signature;
use super::symbol::Symbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken { found: String, expected: String },
    UnexpectedEnd { expected: String },
    ArityMismatch { symbol: String, expected: usize, found: usize },
    UnboundVariable(String),
    UnknownSymbol(String),
    KindConflict(String),
    InvalidCharacter(char),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedToken { found, expected } => write!(f, "expected {expected}, found {found}"),
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::ArityMismatch { symbol, expected, found } => {
                write!(f, "`{symbol}` takes {expected} argument(s), given {found}")
            }
            ParseErrorKind::UnboundVariable(v) => write!(f, "unbound variable `{v}`"),
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            ParseErrorKind::KindConflict(s) => write!(f, "`{s}` used both as a function and as a predicate"),
            ParseErrorKind::InvalidCharacter(c) => write!(f, "invalid character {c:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
}

/// Body of a `def` macro, stated over its parameters as free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefBody {
    Formula(Formula),
    Term(Term),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub params: Vec<Symbol>,
    pub body: DefBody,
}

/// What the parser knows up front.
///
/// In the default (inferring) mode, undeclared nullary names beginning with
/// `u`..`z` followed only by digits, `_` or `'` are free variables and other
/// undeclared names are constants; symbol arities are fixed by first use.
/// In strict mode every name must be declared.
#[derive(Clone, Debug, Default)]
pub struct ParseContext {
    pub signature: Signature,
    pub vars: BTreeSet<Symbol>,
    pub strict: bool,
    pub defs: BTreeMap<Symbol, Definition>,
}

impl ParseContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn strict(signature: Signature) -> Self {
        ParseContext { signature, strict: true, ..Self::default() }
    }

    pub fn with_var(mut self, v: &str) -> Self {
        self.vars.insert(Symbol::new(v));
        self
    }

    /// Parse and register `Name(params) := body` (the leading `def` already
    /// stripped). The body is tried as a formula first, then as a term.
    pub fn define(&mut self, src: &str, line: usize) -> Result<Symbol, ParseError> {
        let toks = lex(src, line)?;
        let mut p = Parser::new(&toks, self);
        let name = p.ident("definition name")?;
        let mut params = Vec::new();
        if p.eat(&Tok::LParen) {
            loop {
                params.push(Symbol::from(p.ident("parameter")?));
                if !p.eat(&Tok::Comma) {
                    break;
                }
            }
            p.expect(&Tok::RParen, "`)`")?;
        }
        p.expect(&Tok::Define, "`:=`")?;
        let start = p.pos;
        let mut inner = self.clone();
        inner.vars.extend(params.iter().cloned());
        let rest = &toks[start..];
        let body = match parse_either(rest, &inner)? {
            Parsed::Formula(f) => DefBody::Formula(f),
            Parsed::Term(t) => DefBody::Term(t),
        };
        let sym = Symbol::from(name);
        self.defs.insert(sym.clone(), Definition { params, body });
        Ok(sym)
    }
}

/// Names of the shape `x`, `y1`, `z'`, `u_2`.
pub fn looks_like_variable(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('u'..='z')) && chars.all(|c| c.is_ascii_digit() || c == '_' || c == '\'')
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    parse_formula_with(src, &ParseContext::new())
}

pub fn parse_formula_with(src: &str, ctx: &ParseContext) -> Result<Formula, ParseError> {
    parse_formula_tokens(&lex(src, 1)?, ctx)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_term_with(src, &ParseContext::new())
}

pub fn parse_term_with(src: &str, ctx: &ParseContext) -> Result<Term, ParseError> {
    parse_term_tokens(&lex(src, 1)?, ctx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Formula(Formula),
    Term(Term),
}

/// Parse a formula or, failing that, a term.
pub fn parse(src: &str) -> Result<Parsed, ParseError> {
    parse_with(src, &ParseContext::new())
}

pub fn parse_with(src: &str, ctx: &ParseContext) -> Result<Parsed, ParseError> {
    parse_either(&lex(src, 1)?, ctx)
}

/// A leading `eps` is read as a term, anything else as a formula first.
fn parse_either(toks: &[Spanned], ctx: &ParseContext) -> Result<Parsed, ParseError> {
    if toks.first().map(|t| &t.tok) == Some(&Tok::Eps) {
        if let Ok(t) = parse_term_tokens(toks, ctx) {
            return Ok(Parsed::Term(t));
        }
    }
    match parse_formula_tokens(toks, ctx) {
        Ok(f) => Ok(Parsed::Formula(f)),
        Err(e1) => match parse_term_tokens(toks, ctx) {
            Ok(t) => Ok(Parsed::Term(t)),
            Err(e2) => Err(if (e2.line, e2.col) > (e1.line, e1.col) { e2 } else { e1 }),
        },
    }
}

pub fn parse_formula_tokens(toks: &[Spanned], ctx: &ParseContext) -> Result<Formula, ParseError> {
    let mut p = Parser::new(toks, ctx);
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term_tokens(toks: &[Spanned], ctx: &ParseContext) -> Result<Term, ParseError> {
    let mut p = Parser::new(toks, ctx);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Function,
    Predicate,
}

/// An identifier application whose role (predicate or term) is not yet known.
enum Expr {
    Ident { name: String, args: Option<Vec<Term>>, line: usize, col: usize },
    Term(Term),
}

/// Token-level parser; exposed so file formats can embed formulas.
pub struct Parser<'a> {
    toks: &'a [Spanned],
    pub pos: usize,
    ctx: &'a ParseContext,
    scope: Vec<Symbol>,
    uses: BTreeMap<String, (Kind, usize)>,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Spanned], ctx: &'a ParseContext) -> Self {
        Parser { toks, pos: 0, ctx, scope: Vec::new(), uses: BTreeMap::new() }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => self.toks.last().map(|s| (s.line, s.col + 1)).unwrap_or((1, 1)),
        }
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.here();
        ParseError { kind, line, col }
    }

    pub fn unexpected(&self, expected: &str) -> ParseError {
        match self.toks.get(self.pos) {
            Some(s) => ParseError {
                kind: ParseErrorKind::UnexpectedToken { found: s.tok.describe(), expected: expected.to_string() },
                line: s.line,
                col: s.col,
            },
            None => self.error(ParseErrorKind::UnexpectedEnd { expected: expected.to_string() }),
        }
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    /// Parse `x. F` where `x` becomes bound in `F`; used for schema arguments.
    pub fn abstraction(&mut self) -> Result<(Binder, Formula), ParseError> {
        let x = Symbol::from(self.ident("bound variable")?);
        self.expect(&Tok::Dot, "`.`")?;
        self.scope.push(x.clone());
        let body = self.formula();
        self.scope.pop();
        Ok((Binder(x), body?))
    }

    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conjunction()?;
        if self.eat(&Tok::Or) {
            let rhs = self.disjunction()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::And) {
            let rhs = self.conjunction()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let universal = self.peek() == Some(&Tok::Forall);
                self.pos += 1;
                let mut names = vec![Symbol::from(self.ident("bound variable")?)];
                while let Some(Tok::Ident(s)) = self.peek() {
                    names.push(Symbol::from(s.clone()));
                    self.pos += 1;
                }
                self.expect(&Tok::Dot, "`.`")?;
                self.scope.extend(names.iter().cloned());
                let body = self.formula();
                self.scope.truncate(self.scope.len() - names.len());
                let mut f = body?;
                for n in names.into_iter().rev() {
                    f = if universal {
                        Formula::Forall(Binder(n), Box::new(f))
                    } else {
                        Formula::Exists(Binder(n), Box::new(f))
                    };
                }
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::LParen) => {
                let save = (self.pos, self.uses.clone());
                self.pos += 1;
                let first = self.formula().and_then(|f| {
                    self.expect(&Tok::RParen, "`)`")?;
                    match self.peek() {
                        Some(Tok::Eq | Tok::Neq | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge | Tok::Plus | Tok::Star) => {
                            Err(self.unexpected("a connective"))
                        }
                        _ => Ok(f),
                    }
                });
                match first {
                    Ok(f) => Ok(f),
                    Err(e1) => {
                        let far1 = self.pos;
                        self.pos = save.0;
                        self.uses = save.1;
                        match self.relational() {
                            Ok(f) => Ok(f),
                            Err(e2) => {
                                let far2 = self.pos;
                                Err(if far2 >= far1 { e2 } else { e1 })
                            }
                        }
                    }
                }
            }
            _ => self.relational(),
        }
    }

    fn relational(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.expr()?;
        let op = match self.peek() {
            Some(t @ (Tok::Eq | Tok::Neq | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge)) => t.clone(),
            _ => return self.as_predicate(lhs),
        };
        self.pos += 1;
        let a = self.to_term(lhs)?;
        let rhs = self.expr()?;
        let b = self.to_term(rhs)?;
        Ok(match op {
            Tok::Eq => Formula::Eq(a, b),
            Tok::Neq => Formula::not(Formula::Eq(a, b)),
            Tok::Lt => self.builtin_pred("<", vec![a, b])?,
            Tok::Le => self.builtin_pred("<=", vec![a, b])?,
            Tok::Gt => self.builtin_pred("<", vec![b, a])?,
            Tok::Ge => self.builtin_pred("<=", vec![b, a])?,
            _ => unreachable!(),
        })
    }

    fn builtin_pred(&mut self, name: &str, args: Vec<Term>) -> Result<Formula, ParseError> {
        self.record(name, Kind::Predicate, args.len())?;
        Ok(Formula::Pred(Symbol::new(name), args))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        while self.eat(&Tok::Plus) {
            let a = self.to_term(lhs)?;
            let rhs = self.product()?;
            let b = self.to_term(rhs)?;
            self.record("+", Kind::Function, 2)?;
            lhs = Expr::Term(Term::add(a, b));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.primary()?;
        while self.eat(&Tok::Star) {
            let a = self.to_term(lhs)?;
            let rhs = self.primary()?;
            let b = self.to_term(rhs)?;
            self.record("*", Kind::Function, 2)?;
            lhs = Expr::Term(Term::mul(a, b));
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Term(Term::App(Symbol::from(n), Vec::new())))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let args = if self.eat(&Tok::LParen) {
                    let mut args = Vec::new();
                    if !self.eat(&Tok::RParen) {
                        loop {
                            args.push(self.term()?);
                            if self.eat(&Tok::Comma) {
                                continue;
                            }
                            self.expect(&Tok::RParen, "`,` or `)`")?;
                            break;
                        }
                    }
                    Some(args)
                } else {
                    None
                };
                Ok(Expr::Ident { name, args, line, col })
            }
            Some(Tok::Eps) => {
                self.pos += 1;
                let (b, body) = self.abstraction()?;
                Ok(Expr::Term(Term::Eps(b, Box::new(body))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Expr::Term(t))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        let e = self.expr()?;
        self.to_term(e)
    }

    fn record(&mut self, name: &str, kind: Kind, arity: usize) -> Result<(), ParseError> {
        let declared = match kind {
            Kind::Function => self.ctx.signature.function_arity(name),
            Kind::Predicate => self.ctx.signature.predicate_arity(name),
        };
        let other = match kind {
            Kind::Function => self.ctx.signature.predicate_arity(name),
            Kind::Predicate => self.ctx.signature.function_arity(name),
        };
        if other.is_some() && declared.is_none() {
            return Err(self.error(ParseErrorKind::KindConflict(name.to_string())));
        }
        if let Some(a) = declared {
            if a != arity {
                return Err(self.error(ParseErrorKind::ArityMismatch { symbol: name.to_string(), expected: a, found: arity }));
            }
            return Ok(());
        }
        if self.ctx.strict && !matches!(name, "+" | "*" | "<" | "<=") {
            return Err(self.error(ParseErrorKind::UnknownSymbol(name.to_string())));
        }
        match self.uses.get(name) {
            Some((k, _)) if *k != kind => Err(self.error(ParseErrorKind::KindConflict(name.to_string()))),
            Some((_, a)) if *a != arity => {
                Err(self.error(ParseErrorKind::ArityMismatch { symbol: name.to_string(), expected: *a, found: arity }))
            }
            Some(_) => Ok(()),
            None => {
                self.uses.insert(name.to_string(), (kind, arity));
                Ok(())
            }
        }
    }

    fn at(&self, line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, line, col }
    }

    fn to_term(&mut self, e: Expr) -> Result<Term, ParseError> {
        let (name, args, line, col) = match e {
            Expr::Term(t) => return Ok(t),
            Expr::Ident { name, args, line, col } => (name, args, line, col),
        };
        let sym = Symbol::from(name.clone());
        if args.is_none() {
            if let Some(i) = self.scope.iter().rev().position(|s| *s == sym) {
                return Ok(Term::Bound(i));
            }
        }
        let args = args.unwrap_or_default();
        if let Some(def) = self.ctx.defs.get(&sym) {
            if let DefBody::Term(body) = &def.body {
                return self.expand_term(def, body, args, line, col, &name);
            }
        }
        if args.is_empty() && self.ctx.vars.contains(&sym) {
            return Ok(Term::Var(sym));
        }
        let known = self.ctx.signature.function_arity(&name).is_some() || self.uses.contains_key(&name);
        if args.is_empty() && !known {
            if self.ctx.strict {
                return Err(self.at(line, col, ParseErrorKind::UnboundVariable(name)));
            }
            if self.ctx.signature.predicate_arity(&name).is_none() && looks_like_variable(&name) {
                return Ok(Term::Var(sym));
            }
        }
        let saved = self.pos;
        let r = self.record(&name, Kind::Function, args.len());
        if let Err(mut e) = r {
            e.line = line;
            e.col = col;
            self.pos = saved;
            return Err(e);
        }
        Ok(Term::App(sym, args))
    }

    fn as_predicate(&mut self, e: Expr) -> Result<Formula, ParseError> {
        let (name, args, line, col) = match e {
            Expr::Term(t @ Term::Eps(..)) => {
                let Term::Eps(_, body) = &t else { unreachable!() };
                return Ok(instantiate(body, &t));
            }
            Expr::Term(_) => return Err(self.unexpected("a relation symbol")),
            Expr::Ident { name, args, line, col } => (name, args.unwrap_or_default(), line, col),
        };
        let sym = Symbol::from(name.clone());
        if let Some(def) = self.ctx.defs.get(&sym) {
            if let DefBody::Formula(body) = &def.body {
                if def.params.len() != args.len() {
                    return Err(self.at(
                        line,
                        col,
                        ParseErrorKind::ArityMismatch { symbol: name, expected: def.params.len(), found: args.len() },
                    ));
                }
                let map: Vec<(Symbol, Term)> = def.params.iter().cloned().zip(args).collect();
                return Ok(subst_many(body, &map));
            }
        }
        if let Err(mut e) = self.record(&name, Kind::Predicate, args.len()) {
            e.line = line;
            e.col = col;
            return Err(e);
        }
        Ok(Formula::Pred(sym, args))
    }

    fn expand_term(
        &self,
        def: &Definition,
        body: &Term,
        args: Vec<Term>,
        line: usize,
        col: usize,
        name: &str,
    ) -> Result<Term, ParseError> {
        if def.params.len() != args.len() {
            return Err(self.at(
                line,
                col,
                ParseErrorKind::ArityMismatch { symbol: name.to_string(), expected: def.params.len(), found: args.len() },
            ));
        }
        let map: Vec<(Symbol, Term)> = def.params.iter().cloned().zip(args).collect();
        // wrap in a formula to reuse the simultaneous substitution
        let wrapped = Formula::Eq(body.clone(), body.clone());
        let out = map_formula(&wrapped, 0, &mut |s, depth| match s {
            Term::Var(v) => map.iter().find(|(x, _)| x == v).map(|(_, t)| shift_term(t, depth as isize, 0)),
            _ => None,
        });
        match out {
            Formula::Eq(t, _) => Ok(t),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn existential() {
        assert_eq!(f("exists x. P(x)"), Formula::exists("x", Formula::pred("P", vec![Term::Bound(0)])));
    }

    #[test]
    fn tau_term() {
        let t = parse_term("eps x. not P(x)").unwrap();
        assert_eq!(t, Term::eps("x", Formula::not(Formula::pred("P", vec![Term::Bound(0)]))));
    }

    #[test]
    fn nested_eps() {
        let t = parse_term("eps y. eps x. F(x,y)").unwrap();
        assert_eq!(crate::syntax::epsilon_rank_term(&t), 2);
        let inner = Term::eps("x", Formula::pred("F", vec![Term::Bound(0), Term::Bound(1)]));
        let want = Term::eps("y", Formula::pred("F", vec![inner, Term::Bound(0)]));
        assert_eq!(t, want);
        assert_eq!(parse("eps x. not P(x)").unwrap(), Parsed::Term(parse_term("eps x. not P(x)").unwrap()));
    }

    #[test]
    fn precedence() {
        let g = f("not P and Q or R -> S -> T");
        let want = Formula::implies(
            Formula::or(Formula::and(Formula::not(Formula::prop("P")), Formula::prop("Q")), Formula::prop("R")),
            Formula::implies(Formula::prop("S"), Formula::prop("T")),
        );
        assert_eq!(g, want);
    }

    #[test]
    fn free_variables_and_constants() {
        let g = f("P(x) and Q(c)");
        assert_eq!(g, Formula::and(Formula::pred("P", vec![Term::var("x")]), Formula::pred("Q", vec![Term::constant("c")])));
    }

    #[test]
    fn parenthesized_terms() {
        let g = f("(x + 1) * 2 < y");
        assert_eq!(g, Formula::lt(Term::mul(Term::succ(Term::var("x")), Term::numeral(2)), Term::var("y")));
        let h = f("(eps x. P(x)) = c");
        assert!(matches!(h, Formula::Eq(Term::Eps(..), _)));
        let k = f("((P(x)))");
        assert_eq!(k, Formula::pred("P", vec![Term::var("x")]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("P(x) and").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnexpectedEnd { .. }));
        let e = parse_formula("P(x) and P(x, y)").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { .. }));
        assert_eq!(e.col, 10);
        let ctx = ParseContext::strict(Signature::new().with_predicate("P", 1));
        let e = parse_formula_with("P(x)", &ctx).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnboundVariable("x".into()));
    }

    #[test]
    fn greater_flips() {
        assert_eq!(f("x > y"), Formula::lt(Term::var("y"), Term::var("x")));
        assert_eq!(f("x != y"), Formula::neq(Term::var("x"), Term::var("y")));
    }

    #[test]
    fn definitions_expand() {
        let mut ctx = ParseContext::new();
        ctx.define("B(y) := 3 <= y", 1).unwrap();
        ctx.define("eB := eps y. B(y)", 2).unwrap();
        let g = parse_formula_with("B(eB)", &ctx).unwrap();
        let eb = Term::eps("y", Formula::le(Term::numeral(3), Term::Bound(0)));
        assert_eq!(g, Formula::le(Term::numeral(3), eb));
    }

    #[test]
    fn multi_binder_quantifier() {
        assert_eq!(f("forall x y. R(x,y)"), f("forall x. forall y. R(x,y)"));
    }
}
