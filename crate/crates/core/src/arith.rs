//! Natural-number evaluation of closed formulas and terms.
//!
//! Numerals, `+`, `*`, `=`, `<` and `<=` are built in; further function and
//! predicate symbols are defined by terms, formulas or native functions.
//! Values are unbounded (`u64` with overflow checks): the cap only bounds
//! searches, so successor is never truncated. Quantifiers range over
//! `0..cap`. An ε-term denotes the least `n < cap` satisfying its body, or
//! 0 when there is none, unless a value assigned by the caller overrides it.

use std::collections::BTreeMap;

use crate::syntax::{visit_formula_terms, Formula, Symbol, Term};

#[derive(Clone, Debug)]
pub enum FnDef {
    /// Body over the parameters as free variables.
    Term(Vec<Symbol>, Term),
    Native(usize, fn(&[u64]) -> u64),
}

#[derive(Clone, Debug)]
pub struct PredDef {
    pub params: Vec<Symbol>,
    pub body: Formula,
}

#[derive(Clone, Debug)]
pub struct ArithInterp {
    pub cap: u64,
    pub functions: BTreeMap<Symbol, FnDef>,
    pub predicates: BTreeMap<Symbol, PredDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("search for {term} needs values at or beyond the cap {cap}")]
    CapExceeded { term: String, cap: u64 },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("no arithmetic meaning for `{0}`")]
    UnknownSymbol(String),
    #[error("`{symbol}` takes {expected} argument(s), given {found}")]
    Arity { symbol: String, expected: usize, found: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("no value assigned to {0}")]
    Unassigned(String),
    #[error("dangling bound index {0}")]
    DanglingIndex(usize),
}

impl ArithInterp {
    pub fn new(cap: u64) -> Self {
        ArithInterp { cap, functions: BTreeMap::new(), predicates: BTreeMap::new() }
    }

    pub fn with_term_fn(mut self, name: &str, params: &[&str], body: Term) -> Self {
        let params = params.iter().map(|p| Symbol::new(p)).collect();
        self.functions.insert(Symbol::new(name), FnDef::Term(params, body));
        self
    }

    pub fn with_native(mut self, name: &str, arity: usize, f: fn(&[u64]) -> u64) -> Self {
        self.functions.insert(Symbol::new(name), FnDef::Native(arity, f));
        self
    }

    pub fn with_pred(mut self, name: &str, params: &[&str], body: Formula) -> Self {
        let params = params.iter().map(|p| Symbol::new(p)).collect();
        self.predicates.insert(Symbol::new(name), PredDef { params, body });
        self
    }
}

/// How ε-terms get their values.
#[derive(Clone, Copy, Debug)]
pub enum EpsReading<'a> {
    LeastNumber,
    /// Closed ε-terms are looked up; a missing entry is an error.
    Assigned(&'a BTreeMap<Term, u64>),
}

pub struct ArithEval<'a> {
    pub interp: &'a ArithInterp,
    pub reading: EpsReading<'a>,
    pub env: BTreeMap<Symbol, u64>,
}

impl<'a> ArithEval<'a> {
    pub fn new(interp: &'a ArithInterp) -> Self {
        ArithEval { interp, reading: EpsReading::LeastNumber, env: BTreeMap::new() }
    }

    pub fn assigned(interp: &'a ArithInterp, s: &'a BTreeMap<Term, u64>) -> Self {
        ArithEval { interp, reading: EpsReading::Assigned(s), env: BTreeMap::new() }
    }

    pub fn with_env(mut self, env: BTreeMap<Symbol, u64>) -> Self {
        self.env = env;
        self
    }

    pub fn term(&self, t: &Term) -> Result<u64, ArithError> {
        self.term_in(t, &mut Vec::new())
    }

    pub fn formula(&self, f: &Formula) -> Result<bool, ArithError> {
        self.formula_in(f, &mut Vec::new())
    }

    fn term_in(&self, t: &Term, stack: &mut Vec<u64>) -> Result<u64, ArithError> {
        match t {
            Term::Bound(i) => stack
                .len()
                .checked_sub(i + 1)
                .map(|k| stack[k])
                .ok_or(ArithError::DanglingIndex(*i)),
            Term::Var(v) => self.env.get(v).copied().ok_or_else(|| ArithError::UnboundVariable(v.to_string())),
            Term::App(f, args) => {
                if let Some(n) = f.numeral_value() {
                    return Ok(n);
                }
                let vals = args.iter().map(|a| self.term_in(a, stack)).collect::<Result<Vec<_>, _>>()?;
                match (f.as_str(), vals.as_slice()) {
                    ("+", [a, b]) => a.checked_add(*b).ok_or(ArithError::Overflow),
                    ("*", [a, b]) => a.checked_mul(*b).ok_or(ArithError::Overflow),
                    _ => self.apply_fn(f, &vals),
                }
            }
            Term::Eps(_, body) => match self.reading {
                EpsReading::Assigned(s) => {
                    if stack.is_empty() || crate::syntax::loose_bound_term(t) == 0 {
                        s.get(t).copied().ok_or_else(|| ArithError::Unassigned(t.to_string()))
                    } else {
                        Err(ArithError::Unassigned(t.to_string()))
                    }
                }
                EpsReading::LeastNumber => self.least(t, body, stack),
            },
        }
    }

    fn least(&self, t: &Term, body: &Formula, stack: &mut Vec<u64>) -> Result<u64, ArithError> {
        for n in 0..self.interp.cap {
            stack.push(n);
            let r = self.formula_in(body, stack);
            stack.pop();
            if r? {
                return Ok(n);
            }
        }
        // an empty scan only means an empty extension when nothing in the
        // body independent of the searched variable reaches the cap
        let mut big = false;
        let mut err = None;
        visit_formula_terms(body, 0, &mut |u, depth| {
            if big || err.is_some() || !matches!(u, Term::App(..)) {
                return;
            }
            if mentions_inner(u, depth) {
                return;
            }
            let lifted = crate::syntax::shift_term(u, -(depth as isize + 1), 0);
            match self.term_in(&lifted, stack) {
                Ok(v) if v >= self.interp.cap => big = true,
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        });
        if big {
            return Err(ArithError::CapExceeded { term: t.to_string(), cap: self.interp.cap });
        }
        Ok(0)
    }

    fn apply_fn(&self, f: &Symbol, vals: &[u64]) -> Result<u64, ArithError> {
        match self.interp.functions.get(f) {
            None => Err(ArithError::UnknownSymbol(f.to_string())),
            Some(FnDef::Native(arity, g)) => {
                if *arity != vals.len() {
                    return Err(ArithError::Arity { symbol: f.to_string(), expected: *arity, found: vals.len() });
                }
                Ok(g(vals))
            }
            Some(FnDef::Term(params, body)) => {
                if params.len() != vals.len() {
                    return Err(ArithError::Arity { symbol: f.to_string(), expected: params.len(), found: vals.len() });
                }
                let env = params.iter().cloned().zip(vals.iter().copied()).collect();
                ArithEval { interp: self.interp, reading: self.reading, env }.term(body)
            }
        }
    }

    fn formula_in(&self, f: &Formula, stack: &mut Vec<u64>) -> Result<bool, ArithError> {
        use Formula::*;
        Ok(match f {
            True => true,
            False => false,
            Eq(a, b) => self.term_in(a, stack)? == self.term_in(b, stack)?,
            Pred(p, args) => {
                let vals = args.iter().map(|a| self.term_in(a, stack)).collect::<Result<Vec<_>, _>>()?;
                match (p.as_str(), vals.as_slice()) {
                    ("<", [a, b]) => a < b,
                    ("<=", [a, b]) => a <= b,
                    _ => {
                        let def = self
                            .interp
                            .predicates
                            .get(p)
                            .ok_or_else(|| ArithError::UnknownSymbol(p.to_string()))?;
                        if def.params.len() != vals.len() {
                            return Err(ArithError::Arity {
                                symbol: p.to_string(),
                                expected: def.params.len(),
                                found: vals.len(),
                            });
                        }
                        let env = def.params.iter().cloned().zip(vals.iter().copied()).collect();
                        ArithEval { interp: self.interp, reading: self.reading, env }.formula(&def.body)?
                    }
                }
            }
            Not(a) => !self.formula_in(a, stack)?,
            And(a, b) => self.formula_in(a, stack)? && self.formula_in(b, stack)?,
            Or(a, b) => self.formula_in(a, stack)? || self.formula_in(b, stack)?,
            Implies(a, b) => !self.formula_in(a, stack)? || self.formula_in(b, stack)?,
            Forall(_, a) => {
                for n in 0..self.interp.cap {
                    stack.push(n);
                    let r = self.formula_in(a, stack);
                    stack.pop();
                    if !r? {
                        return Ok(false);
                    }
                }
                true
            }
            Exists(_, a) => {
                for n in 0..self.interp.cap {
                    stack.push(n);
                    let r = self.formula_in(a, stack);
                    stack.pop();
                    if r? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }
}

/// Whether `u`, found `depth` binders inside an ε-body, mentions the
/// ε-variable or any binder opened inside the body.
fn mentions_inner(u: &Term, depth: usize) -> bool {
    let mut found = false;
    crate::syntax::visit_term(u, 0, &mut |s, d| {
        if let Term::Bound(i) = s {
            if *i >= d && *i - d <= depth {
                found = true;
            }
        }
    });
    found
}

/// Least-number value of a closed term.
pub fn least_number_term(t: &Term, interp: &ArithInterp) -> Result<u64, ArithError> {
    ArithEval::new(interp).term(t)
}

pub fn least_number_formula(f: &Formula, interp: &ArithInterp) -> Result<bool, ArithError> {
    ArithEval::new(interp).formula(f)
}

/// Saturating predecessor, for native function tables.
pub fn predecessor(v: &[u64]) -> u64 {
    v[0].saturating_sub(1)
}

pub fn successor(v: &[u64]) -> u64 {
    v[0] + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term};

    #[test]
    fn least_witness() {
        let i = ArithInterp::new(20);
        assert_eq!(least_number_term(&parse_term("eps x. x + x = 4").unwrap(), &i), Ok(2));
        assert_eq!(least_number_term(&parse_term("eps x. x != x").unwrap(), &i), Ok(0));
        assert_eq!(least_number_term(&parse_term("eps x. 3 <= x").unwrap(), &i), Ok(3));
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let i = ArithInterp::new(10);
        let e = least_number_term(&parse_term("eps x. x = 25").unwrap(), &i).unwrap_err();
        assert!(matches!(e, ArithError::CapExceeded { cap: 10, .. }));
        // values of the searched variable beyond the cap are fine
        assert_eq!(least_number_term(&parse_term("eps x. x * x = 49").unwrap(), &i), Ok(7));
    }

    #[test]
    fn defined_symbols_and_quantifiers() {
        let i = ArithInterp::new(12)
            .with_term_fn("g", &["x"], parse_term("x + 1").unwrap())
            .with_native("p", 1, predecessor);
        assert!(least_number_formula(&parse_formula("forall x. x < g(x)").unwrap(), &i).unwrap());
        assert!(least_number_formula(&parse_formula("p(0) = 0 and p(5) = 4").unwrap(), &i).unwrap());
        assert!(least_number_formula(&parse_formula("g(11) = 12").unwrap(), &i).unwrap());
    }

    #[test]
    fn assigned_reading() {
        let i = ArithInterp::new(10);
        let e = parse_term("eps x. 3 <= x").unwrap();
        let mut s = BTreeMap::new();
        s.insert(e.clone(), 5);
        let f = parse_formula("(eps x. 3 <= x) = 5").unwrap();
        assert!(ArithEval::assigned(&i, &s).formula(&f).unwrap());
        assert!(!ArithEval::new(&i).formula(&f).unwrap());
    }
}
