use std::collections::BTreeMap;

use super::ast::{Formula, Term};
use super::ops::{visit_formula_terms, visit_subformulas};
use super::symbol::Symbol;
use super::SyntaxError;

/// Function and predicate symbols with arities. Equality is built in and
/// never listed; numerals are implicitly declared constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    functions: BTreeMap<Symbol, usize>,
    predicates: BTreeMap<Symbol, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// `+`, `*`, `<`, `<=` and the numerals.
    pub fn arithmetic() -> Self {
        let mut s = Self::new();
        s.add_function("+", 2).unwrap();
        s.add_function("*", 2).unwrap();
        s.add_predicate("<", 2).unwrap();
        s.add_predicate("<=", 2).unwrap();
        s
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        let sym = Symbol::new(name);
        if self.predicates.contains_key(&sym) {
            return Err(SyntaxError::KindConflict(name.to_string()));
        }
        match self.functions.insert(sym, arity) {
            Some(a) if a != arity => Err(SyntaxError::Arity { symbol: name.to_string(), expected: a, found: arity }),
            _ => Ok(()),
        }
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        let sym = Symbol::new(name);
        if self.functions.contains_key(&sym) {
            return Err(SyntaxError::KindConflict(name.to_string()));
        }
        match self.predicates.insert(sym, arity) {
            Some(a) if a != arity => Err(SyntaxError::Arity { symbol: name.to_string(), expected: a, found: arity }),
            _ => Ok(()),
        }
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Self {
        self.add_function(name, arity).expect("conflicting declaration");
        self
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Self {
        self.add_predicate(name, arity).expect("conflicting declaration");
        self
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        if Symbol::new(name).is_numeral() {
            return Some(0);
        }
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.function_arity(name) == Some(0)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.functions.iter().map(|(s, a)| (s, *a))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.predicates.iter().map(|(s, a)| (s, *a))
    }

    pub fn constants(&self) -> impl Iterator<Item = &Symbol> {
        self.functions.iter().filter(|(_, a)| **a == 0).map(|(s, _)| s)
    }

    pub fn merge(&mut self, other: &Signature) -> Result<(), SyntaxError> {
        for (s, a) in other.functions() {
            self.add_function(s.as_str(), a)?;
        }
        for (s, a) in other.predicates() {
            self.add_predicate(s.as_str(), a)?;
        }
        Ok(())
    }

    /// Collect the symbols a formula uses, failing on inconsistent use.
    pub fn infer(f: &Formula) -> Result<Signature, SyntaxError> {
        let mut sig = Signature::new();
        sig.absorb(f)?;
        Ok(sig)
    }

    pub fn absorb(&mut self, f: &Formula) -> Result<(), SyntaxError> {
        let mut err = None;
        visit_formula_terms(f, 0, &mut |t, _| {
            if let Term::App(s, args) = t {
                if !s.is_numeral() {
                    if let Err(e) = self.add_function(s.as_str(), args.len()) {
                        err.get_or_insert(e);
                    }
                }
            }
        });
        visit_subformulas(f, &mut |g| {
            if let Formula::Pred(p, args) = g {
                if let Err(e) = self.add_predicate(p.as_str(), args.len()) {
                    err.get_or_insert(e);
                }
            }
        });
        err.map_or(Ok(()), Err)
    }

    /// Arity and binding check against this signature.
    pub fn check(&self, f: &Formula) -> Result<(), SyntaxError> {
        check_formula(self, f, 0)
    }
}

fn check_term(sig: &Signature, t: &Term, depth: usize) -> Result<(), SyntaxError> {
    match t {
        Term::Bound(i) if *i >= depth => Err(SyntaxError::DanglingIndex(*i)),
        Term::Bound(_) | Term::Var(_) => Ok(()),
        Term::App(s, args) => {
            match sig.function_arity(s.as_str()) {
                None => return Err(SyntaxError::UnknownSymbol(s.to_string())),
                Some(a) if a != args.len() => {
                    return Err(SyntaxError::Arity { symbol: s.to_string(), expected: a, found: args.len() })
                }
                _ => {}
            }
            args.iter().try_for_each(|a| check_term(sig, a, depth))
        }
        Term::Eps(_, body) => check_formula(sig, body, depth + 1),
    }
}

fn check_formula(sig: &Signature, f: &Formula, depth: usize) -> Result<(), SyntaxError> {
    use Formula::*;
    match f {
        True | False => Ok(()),
        Pred(p, args) => {
            match sig.predicate_arity(p.as_str()) {
                None => return Err(SyntaxError::UnknownSymbol(p.to_string())),
                Some(a) if a != args.len() => {
                    return Err(SyntaxError::Arity { symbol: p.to_string(), expected: a, found: args.len() })
                }
                _ => {}
            }
            args.iter().try_for_each(|a| check_term(sig, a, depth))
        }
        Eq(a, b) => {
            check_term(sig, a, depth)?;
            check_term(sig, b, depth)
        }
        Not(a) => check_formula(sig, a, depth),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            check_formula(sig, a, depth)?;
            check_formula(sig, b, depth)
        }
        Forall(_, a) | Exists(_, a) => check_formula(sig, a, depth + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infer_and_check() {
        let f = Formula::pred("P", vec![Term::app("g", vec![Term::constant("c")])]);
        let sig = Signature::infer(&f).unwrap();
        assert_eq!(sig.function_arity("g"), Some(1));
        assert!(sig.is_constant("c"));
        assert!(sig.check(&f).is_ok());
        let bad = Formula::pred("P", vec![Term::constant("c"), Term::constant("c")]);
        assert!(matches!(sig.check(&bad), Err(SyntaxError::Arity { .. })));
    }

    #[test]
    fn kind_conflict_detected() {
        let f = Formula::and(Formula::prop("p"), Formula::eq(Term::constant("p"), Term::constant("p")));
        assert!(matches!(Signature::infer(&f), Err(SyntaxError::KindConflict(_))));
    }

    #[test]
    fn dangling_index_rejected() {
        let f = Formula::pred("P", vec![Term::Bound(0)]);
        let sig = Signature::new().with_predicate("P", 1);
        assert!(matches!(sig.check(&f), Err(SyntaxError::DanglingIndex(0))));
    }
}
