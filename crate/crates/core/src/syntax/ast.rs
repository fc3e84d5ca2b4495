//! Terms and formulas of first-order logic with the ε-binder.
//!
//! Bound variables are de Bruijn indices: `Bound(0)` refers to the nearest
//! enclosing binder (`forall`, `exists` or `eps`). Binders keep the source
//! name only as a printing hint, and the hint takes no part in equality,
//! ordering or hashing, so derived `==` is α-equivalence.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::symbol::Symbol;

/// Printing hint for a bound variable. All binders compare equal.
#[derive(Clone, Debug)]
pub struct Binder(pub Symbol);

impl Binder {
    pub fn new(hint: &str) -> Self {
        Binder(Symbol::new(hint))
    }

    pub fn hint(&self) -> &Symbol {
        &self.0
    }
}

impl PartialEq for Binder {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl PartialOrd for Binder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Binder {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// de Bruijn index into the enclosing binders.
    Bound(usize),
    /// Free variable.
    Var(Symbol),
    /// Function application; constants are nullary applications.
    App(Symbol, Vec<Term>),
    /// `eps x. body`, with `x` as `Bound(0)` inside `body`.
    Eps(Binder, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Pred(Symbol, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Binder, Box<Formula>),
    Exists(Binder, Box<Formula>),
}

/// Quantifier kinds of a prenex prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }

    pub fn bind(self, binder: Binder, body: Formula) -> Formula {
        match self {
            Quantifier::Forall => Formula::Forall(binder, Box::new(body)),
            Quantifier::Exists => Formula::Exists(binder, Box::new(body)),
        }
    }
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Symbol::new(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::new(name), Vec::new())
    }

    pub fn numeral(n: u64) -> Term {
        Term::App(Symbol::from(n.to_string()), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::new(name), args)
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::app("+", vec![a, b])
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::app("*", vec![a, b])
    }

    pub fn succ(t: Term) -> Term {
        Term::add(t, Term::numeral(1))
    }

    /// `eps x. body`, where `body` already uses `Bound(0)` for `x`.
    pub fn eps(hint: &str, body: Formula) -> Term {
        Term::Eps(Binder::new(hint), Box::new(body))
    }

    pub fn is_eps(&self) -> bool {
        matches!(self, Term::Eps(..))
    }

    /// Nullary function symbol name, if this is a constant.
    pub fn as_constant(&self) -> Option<&Symbol> {
        match self {
            Term::App(s, args) if args.is_empty() => Some(s),
            _ => None,
        }
    }
}

impl Formula {
    pub fn pred(name: &str, args: Vec<Term>) -> Formula {
        Formula::Pred(Symbol::new(name), args)
    }

    pub fn prop(name: &str) -> Formula {
        Formula::Pred(Symbol::new(name), Vec::new())
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn neq(a: Term, b: Term) -> Formula {
        Formula::not(Formula::Eq(a, b))
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::pred("<", vec![a, b])
    }

    pub fn le(a: Term, b: Term) -> Formula {
        Formula::pred("<=", vec![a, b])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// `forall x. body`, where `body` already uses `Bound(0)` for `x`.
    pub fn forall(hint: &str, body: Formula) -> Formula {
        Formula::Forall(Binder::new(hint), Box::new(body))
    }

    pub fn exists(hint: &str, body: Formula) -> Formula {
        Formula::Exists(Binder::new(hint), Box::new(body))
    }

    /// Right-nested disjunction of a non-empty list; `False` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return Formula::False;
        };
        while let Some(f) = items.pop() {
            acc = Formula::or(f, acc);
        }
        acc
    }

    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return Formula::True;
        };
        while let Some(f) = items.pop() {
            acc = Formula::and(f, acc);
        }
        acc
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
    }
}
