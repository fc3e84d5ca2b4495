//! Truth tables over opaque atoms. Atoms are predicate applications,
//! equations and quantified formulas.

use crate::syntax::Formula;

/// Largest atom count a table is built for.
pub const MAX_ATOMS: usize = 22;

#[derive(Clone, Debug)]
enum Prop {
    Const(bool),
    Atom(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
}

impl Prop {
    fn eval(&self, v: u64) -> bool {
        match self {
            Prop::Const(b) => *b,
            Prop::Atom(i) => v >> i & 1 == 1,
            Prop::Not(a) => !a.eval(v),
            Prop::And(a, b) => a.eval(v) && b.eval(v),
            Prop::Or(a, b) => a.eval(v) || b.eval(v),
            Prop::Implies(a, b) => !a.eval(v) || b.eval(v),
        }
    }
}

/// Propositional skeleton of one or more formulas over a shared atom list.
#[derive(Clone, Debug, Default)]
pub struct Skeleton {
    pub atoms: Vec<Formula>,
    props: Vec<Prop>,
}

impl Skeleton {
    pub fn new() -> Self {
        Skeleton::default()
    }

    /// Add a formula; returns its index.
    pub fn add(&mut self, f: &Formula) -> usize {
        let p = self.compile(f);
        self.props.push(p);
        self.props.len() - 1
    }

    fn atom(&mut self, f: &Formula) -> Prop {
        match self.atoms.iter().position(|a| a == f) {
            Some(i) => Prop::Atom(i),
            None => {
                self.atoms.push(f.clone());
                Prop::Atom(self.atoms.len() - 1)
            }
        }
    }

    fn compile(&mut self, f: &Formula) -> Prop {
        let b = |p: Prop| Box::new(p);
        match f {
            Formula::True => Prop::Const(true),
            Formula::False => Prop::Const(false),
            Formula::Not(a) => Prop::Not(b(self.compile(a))),
            Formula::And(x, y) => Prop::And(b(self.compile(x)), b(self.compile(y))),
            Formula::Or(x, y) => Prop::Or(b(self.compile(x)), b(self.compile(y))),
            Formula::Implies(x, y) => Prop::Implies(b(self.compile(x)), b(self.compile(y))),
            Formula::Pred(..) | Formula::Eq(..) | Formula::Forall(..) | Formula::Exists(..) => self.atom(f),
        }
    }

    pub fn eval(&self, idx: usize, valuation: u64) -> bool {
        self.props[idx].eval(valuation)
    }

    pub fn valuations(&self) -> Result<u64, usize> {
        if self.atoms.len() > MAX_ATOMS {
            Err(self.atoms.len())
        } else {
            Ok(1u64 << self.atoms.len())
        }
    }

    pub fn describe(&self, valuation: u64) -> Vec<(String, bool)> {
        self.atoms.iter().enumerate().map(|(i, a)| (a.to_string(), valuation >> i & 1 == 1)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautOutcome {
    Tautology,
    /// A falsifying valuation of the atoms.
    Falsified(Vec<(String, bool)>),
    TooManyAtoms(usize),
}

/// Decide whether `(h₁ ∧ … ∧ hₙ) ⇒ goal` is a propositional tautology.
pub fn entails(hyps: &[&Formula], goal: &Formula) -> TautOutcome {
    let mut sk = Skeleton::new();
    let hs: Vec<usize> = hyps.iter().map(|h| sk.add(h)).collect();
    let g = sk.add(goal);
    let total = match sk.valuations() {
        Ok(n) => n,
        Err(n) => return TautOutcome::TooManyAtoms(n),
    };
    for v in 0..total {
        if hs.iter().all(|h| sk.eval(*h, v)) && !sk.eval(g, v) {
            return TautOutcome::Falsified(sk.describe(v));
        }
    }
    TautOutcome::Tautology
}

pub fn is_tautology(f: &Formula) -> bool {
    entails(&[], f) == TautOutcome::Tautology
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn classical_laws() {
        for s in ["P or not P", "not not P -> P", "(P -> Q) or (Q -> P)", "((P -> Q) -> P) -> P", "true", "false -> Q"] {
            assert!(is_tautology(&f(s)), "{s}");
        }
    }

    #[test]
    fn atoms_are_opaque() {
        assert!(!is_tautology(&f("c = c")));
        assert!(is_tautology(&f("(forall x. P(x)) -> forall x. P(x)")));
        assert!(!is_tautology(&f("(forall x. P(x)) -> P(c)")));
    }

    #[test]
    fn countervaluation() {
        let TautOutcome::Falsified(v) = entails(&[&f("P -> Q")], &f("Q -> P")) else { panic!() };
        assert_eq!(v, vec![("P".to_string(), false), ("Q".to_string(), true)]);
    }

    #[test]
    fn alpha_equal_atoms_merge() {
        assert!(is_tautology(&f("(exists x. P(x)) -> exists y. P(y)")));
    }
}
