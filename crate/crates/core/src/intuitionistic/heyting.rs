use std::collections::BTreeMap;

use serde::Serialize;

use crate::classical::{tuple_index, Elem, Mask};
use crate::syntax::{parse_formula, Formula, Symbol, Term};

use super::topology::FiniteTopSpace;
use super::IntuitionisticError;

/// Truth values in the opens of a space. Each predicate maps every tuple of
/// individuals to an open; propositional letters are nullary predicates.
/// Equality of individuals is decidable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TopInterp {
    pub individuals: Vec<String>,
    pub constants: BTreeMap<Symbol, Elem>,
    pub predicates: BTreeMap<Symbol, (usize, Vec<Mask>)>,
}

impl TopInterp {
    /// A single individual named `*`, for propositional formulas.
    pub fn propositional() -> Self {
        TopInterp { individuals: vec!["*".into()], ..Default::default() }
    }

    pub fn with_individuals(names: &[&str]) -> Self {
        TopInterp { individuals: names.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn set(&mut self, name: &str, arity: usize, table: Vec<Mask>) -> &mut Self {
        self.predicates.insert(Symbol::new(name), (arity, table));
        self
    }

    pub fn set_constant(&mut self, name: &str, e: Elem) -> &mut Self {
        self.constants.insert(Symbol::new(name), e);
        self
    }

    /// Every predicate value must be an open of `sp`.
    pub fn validate(&self, sp: &FiniteTopSpace) -> Result<(), IntuitionisticError> {
        let n = self.individuals.len();
        for (p, (arity, table)) in &self.predicates {
            if table.len() != n.pow(*arity as u32) {
                return Err(IntuitionisticError::Arity(p.to_string()));
            }
            if let Some(x) = table.iter().find(|x| !sp.is_open(**x)) {
                return Err(IntuitionisticError::NotOpen { symbol: p.to_string(), set: sp.describe(*x) });
            }
        }
        Ok(())
    }
}

/// The open set where `phi` holds. Free variables are read from `env`.
pub fn heyting_eval(
    phi: &Formula,
    sp: &FiniteTopSpace,
    interp: &TopInterp,
    env: &BTreeMap<Symbol, Elem>,
) -> Result<Mask, IntuitionisticError> {
    interp.validate(sp)?;
    Heyting { sp, interp, env }.formula(phi, &mut Vec::new())
}

struct Heyting<'a> {
    sp: &'a FiniteTopSpace,
    interp: &'a TopInterp,
    env: &'a BTreeMap<Symbol, Elem>,
}

impl Heyting<'_> {
    fn term(&self, t: &Term, stack: &[Elem]) -> Result<Elem, IntuitionisticError> {
        match t {
            Term::Bound(i) => stack.len().checked_sub(i + 1).map(|k| stack[k]).ok_or(IntuitionisticError::DanglingIndex(*i)),
            Term::Var(v) => self.env.get(v).copied().ok_or_else(|| IntuitionisticError::UnboundVariable(v.to_string())),
            Term::App(f, args) if args.is_empty() => self
                .interp
                .constants
                .get(f)
                .copied()
                .or_else(|| self.interp.individuals.iter().position(|n| n == f.as_str()))
                .ok_or_else(|| IntuitionisticError::Uninterpreted(f.to_string())),
            Term::App(f, _) => Err(IntuitionisticError::Unsupported(format!("function symbol `{f}`"))),
            Term::Eps(..) => Err(IntuitionisticError::Unsupported("ε-terms in topological semantics".into())),
        }
    }

    fn formula(&self, f: &Formula, stack: &mut Vec<Elem>) -> Result<Mask, IntuitionisticError> {
        use Formula::*;
        let sp = self.sp;
        Ok(match f {
            True => sp.full(),
            False => 0,
            Pred(p, args) => {
                let (arity, table) =
                    self.interp.predicates.get(p).ok_or_else(|| IntuitionisticError::Uninterpreted(p.to_string()))?;
                if *arity != args.len() {
                    return Err(IntuitionisticError::Arity(p.to_string()));
                }
                let vals = args.iter().map(|a| self.term(a, stack)).collect::<Result<Vec<_>, _>>()?;
                table[tuple_index(&vals, self.interp.individuals.len())]
            }
            Eq(a, b) => {
                if self.term(a, stack)? == self.term(b, stack)? {
                    sp.full()
                } else {
                    0
                }
            }
            Not(a) => sp.neg(self.formula(a, stack)?),
            And(a, b) => self.formula(a, stack)? & self.formula(b, stack)?,
            Or(a, b) => self.formula(a, stack)? | self.formula(b, stack)?,
            Implies(a, b) => sp.implies(self.formula(a, stack)?, self.formula(b, stack)?),
            Forall(_, a) | Exists(_, a) => {
                let universal = matches!(f, Forall(..));
                let mut acc = if universal { sp.full() } else { 0 };
                for d in 0..self.interp.individuals.len() {
                    stack.push(d);
                    let r = self.formula(a, stack);
                    stack.pop();
                    acc = if universal { acc & r? } else { acc | r? };
                }
                if universal {
                    sp.interior(acc)
                } else {
                    acc
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkovReport {
    /// `∀x(¬¬F(x) ⇒ F(x))`
    pub antecedent: String,
    /// `¬∀x F(x) ⇒ ∃x ¬F(x)`
    pub consequent: String,
    pub antecedent_full: bool,
    pub consequent_full: bool,
}

impl MarkovReport {
    /// A violation is a decidable `F` whose consequent is not valid.
    pub fn violated(&self) -> bool {
        self.antecedent_full && !self.consequent_full
    }
}

/// Markov's principle for a unary predicate: when `F` is decidable, the
/// classical reading of `¬∀` is valid.
pub fn markov_check(sp: &FiniteTopSpace, interp: &TopInterp, pred: &str) -> Result<MarkovReport, IntuitionisticError> {
    let ante = parse_formula(&format!("forall x. not not {pred}(x) -> {pred}(x)")).expect("fixed shape");
    let cons = parse_formula(&format!("not (forall x. {pred}(x)) -> exists x. not {pred}(x)")).expect("fixed shape");
    let env = BTreeMap::new();
    let a = heyting_eval(&ante, sp, interp, &env)?;
    let c = heyting_eval(&cons, sp, interp, &env)?;
    Ok(MarkovReport {
        antecedent: sp.describe(a),
        consequent: sp.describe(c),
        antecedent_full: a == sp.full(),
        consequent_full: c == sp.full(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::topology::{all_spaces, three_point_witness};
    use super::*;

    fn prop(x: Mask) -> TopInterp {
        let mut i = TopInterp::propositional();
        i.set("F", 0, vec![x]);
        i
    }

    #[test]
    fn witness_values() {
        let sp = three_point_witness();
        let env = BTreeMap::new();
        let nn = parse_formula("not not F").unwrap();
        assert_eq!(heyting_eval(&nn, &sp, &prop(0b001), &env), Ok(0b111));
        let back = parse_formula("not not F -> F").unwrap();
        assert_eq!(heyting_eval(&back, &sp, &prop(0b001), &env), Ok(0b001));
        let lem = parse_formula("F or not F").unwrap();
        assert_eq!(heyting_eval(&lem, &sp, &prop(0b001), &env), Ok(0b001));
        assert!(heyting_eval(&lem, &sp, &prop(0b010), &env).is_err());
    }

    #[test]
    fn double_negation_introduction_everywhere() {
        let f = parse_formula("F -> not not F").unwrap();
        let env = BTreeMap::new();
        for n in 1..=3 {
            for sp in all_spaces(n) {
                for &x in sp.opens() {
                    assert_eq!(heyting_eval(&f, &sp, &prop(x), &env), Ok(sp.full()));
                }
            }
        }
    }

    #[test]
    fn markov_on_the_witness() {
        let sp = three_point_witness();
        let mut i = TopInterp::with_individuals(&["d"]);
        i.set("F", 1, vec![0b001]);
        let r = markov_check(&sp, &i, "F").unwrap();
        assert!(!r.antecedent_full);
        assert!(!r.violated());
        i.set("F", 1, vec![0b111]);
        let r = markov_check(&sp, &i, "F").unwrap();
        assert!(r.antecedent_full && r.consequent_full);
    }
}
