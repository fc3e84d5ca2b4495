use std::collections::BTreeMap;

use crate::syntax::{free_vars, Formula, Symbol, Term};

use super::choice::ChoiceFunction;
use super::model::{Elem, FiniteModel, Mask};
use super::ClassicalError;

/// Values of free variables.
pub type Valuation = BTreeMap<Symbol, Elem>;

/// Tarskian evaluation where `ε_x F` denotes Φ of the extension of `F`.
pub struct Evaluator<'a> {
    pub model: &'a FiniteModel,
    pub choice: &'a ChoiceFunction,
    pub env: &'a Valuation,
}

impl<'a> Evaluator<'a> {
    pub fn new(model: &'a FiniteModel, choice: &'a ChoiceFunction, env: &'a Valuation) -> Self {
        Evaluator { model, choice, env }
    }

    pub fn formula(&self, f: &Formula) -> Result<bool, ClassicalError> {
        self.formula_in(f, &mut Vec::new())
    }

    pub fn term(&self, t: &Term) -> Result<Elem, ClassicalError> {
        self.term_in(t, &mut Vec::new())
    }

    /// Elements satisfying a binder body (`Bound(0)` the candidate).
    pub fn body_extension(&self, body: &Formula, stack: &mut Vec<Elem>) -> Result<Mask, ClassicalError> {
        let mut m = 0;
        for a in 0..self.model.size() {
            stack.push(a);
            let r = self.formula_in(body, stack);
            stack.pop();
            if r? {
                m |= 1 << a;
            }
        }
        Ok(m)
    }

    fn term_in(&self, t: &Term, stack: &mut Vec<Elem>) -> Result<Elem, ClassicalError> {
        match t {
            Term::Bound(i) => stack.len().checked_sub(i + 1).map(|k| stack[k]).ok_or(ClassicalError::DanglingIndex(*i)),
            Term::Var(v) => self.env.get(v).copied().ok_or_else(|| ClassicalError::UnboundVariable(v.to_string())),
            Term::App(f, args) => {
                let vals = args.iter().map(|a| self.term_in(a, stack)).collect::<Result<Vec<_>, _>>()?;
                self.model.apply(f, &vals)
            }
            Term::Eps(_, body) => {
                let ext = self.body_extension(body, stack)?;
                Ok(self.choice.choose(ext, self.model.size()))
            }
        }
    }

    fn formula_in(&self, f: &Formula, stack: &mut Vec<Elem>) -> Result<bool, ClassicalError> {
        use Formula::*;
        Ok(match f {
            True => true,
            False => false,
            Pred(p, args) => {
                let vals = args.iter().map(|a| self.term_in(a, stack)).collect::<Result<Vec<_>, _>>()?;
                self.model.holds(p, &vals)?
            }
            Eq(a, b) => self.term_in(a, stack)? == self.term_in(b, stack)?,
            Not(a) => !self.formula_in(a, stack)?,
            And(a, b) => self.formula_in(a, stack)? && self.formula_in(b, stack)?,
            Or(a, b) => self.formula_in(a, stack)? || self.formula_in(b, stack)?,
            Implies(a, b) => !self.formula_in(a, stack)? || self.formula_in(b, stack)?,
            Forall(_, a) => {
                for e in 0..self.model.size() {
                    stack.push(e);
                    let r = self.formula_in(a, stack);
                    stack.pop();
                    if !r? {
                        return Ok(false);
                    }
                }
                true
            }
            Exists(_, a) => {
                for e in 0..self.model.size() {
                    stack.push(e);
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

pub fn eval_formula(
    f: &Formula,
    m: &FiniteModel,
    cf: &ChoiceFunction,
    env: &Valuation,
) -> Result<bool, ClassicalError> {
    Evaluator::new(m, cf, env).formula(f)
}

pub fn eval_term(t: &Term, m: &FiniteModel, cf: &ChoiceFunction, env: &Valuation) -> Result<Elem, ClassicalError> {
    Evaluator::new(m, cf, env).term(t)
}

pub fn eval_sentence(f: &Formula, m: &FiniteModel, cf: &ChoiceFunction) -> Result<bool, ClassicalError> {
    eval_formula(f, m, cf, &Valuation::new())
}

/// `{ a | φ(a) }` for a formula with exactly one free variable.
pub fn extension(phi: &Formula, m: &FiniteModel, cf: &ChoiceFunction) -> Result<Mask, ClassicalError> {
    let fv = free_vars(phi);
    if fv.len() != 1 {
        return Err(ClassicalError::FreeVariableCount(fv.len()));
    }
    let x = fv.into_iter().next().expect("one variable");
    let mut out = 0;
    for a in 0..m.size() {
        let env = Valuation::from([(x.clone(), a)]);
        if eval_formula(phi, m, cf, &env)? {
            out |= 1 << a;
        }
    }
    Ok(out)
}

/// Names of the elements of a mask, in universe order.
pub fn mask_names(m: &FiniteModel, x: Mask) -> Vec<String> {
    (0..m.size()).filter(|i| x >> i & 1 == 1).map(|i| m.name(i).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term};

    #[test]
    fn extension_examples() {
        let m = FiniteModel::naturals(3);
        let cf = ChoiceFunction::Min;
        assert_eq!(extension(&parse_formula("x < 2").unwrap(), &m, &cf), Ok(0b011));
        assert_eq!(extension(&parse_formula("x != x").unwrap(), &m, &cf), Ok(0));
        assert_eq!(extension(&parse_formula("x = x").unwrap(), &m, &cf), Ok(0b111));
        assert!(matches!(extension(&parse_formula("x = y").unwrap(), &m, &cf), Err(ClassicalError::FreeVariableCount(2))));
    }

    #[test]
    fn eps_denotes_choice() {
        let m = FiniteModel::naturals(3);
        let cf = ChoiceFunction::Min;
        let env = Valuation::new();
        assert_eq!(eval_term(&parse_term("eps x. x < 2").unwrap(), &m, &cf, &env), Ok(0));
        let null = eval_term(&parse_term("eps x. x != x").unwrap(), &m, &cf, &env).unwrap();
        let all = eval_term(&parse_term("eps x. x = x").unwrap(), &m, &cf, &env).unwrap();
        assert_eq!(null, all);
        let cf = ChoiceFunction::Table(vec![2, 0, 1, 1, 2, 2, 2, 2]);
        cf.validate(3).unwrap();
        assert_eq!(eval_term(&parse_term("eps x. x < 2").unwrap(), &m, &cf, &env), Ok(1));
    }

    #[test]
    fn unbound_variable() {
        let m = FiniteModel::naturals(2);
        let e = eval_sentence(&parse_formula("x < 1").unwrap(), &m, &ChoiceFunction::Min).unwrap_err();
        assert_eq!(e, ClassicalError::UnboundVariable("x".into()));
    }
}
