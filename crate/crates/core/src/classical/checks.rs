use serde::Serialize;

use crate::syntax::{eta_expansion, free_vars, Binder, instantiate, make_eps, Formula, Symbol, Term};
use crate::transform::{existential_to_epsilon, universal_to_epsilon, Mode};

use super::choice::ChoiceFunction;
use super::enumerate::{sweep, unary_bodies, ModelSpace, SweepReport};
use super::eval::{eval_formula, eval_sentence, eval_term, extension, Valuation};
use super::model::{mask_elems, Elem, FiniteModel, Mask};
use super::ClassicalError;

fn single_var(f: &Formula) -> Result<Symbol, ClassicalError> {
    let fv = free_vars(f);
    if fv.len() != 1 {
        return Err(ClassicalError::FreeVariableCount(fv.len()));
    }
    Ok(fv.into_iter().next().expect("one variable"))
}

fn close(body: &Formula) -> (Symbol, Formula) {
    let x = single_var(body).expect("bodies are unary");
    (x.clone(), crate::syntax::abstract_var(body, &x))
}

fn quantifier_sweep(name: &str, max_n: usize, space: &ModelSpace, universal: bool) -> SweepReport {
    let pairs: Vec<(Formula, Formula)> = unary_bodies(space)
        .iter()
        .map(|b| {
            let (x, open) = close(b);
            let q = if universal {
                Formula::Forall(Binder(x.clone()), Box::new(open))
            } else {
                Formula::Exists(Binder(x.clone()), Box::new(open))
            };
            let t = if universal {
                universal_to_epsilon(&q, Mode::Classical).expect("universal")
            } else {
                existential_to_epsilon(&q).expect("existential")
            };
            (q, t)
        })
        .collect();
    sweep(name, space, max_n, |m, cf| {
        for (q, t) in &pairs {
            let a = eval_sentence(q, m, cf).expect("closed over the space");
            let b = eval_sentence(t, m, cf).expect("closed over the space");
            if a != b {
                return (pairs.len() as u64, Some(format!("{q} is {a} but {t} is {b}")));
            }
        }
        (pairs.len() as u64, None)
    })
}

/// `∃x F(x)` against `F(ε_x F(x))` on every model up to `max_n` elements
/// and every choice function.
pub fn check_exists_equivalence(max_n: usize, space: &ModelSpace) -> SweepReport {
    quantifier_sweep("exists-equivalence", max_n, space, false)
}

/// `∀x F(x)` against `F(ε_x ¬F(x))`.
pub fn check_forall_equivalence(max_n: usize, space: &ModelSpace) -> SweepReport {
    quantifier_sweep("forall-equivalence", max_n, space, true)
}

/// `ε_x(x=x)` and `ε_x(x≠x)` denote the same element.
pub fn check_null_collapse(max_n: usize, space: &ModelSpace) -> SweepReport {
    let all = Term::eps("x", Formula::eq(Term::Bound(0), Term::Bound(0)));
    let none = Term::eps("x", Formula::neq(Term::Bound(0), Term::Bound(0)));
    let env = Valuation::new();
    sweep("null-collapse", space, max_n, |m, cf| {
        let a = eval_term(&all, m, cf, &env).expect("closed");
        let b = eval_term(&none, m, cf, &env).expect("closed");
        (1, (a != b).then(|| format!("eps x. x = x is {} but eps x. x != x is {}", m.name(a), m.name(b))))
    })
}

/// `F(a) ⇒ F(ε_F)` for every unary body and every element `a`.
pub fn check_epsilon_soundness(max_n: usize, space: &ModelSpace) -> SweepReport {
    let bodies: Vec<(Symbol, Formula, Formula)> = unary_bodies(space)
        .into_iter()
        .map(|b| {
            let (x, open) = close(&b);
            let eps = Term::Eps(Binder(x.clone()), Box::new(open.clone()));
            (x, b, instantiate(&open, &eps))
        })
        .collect();
    sweep("epsilon-schema", space, max_n, |m, cf| {
        let mut n = 0;
        for (x, body, at_eps) in &bodies {
            let chosen = eval_sentence(at_eps, m, cf).expect("closed");
            for a in 0..m.size() {
                n += 1;
                let env = Valuation::from([(x.clone(), a)]);
                if eval_formula(body, m, cf, &env).expect("one variable") && !chosen {
                    return (n, Some(format!("{body} holds at {} but not at its ε-term", m.name(a))));
                }
            }
        }
        (n, None)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AckermannReport {
    pub pairs: usize,
    pub same_extension: usize,
    pub violations: Vec<String>,
    /// Φ is a function of the extension, so a violation cannot occur.
    pub structurally_guaranteed: bool,
}

impl AckermannReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `∀x(F(x) ⇔ G(x)) ⇒ ε_F = ε_G` on the given pairs.
pub fn check_ackermann(
    m: &FiniteModel,
    cf: &ChoiceFunction,
    pairs: &[(Formula, Formula)],
) -> Result<AckermannReport, ClassicalError> {
    let mut report = AckermannReport { pairs: pairs.len(), same_extension: 0, violations: vec![], structurally_guaranteed: true };
    for (f, g) in pairs {
        let (x, y) = (single_var(f)?, single_var(g)?);
        let ef = make_eps(f, &x).expect("free");
        let eg = make_eps(g, &y).expect("free");
        let same = extension(f, m, cf)? == extension(g, m, cf)?;
        report.same_extension += same as usize;
        let g_at_x = crate::syntax::substitute(g, &y, &Term::Var(x.clone()));
        let antecedent = Formula::Forall(
            Binder(x.clone()),
            Box::new(crate::syntax::abstract_var(&Formula::iff(f.clone(), g_at_x), &x)),
        );
        let schema = Formula::implies(antecedent, Formula::eq(ef, eg));
        if !eval_sentence(&schema, m, cf)? {
            report.violations.push(format!("{f} / {g}"));
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IotaFailure {
    /// No element satisfies the formula.
    Existence,
    /// More than one does.
    Uniqueness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IotaOutcome {
    Unique(Elem),
    Fails(IotaFailure),
}

/// The definite description of a unary formula, when it exists; then it
/// coincides with the ε-value for every Φ.
pub fn iota_check(phi: &Formula, m: &FiniteModel, cf: &ChoiceFunction) -> Result<IotaOutcome, ClassicalError> {
    let ext = extension(phi, m, cf)?;
    Ok(match ext.count_ones() {
        0 => IotaOutcome::Fails(IotaFailure::Existence),
        1 => {
            let x = single_var(phi)?;
            let e = eval_term(&make_eps(phi, &x).expect("free"), m, cf, &Valuation::new())?;
            debug_assert_eq!(1 << e, ext);
            IotaOutcome::Unique(e)
        }
        _ => IotaOutcome::Fails(IotaFailure::Uniqueness),
    })
}

/// `#a = ε_y(y ∼ a)` for each element, after checking that `∼` is an
/// equivalence relation.
pub fn abstraction_representative(
    relation: &str,
    m: &FiniteModel,
    cf: &ChoiceFunction,
) -> Result<Vec<Elem>, ClassicalError> {
    let r = Symbol::new(relation);
    let holds = |a: Elem, b: Elem| m.holds(&r, &[a, b]);
    let fail = |property, witness: String| ClassicalError::NotEquivalence { relation: relation.to_string(), property, witness };
    let n = m.size();
    for a in 0..n {
        if !holds(a, a)? {
            return Err(fail("reflexive", m.name(a).to_string()));
        }
        for b in 0..n {
            if holds(a, b)? && !holds(b, a)? {
                return Err(fail("symmetric", format!("{}, {}", m.name(a), m.name(b))));
            }
            for c in 0..n {
                if holds(a, b)? && holds(b, c)? && !holds(a, c)? {
                    return Err(fail("transitive", format!("{}, {}, {}", m.name(a), m.name(b), m.name(c))));
                }
            }
        }
    }
    let rep = Term::eps("y", Formula::pred(relation, vec![Term::Bound(0), Term::var("x")]));
    (0..n)
        .map(|a| eval_term(&rep, m, cf, &Valuation::from([(Symbol::new("x"), a)])))
        .collect()
}

/// Extension of the η-body `∃y F(y) ⇒ F(x)` of `F`.
pub fn eta_extension(phi: &Formula, x: &Symbol, m: &FiniteModel, cf: &ChoiceFunction) -> Result<Mask, ClassicalError> {
    let eta = eta_expansion(phi, x).map_err(|_| ClassicalError::FreeVariableCount(0))?;
    let open = eta.open(x);
    let mut out = 0;
    for a in mask_elems(m.full()) {
        if eval_formula(&open, m, cf, &Valuation::from([(x.clone(), a)]))? {
            out |= 1 << a;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn small_sweeps_pass() {
        let s = ModelSpace::new(&["P"], &[], &["c"]);
        assert!(check_exists_equivalence(2, &s).passed());
        assert!(check_forall_equivalence(2, &s).passed());
        assert!(check_null_collapse(2, &s).passed());
        assert!(check_epsilon_soundness(2, &s).passed());
    }

    #[test]
    fn ackermann_examples() {
        let m = super::super::FiniteModel::naturals(3);
        let cf = ChoiceFunction::Min;
        let r = check_ackermann(&m, &cf, &[(f("x < 2"), f("not 2 <= x")), (f("x = x"), f("x != x"))]).unwrap();
        assert!(r.passed());
        assert_eq!(r.same_extension, 1);
    }

    #[test]
    fn iota_examples() {
        let mut m = FiniteModel::new(vec!["a".into(), "b".into()]).unwrap();
        m.set_constant("c", 1).unwrap();
        let cf = ChoiceFunction::Min;
        assert_eq!(iota_check(&f("x = c"), &m, &cf), Ok(IotaOutcome::Unique(1)));
        assert_eq!(iota_check(&f("x = x"), &m, &cf), Ok(IotaOutcome::Fails(IotaFailure::Uniqueness)));
        assert_eq!(iota_check(&f("x != x"), &m, &cf), Ok(IotaOutcome::Fails(IotaFailure::Existence)));
    }

    #[test]
    fn representatives() {
        let mut m = FiniteModel::naturals(4);
        m.set_predicate_fn("Id", 2, |a| a[0] == a[1]);
        m.set_predicate_fn("All", 2, |_| true);
        m.set_predicate_fn("Par", 2, |a| a[0] % 2 == a[1] % 2);
        m.set_predicate_fn("Lt", 2, |a| a[0] < a[1]);
        let cf = ChoiceFunction::Min;
        assert_eq!(abstraction_representative("Id", &m, &cf).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(abstraction_representative("All", &m, &cf).unwrap(), vec![0, 0, 0, 0]);
        assert_eq!(abstraction_representative("Par", &m, &cf).unwrap(), vec![0, 1, 0, 1]);
        assert!(matches!(
            abstraction_representative("Lt", &m, &cf),
            Err(ClassicalError::NotEquivalence { property: "reflexive", .. })
        ));
    }

    #[test]
    fn eta_of_empty_is_universe() {
        let m = FiniteModel::naturals(3);
        let x = Symbol::new("x");
        assert_eq!(eta_extension(&f("x != x"), &x, &m, &ChoiceFunction::Min), Ok(0b111));
        assert_eq!(eta_extension(&f("x < 1"), &x, &m, &ChoiceFunction::Min), Ok(0b001));
    }
}
