use crate::syntax::{instantiate, map_formula, quantifier_count, Formula, Term};

use super::{Mode, TransformError};

/// One rewrite performed by [`epsilon_translate_traced`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TraceStep {
    pub rule: &'static str,
    pub before: String,
    pub after: String,
}

impl std::fmt::Display for TraceStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RULE {}: {} ⟹ {}", self.rule, self.before, self.after)
    }
}

pub const EXISTS_RULE: &str = "exists-to-eps";
pub const FORALL_RULE: &str = "forall-to-eps";

/// `∃x F(x)` becomes `F(ε_x F(x))`.
pub fn existential_to_epsilon(phi: &Formula) -> Result<Formula, TransformError> {
    match phi {
        Formula::Exists(x, body) => Ok(instantiate(body, &Term::Eps(x.clone(), body.clone()))),
        _ => Err(TransformError::NotExistential(phi.to_string())),
    }
}

/// `∀x F(x)` becomes `F(ε_x ¬F(x))`. Only sound classically.
pub fn universal_to_epsilon(phi: &Formula, mode: Mode) -> Result<Formula, TransformError> {
    match phi {
        Formula::Forall(x, body) => {
            if mode == Mode::Intuitionistic {
                return Err(TransformError::MarkovRefused);
            }
            let tau = Term::Eps(x.clone(), Box::new(Formula::Not(body.clone())));
            Ok(instantiate(body, &tau))
        }
        _ => Err(TransformError::NotUniversal(phi.to_string())),
    }
}

/// Eliminate every quantifier, innermost first.
pub fn epsilon_translate(phi: &Formula, mode: Mode) -> Result<Formula, TransformError> {
    epsilon_translate_traced(phi, mode).map(|(f, _)| f)
}

pub fn epsilon_translate_traced(phi: &Formula, mode: Mode) -> Result<(Formula, Vec<TraceStep>), TransformError> {
    let mut current = phi.clone();
    let mut trace = Vec::new();
    loop {
        let mut rule = None;
        let mut err = None;
        let next = rewrite_innermost(&current, mode, &mut rule, &mut err);
        if let Some(e) = err {
            return Err(e);
        }
        match rule {
            None => break,
            Some(r) => {
                trace.push(TraceStep { rule: r, before: current.to_string(), after: next.to_string() });
                current = next;
            }
        }
    }
    debug_assert_eq!(quantifier_count(&current), 0);
    Ok((current, trace))
}

/// Rewrite the leftmost quantifier whose body is quantifier-free. Sets
/// `rule` when a rewrite happened.
fn rewrite_innermost(
    f: &Formula,
    mode: Mode,
    rule: &mut Option<&'static str>,
    err: &mut Option<TransformError>,
) -> Formula {
    if rule.is_some() || err.is_some() {
        return f.clone();
    }
    use Formula::*;
    match f {
        Forall(x, body) | Exists(x, body) => {
            if quantifier_count(body) > 0 {
                let inner = rewrite_innermost(body, mode, rule, err);
                return match f {
                    Forall(..) => Forall(x.clone(), Box::new(inner)),
                    _ => Exists(x.clone(), Box::new(inner)),
                };
            }
            let out = match f {
                Forall(..) => universal_to_epsilon(f, mode).map(|g| (g, FORALL_RULE)),
                _ => existential_to_epsilon(f).map(|g| (g, EXISTS_RULE)),
            };
            match out {
                Ok((g, r)) => {
                    *rule = Some(r);
                    g
                }
                Err(e) => {
                    *err = Some(e);
                    f.clone()
                }
            }
        }
        Not(a) => Not(Box::new(rewrite_innermost(a, mode, rule, err))),
        And(a, b) => {
            let a2 = rewrite_innermost(a, mode, rule, err);
            let b2 = rewrite_innermost(b, mode, rule, err);
            And(Box::new(a2), Box::new(b2))
        }
        Or(a, b) => {
            let a2 = rewrite_innermost(a, mode, rule, err);
            let b2 = rewrite_innermost(b, mode, rule, err);
            Or(Box::new(a2), Box::new(b2))
        }
        Implies(a, b) => {
            let a2 = rewrite_innermost(a, mode, rule, err);
            let b2 = rewrite_innermost(b, mode, rule, err);
            Implies(Box::new(a2), Box::new(b2))
        }
        // quantifiers inside ε-bodies of atoms
        Pred(..) | Eq(..) if quantifier_count(f) > 0 => {
            let mut done = false;
            map_formula(f, 0, &mut |t, _| {
                if done {
                    return None;
                }
                if let Term::Eps(x, body) = t {
                    if quantifier_count(body) > 0 {
                        done = true;
                        let inner = rewrite_innermost(body, mode, rule, err);
                        return Some(Term::Eps(x.clone(), Box::new(inner)));
                    }
                }
                None
            })
        }
        _ => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{epsilon_rank, parse_formula, subordination_rank};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn exists_rule() {
        assert_eq!(existential_to_epsilon(&f("exists x. P(x)")).unwrap().to_string(), "P(eps x. P(x))");
        assert_eq!(
            existential_to_epsilon(&f("exists x. x != x")).unwrap().to_string(),
            "(eps x. x != x) != (eps x. x != x)"
        );
        assert_eq!(existential_to_epsilon(&f("exists y. y < c")).unwrap().to_string(), "(eps y. y < c) < c");
        assert!(existential_to_epsilon(&f("P(c)")).is_err());
    }

    #[test]
    fn forall_rule() {
        assert_eq!(universal_to_epsilon(&f("forall x. F(x)"), Mode::Classical).unwrap().to_string(), "F(eps x. not F(x))");
        assert_eq!(
            universal_to_epsilon(&f("forall x. x = x"), Mode::Classical).unwrap().to_string(),
            "(eps x. x != x) = (eps x. x != x)"
        );
        let e = universal_to_epsilon(&f("forall x. F(x)"), Mode::Intuitionistic).unwrap_err();
        assert!(e.to_string().contains("Markov"));
    }

    #[test]
    fn translate_innermost_first() {
        let (g, trace) = epsilon_translate_traced(&f("forall x. exists y. x < y"), Mode::Classical).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].rule, EXISTS_RULE);
        assert_eq!(trace[1].rule, FORALL_RULE);
        assert_eq!(quantifier_count(&g), 0);
        let a5 = epsilon_translate(&f("exists x. forall y. x = y or x < y"), Mode::Classical).unwrap();
        assert_eq!(quantifier_count(&a5), 0);
        // the witness is substituted into its own τ-term, so nesting depth is 3
        // while the subordination rank is 2
        assert_eq!(subordination_rank(&a5), 2);
        assert_eq!(epsilon_rank(&a5), 3);
        assert_eq!(epsilon_translate(&f("P(c)"), Mode::Classical).unwrap(), f("P(c)"));
    }
}
