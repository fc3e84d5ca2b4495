//! Elimination of ε-terms from proper derivations of ε-free conclusions.
//!
//! An innermost closed ε-term `ε_y B` is replaced by a fresh constant `a`.
//! Instances `∃y B ⇒ B(ε_y B)` and `B(t) ⇒ B(ε_y B)` of the target become
//! uses of the hypothesis `C ≡ ∃y B ⇒ B(a)`, which is then discharged: the
//! deduction theorem gives `C ⇒ φ`, from which `B(a) ⇒ φ`, `∃y B ⇒ φ` and
//! finally `φ` follow.

use serde::Serialize;

use crate::syntax::{
    closed_eps_subterms, closed_eps_subterms_term, contains_eps, instantiate, is_closed_term, occurs_in, replace_term,
    replace_term_in_term, used_names, Binder, Formula, Symbol, Term,
};

use super::check::check;
use super::derivation::{Derivation, Justification};
use super::schema::{Arg, Schema};
use super::{Profile, ProofError};

/// An instance `F(t) ⇒ F(ε_F)` of the ε-schema used in a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalFormula {
    #[serde(serialize_with = "crate::proof::eliminate::ser_display")]
    pub formula: Formula,
    #[serde(serialize_with = "crate::proof::eliminate::ser_display")]
    pub eps_term: Term,
    #[serde(serialize_with = "crate::proof::eliminate::ser_display")]
    pub witness: Term,
    pub line: usize,
}

pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The ε-schema lines of `d`, in line order.
pub fn critical_formulas(d: &Derivation) -> Vec<CriticalFormula> {
    d.lines
        .iter()
        .enumerate()
        .filter_map(|(i, l)| match &l.just {
            Justification::Axiom(Schema::Eps, args) => match args.as_slice() {
                [Arg::Abstraction(b, body), Arg::Term(t)] => Some(CriticalFormula {
                    formula: l.formula.clone(),
                    eps_term: Term::Eps(b.clone(), Box::new(body.clone())),
                    witness: t.clone(),
                    line: i + 1,
                }),
                _ => None,
            },
            _ => None,
        })
        .collect()
}

/// Closed ε-terms in lines and in justification arguments.
fn all_epsilon_terms(d: &Derivation) -> Vec<Term> {
    let mut out = d.epsilon_terms();
    let mut add = |ts: Vec<Term>| {
        for t in ts {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    };
    for l in &d.lines {
        match &l.just {
            Justification::Axiom(_, args) => {
                for a in args {
                    match a {
                        Arg::Formula(f) | Arg::Abstraction(_, f) => add(closed_eps_subterms(f)),
                        Arg::Term(t) => add(closed_eps_subterms_term(t)),
                    }
                }
            }
            Justification::Inst(_, t) => add(closed_eps_subterms_term(t)),
            _ => {}
        }
    }
    out
}

fn mentions(d: &Derivation, target: &Term) -> bool {
    let in_term = |t: &Term| crate::syntax::occurs_in_term(t, target);
    d.lines.iter().any(|l| {
        occurs_in(&l.formula, target)
            || match &l.just {
                Justification::Axiom(_, args) => args.iter().any(|a| match a {
                    Arg::Formula(f) | Arg::Abstraction(_, f) => occurs_in(f, target),
                    Arg::Term(t) => in_term(t),
                }),
                Justification::Inst(_, t) => in_term(t),
                _ => false,
            }
    })
}

struct Hypothesis {
    binder: Binder,
    body: Formula,
    constant: Term,
    /// `∃y B ⇒ B(a)`
    c: Formula,
    conclusion: Formula,
}

struct Stage {
    d: Derivation,
    hyp: Option<Hypothesis>,
}

fn fresh_constant(d: &Derivation) -> Symbol {
    let taken = d.used_names();
    (0..).map(|k| Symbol::from(format!("a{k}"))).find(|s| !taken.contains(s)).expect("unbounded range")
}

fn validate_target(target: &Term) -> Result<(Binder, Formula), ProofError> {
    let Term::Eps(b, body) = target else {
        return Err(ProofError::NotClosed(target.to_string()));
    };
    if !is_closed_term(target) {
        return Err(ProofError::NotClosed(target.to_string()));
    }
    if contains_eps(body) {
        return Err(ProofError::NotInnermost(target.to_string()));
    }
    Ok((b.clone(), (**body).clone()))
}

/// Substitute the target and, when the hypothesis is used, apply the
/// deduction theorem. `None` when the target does not occur.
fn stage(d: &Derivation, target: &Term) -> Result<Option<Stage>, ProofError> {
    let (binder, body) = validate_target(target)?;
    if !mentions(d, target) {
        return Ok(None);
    }
    let phi = d.conclusion().expect("non-empty").clone();
    if contains_eps(&phi) {
        return Err(ProofError::EpsilonConclusion(phi.to_string()));
    }
    if let Some(p) = d.premises().into_iter().find(|p| occurs_in(p, target)) {
        return Err(ProofError::EpsilonPremise(p.to_string()));
    }
    let a = fresh_constant(d);
    let a_t = Term::App(a.clone(), vec![]);
    let rep = |f: &Formula| replace_term(f, target, &a_t);
    let rep_t = |t: &Term| replace_term_in_term(t, target, &a_t);
    let c = Formula::implies(Formula::Exists(binder.clone(), Box::new(body.clone())), instantiate(&body, &a_t));
    let is_target = |args: &[Arg]| {
        args.iter().any(|x| matches!(x, Arg::Abstraction(b, f) if Term::Eps(b.clone(), Box::new(f.clone())) == *target))
    };

    // substituted lines; `None` marks a use of the hypothesis
    let mut lines: Vec<(Formula, Option<Justification>)> = Vec::new();
    let mut map = vec![0usize; d.len() + 1];
    for (k, l) in d.lines.iter().enumerate() {
        let remap = |i: &usize| map[*i];
        let just = match &l.just {
            Justification::Axiom(Schema::EpsExists, args) if is_target(args) => {
                lines.push((c.clone(), None));
                map[k + 1] = lines.len();
                continue;
            }
            Justification::Axiom(Schema::Eps, args) if is_target(args) => {
                let Arg::Term(t) = &args[1] else { unreachable!("checked instance") };
                let t = rep_t(t);
                lines.push((c.clone(), None));
                let hyp = lines.len();
                let intro = Schema::ExistsIntro;
                let iargs = vec![Arg::Abstraction(binder.clone(), body.clone()), Arg::Term(t)];
                lines.push((intro.instance(&iargs).expect("kinds match"), Some(Justification::Axiom(intro, iargs))));
                let ex = lines.len();
                lines.push((rep(&l.formula), Some(Justification::TautFrom(vec![hyp, ex]))));
                map[k + 1] = lines.len();
                continue;
            }
            Justification::Axiom(s, args) if s.is_epsilon() && is_target(args) => {
                return Err(ProofError::UnsupportedSchema { line: k + 1, schema: *s });
            }
            Justification::Axiom(s, args) => Justification::Axiom(*s, args.iter().map(|x| x.map(&rep, &rep_t)).collect()),
            Justification::Premise => Justification::Premise,
            Justification::Taut => Justification::Taut,
            Justification::TautFrom(v) => Justification::TautFrom(v.iter().map(remap).collect()),
            Justification::Mp(i, j) => Justification::Mp(map[*i], map[*j]),
            Justification::Inst(i, t) => Justification::Inst(map[*i], rep_t(t)),
            Justification::GenForall(i, e) => Justification::GenForall(map[*i], e.clone()),
            Justification::GenExists(i, e) => Justification::GenExists(map[*i], e.clone()),
        };
        lines.push((rep(&l.formula), Some(just)));
        map[k + 1] = lines.len();
    }

    if lines.iter().all(|(_, j)| j.is_some()) {
        let mut out = Derivation::new();
        for (f, j) in lines {
            out.push(f, j.expect("no hypothesis lines"));
        }
        return Ok(Some(Stage { d: out, hyp: None }));
    }

    // deduction theorem for C
    let mut out = Derivation::new();
    let mut imp = vec![0usize; lines.len() + 1];
    let ci = |f: &Formula| Formula::implies(c.clone(), f.clone());
    for (k, (f, j)) in lines.iter().enumerate() {
        let last = match j {
            None => out.push(ci(&c), Justification::Taut),
            Some(Justification::Taut) => out.push(ci(f), Justification::Taut),
            Some(j @ (Justification::Premise | Justification::Axiom(..))) => {
                let n = out.push(f.clone(), j.clone());
                out.push(ci(f), Justification::TautFrom(vec![n]))
            }
            Some(Justification::TautFrom(v)) => out.push(ci(f), Justification::TautFrom(v.iter().map(|i| imp[*i]).collect())),
            Some(Justification::Mp(i, j)) => out.push(ci(f), Justification::TautFrom(vec![imp[*i], imp[*j]])),
            Some(Justification::Inst(i, t)) => {
                let Formula::Forall(b, inner) = &lines[*i - 1].0 else {
                    unreachable!("checked derivation")
                };
                let args = vec![Arg::Abstraction(b.clone(), (**inner).clone()), Arg::Term(t.clone())];
                let n = out.push(Schema::ForallElim.instance(&args).expect("kinds match"), Justification::Axiom(Schema::ForallElim, args));
                out.push(ci(f), Justification::TautFrom(vec![imp[*i], n]))
            }
            Some(Justification::GenForall(i, e)) => {
                if used_names(&c).contains(e) {
                    return Err(ProofError::EigenClash(e.to_string()));
                }
                let src = &lines[*i - 1].0;
                match (f, src) {
                    (Formula::Implies(psi, q), Formula::Implies(psi2, aa)) if psi == psi2 => {
                        let cpsi = Formula::and(c.clone(), (**psi).clone());
                        let n = out.push(Formula::implies(cpsi.clone(), (**aa).clone()), Justification::TautFrom(vec![imp[*i]]));
                        let g = out.push(Formula::implies(cpsi, (**q).clone()), Justification::GenForall(n, e.clone()));
                        out.push(ci(f), Justification::TautFrom(vec![g]))
                    }
                    _ => out.push(ci(f), Justification::GenForall(imp[*i], e.clone())),
                }
            }
            Some(Justification::GenExists(i, e)) => {
                if used_names(&c).contains(e) {
                    return Err(ProofError::EigenClash(e.to_string()));
                }
                let (Formula::Implies(ex, psi), Formula::Implies(aa, _)) = (f, &lines[*i - 1].0) else {
                    unreachable!("checked derivation")
                };
                let cpsi = ci(psi);
                let n = out.push(Formula::implies((**aa).clone(), cpsi.clone()), Justification::TautFrom(vec![imp[*i]]));
                let g = out.push(Formula::implies((**ex).clone(), cpsi), Justification::GenExists(n, e.clone()));
                out.push(ci(f), Justification::TautFrom(vec![g]))
            }
        };
        imp[k + 1] = last;
    }
    Ok(Some(Stage { d: out, hyp: Some(Hypothesis { binder, body, constant: a_t, c, conclusion: phi }) }))
}

/// Discharge the hypothesis from a derivation ending in `C ⇒ φ`.
fn finish(mut d: Derivation, h: &Hypothesis) -> Derivation {
    let x = d.len();
    debug_assert_eq!(d.conclusion(), Some(&Formula::implies(h.c.clone(), h.conclusion.clone())));
    let Term::App(a, _) = &h.constant else { unreachable!("constant") };
    let ba = instantiate(&h.body, &h.constant);
    let n = d.push(Formula::implies(ba, h.conclusion.clone()), Justification::TautFrom(vec![x]));
    let ex = Formula::Exists(h.binder.clone(), Box::new(h.body.clone()));
    let g = d.push(Formula::implies(ex, h.conclusion.clone()), Justification::GenExists(n, a.clone()));
    d.push(h.conclusion.clone(), Justification::TautFrom(vec![x, g]));
    d
}

/// Replace one innermost ε-term of a proper derivation by a fresh
/// constant `a0`, `a1`, ..., discharging the ε-instances it was used in.
pub fn eliminate_one_epsilon(d: &Derivation, target: &Term) -> Result<Derivation, ProofError> {
    check(d, Profile::CpEpsStar)?;
    let out = match stage(d, target)? {
        None => return Ok(d.clone()),
        Some(Stage { d, hyp: None }) => d,
        Some(Stage { d, hyp: Some(h) }) => finish(d, &h),
    };
    check(&out, Profile::CpEpsStar)?;
    Ok(out)
}

/// Turn a proper derivation of an ε-free conclusion from ε-free premises
/// into an ε-free derivation checked under CP.
pub fn second_epsilon_theorem(d: &Derivation) -> Result<Derivation, ProofError> {
    check(d, Profile::CpEpsStar)?;
    let phi = d.conclusion().expect("checked derivations are non-empty");
    if contains_eps(phi) {
        return Err(ProofError::EpsilonConclusion(phi.to_string()));
    }
    if let Some(p) = d.premises().into_iter().find(|p| contains_eps(p)) {
        return Err(ProofError::EpsilonPremise(p.to_string()));
    }
    let out = eliminate_all(d.clone())?;
    check(&out, Profile::Cp)?;
    Ok(out)
}

/// Innermost first. The hypothesis of each step is discharged only after
/// the remaining terms are gone, so its constant never meets a later
/// generalization.
fn eliminate_all(d: Derivation) -> Result<Derivation, ProofError> {
    let terms = all_epsilon_terms(&d);
    let Some(target) = terms.iter().find(|t| matches!(t, Term::Eps(_, b) if !contains_eps(b))).cloned() else {
        return Ok(d);
    };
    match stage(&d, &target)? {
        None => unreachable!("listed terms occur"),
        Some(Stage { d, hyp: None }) => eliminate_all(d),
        Some(Stage { d, hyp: Some(h) }) => Ok(finish(eliminate_all(d)?, &h)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::derivation::parse_derivation;
    use super::*;
    use crate::syntax::parse_term;

    const ROUTED: &str = "\
1. (exists x. P(x)) -> P(eps x. P(x)) ; axiom eps-exists [x. P(x)]
2. P(eps x. P(x)) -> exists x. P(x) ; axiom exists-intro [x. P(x)] [eps x. P(x)]
3. (exists x. P(x)) -> exists x. P(x) ; taut-from 1, 2
";

    #[test]
    fn critical_formula_extraction() {
        let d = parse_derivation("1. F(2) -> F(eps x. F(x)) ; axiom eps [x. F(x)] [2]").unwrap();
        let cf = critical_formulas(&d);
        assert_eq!(cf.len(), 1);
        assert_eq!(cf[0].witness, parse_term("2").unwrap());
        assert_eq!(cf[0].eps_term, parse_term("eps x. F(x)").unwrap());
        assert!(critical_formulas(&parse_derivation(ROUTED).unwrap()).is_empty());
    }

    #[test]
    fn one_step_with_hypothesis() {
        let d = parse_derivation(ROUTED).unwrap();
        let target = parse_term("eps x. P(x)").unwrap();
        let out = eliminate_one_epsilon(&d, &target).unwrap();
        assert!(out.epsilon_terms().is_empty());
        assert_eq!(out.conclusion(), d.conclusion());
        check(&out, Profile::Cp).unwrap();
    }

    #[test]
    fn absent_target_is_identity() {
        let d = parse_derivation(ROUTED).unwrap();
        let out = eliminate_one_epsilon(&d, &parse_term("eps x. Q(x)").unwrap()).unwrap();
        assert_eq!(out, d);
    }

    #[test]
    fn plain_substitution() {
        // the ε-term is used, but never through an ε-instance
        let src = "\
1. P(eps x. Q(x)) -> P(eps x. Q(x)) ; taut
2. (P(eps x. Q(x)) -> P(eps x. Q(x))) -> (R -> R) ; taut
3. R -> R ; mp 1, 2
";
        let d = parse_derivation(src).unwrap();
        let out = eliminate_one_epsilon(&d, &parse_term("eps x. Q(x)").unwrap()).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out.lines[0].formula.to_string(), "P(a0) -> P(a0)");
    }

    #[test]
    fn refuses_outer_terms() {
        let src = "1. (exists y. R(eps x. S(x), y)) -> R(eps x. S(x), eps y. R(eps x. S(x), y)) ; axiom eps-exists [y. R(eps x. S(x), y)]\n2. R -> R ; taut";
        let d = parse_derivation(src).unwrap();
        let outer = parse_term("eps y. R(eps x. S(x), y)").unwrap();
        assert!(matches!(eliminate_one_epsilon(&d, &outer), Err(ProofError::NotInnermost(_))));
    }

    #[test]
    fn second_theorem_on_routed_proof() {
        let d = parse_derivation(ROUTED).unwrap();
        let out = second_epsilon_theorem(&d).unwrap();
        assert!(out.epsilon_terms().is_empty());
        assert_eq!(out.conclusion(), d.conclusion());
    }

    #[test]
    fn second_theorem_leaves_epsilon_free_input() {
        let d = parse_derivation("1. P -> P ; taut").unwrap();
        assert_eq!(second_epsilon_theorem(&d).unwrap(), d);
    }

    #[test]
    fn improper_derivation_refused() {
        let d = parse_derivation("1. forall x. x = (eps y. y = x) -> true ; taut").unwrap();
        let e = second_epsilon_theorem(&d).unwrap_err();
        assert!(matches!(e, ProofError::Check(ref c) if c.line == 1), "{e}");
    }
}
