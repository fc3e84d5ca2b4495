use std::fmt;

use serde::Serialize;

use crate::syntax::{
    contains_eps, contains_eps_term, free_vars, instantiate, is_proper, is_proper_term, quantifier_count, used_names,
    visit_formula_terms, Formula, Symbol, Term,
};

use super::derivation::{Derivation, Justification};
use super::schema::{Arg, Schema};
use super::taut::{entails, TautOutcome};
use super::Profile;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckErrorKind {
    #[error("the derivation is empty")]
    Empty,
    #[error("cites line {0}, which is not an earlier line")]
    Reference(usize),
    #[error("rule `{rule}` is not available in {profile}")]
    RuleNotAdmitted { rule: &'static str, profile: Profile },
    #[error("schema `{schema}` is not admitted in {profile}")]
    SchemaNotAdmitted { schema: Schema, profile: Profile },
    #[error("ε-terms are not allowed in {0}")]
    EpsilonNotAdmitted(Profile),
    #[error("not a proper formula: {0}")]
    Improper(String),
    #[error("quantifiers are not allowed in CE")]
    Quantified,
    #[error("not a tautology; falsified by {0}")]
    NotTautology(String),
    #[error("too many atoms for a truth table ({0})")]
    TooManyAtoms(usize),
    #[error("schema instance should be {expected}")]
    SchemaMismatch { expected: String },
    #[error("schema arguments have the wrong kinds")]
    SchemaArgs,
    #[error("{0}")]
    Mismatch(String),
    #[error("`{symbol}` occurs in {place}")]
    Eigen { symbol: String, place: String },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct CheckError {
    pub line: usize,
    pub kind: CheckErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub profile: Profile,
    pub lines: usize,
    pub premises: usize,
    pub conclusion: String,
    pub epsilon_terms: usize,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} lines, {} premise(s), {} ε-term(s), concludes {}",
            self.profile, self.lines, self.premises, self.epsilon_terms, self.conclusion
        )
    }
}

fn has_quantifier(f: &Formula) -> bool {
    let mut found = quantifier_count(f) > 0;
    visit_formula_terms(f, 0, &mut |t, _| {
        if let Term::Eps(_, body) = t {
            found |= quantifier_count(body) > 0;
        }
    });
    found
}

fn arg_ok(a: &Arg, test: &dyn Fn(&Formula) -> bool, test_term: &dyn Fn(&Term) -> bool) -> bool {
    match a {
        Arg::Formula(f) => test(f),
        Arg::Term(t) => test_term(t),
        // open the binder so ε-terms mentioning it count as improper
        Arg::Abstraction(b, body) => {
            let taken = used_names(body);
            let v = crate::syntax::fresh_symbol(b.hint().as_str(), &taken);
            test(&instantiate(body, &Term::Var(v)))
        }
    }
}

/// The term an eigen-symbol stands for in `f`.
fn eigen_term(f: &Formula, a: &Symbol) -> Term {
    if free_vars(f).contains(a) {
        Term::Var(a.clone())
    } else {
        Term::App(a.clone(), vec![])
    }
}

/// Validate every line. Stops at the first bad line.
pub fn check(d: &Derivation, profile: Profile) -> Result<CheckReport, CheckError> {
    if d.is_empty() {
        return Err(CheckError { line: 0, kind: CheckErrorKind::Empty });
    }
    for n in 1..=d.len() {
        check_line(d, n, profile).map_err(|kind| CheckError { line: n, kind })?;
    }
    Ok(CheckReport {
        profile,
        lines: d.len(),
        premises: d.premises().len(),
        conclusion: d.conclusion().map(|f| f.to_string()).unwrap_or_default(),
        epsilon_terms: d.epsilon_terms().len(),
    })
}

fn check_line(d: &Derivation, n: usize, profile: Profile) -> Result<(), CheckErrorKind> {
    use CheckErrorKind as E;
    let line = &d.lines[n - 1];
    let cur = &line.formula;
    for r in line.just.refs() {
        if r == 0 || r >= n {
            return Err(E::Reference(r));
        }
    }
    if !profile.admits_rule(&line.just) {
        return Err(E::RuleNotAdmitted { rule: line.just.rule_name(), profile });
    }
    if let Justification::Axiom(s, _) = &line.just {
        if !profile.admits_schema(*s) {
            return Err(E::SchemaNotAdmitted { schema: *s, profile });
        }
    }

    let args: Vec<Arg> = match &line.just {
        Justification::Axiom(_, a) => a.clone(),
        Justification::Inst(_, t) => vec![Arg::Term(t.clone())],
        _ => vec![],
    };
    if profile == Profile::Cp
        && (contains_eps(cur) || !args.iter().all(|a| arg_ok(a, &|f| !contains_eps(f), &|t| !contains_eps_term(t))))
    {
        return Err(E::EpsilonNotAdmitted(profile));
    }
    if profile == Profile::CpEpsStar {
        if !is_proper(cur) {
            return Err(E::Improper(cur.to_string()));
        }
        if let Some(a) = args.iter().find(|a| !arg_ok(a, &is_proper, &is_proper_term)) {
            return Err(E::Improper(format!("argument {a}")));
        }
    }
    if profile == Profile::Ce && has_quantifier(cur) {
        return Err(E::Quantified);
    }

    let at = |i: usize| &d.lines[i - 1].formula;
    let premises_upto = |i: usize| d.lines[..i].iter().filter(|l| l.just == Justification::Premise).map(|l| &l.formula);
    let eigen_free = |a: &Symbol, f: &Formula, place: &str| {
        if used_names(f).contains(a) {
            Err(E::Eigen { symbol: a.to_string(), place: place.to_string() })
        } else {
            Ok(())
        }
    };

    match &line.just {
        Justification::Premise => Ok(()),
        Justification::Taut => taut(&[], cur),
        Justification::TautFrom(refs) => {
            let hyps: Vec<&Formula> = refs.iter().map(|i| at(*i)).collect();
            taut(&hyps, cur)
        }
        Justification::Mp(i, j) => {
            let want = Formula::implies(at(*i).clone(), cur.clone());
            if *at(*j) == want {
                Ok(())
            } else {
                Err(E::Mismatch(format!("line {j} should be {want}")))
            }
        }
        Justification::Inst(i, t) => match at(*i) {
            Formula::Forall(_, body) if instantiate(body, t) == *cur => Ok(()),
            Formula::Forall(_, body) => Err(E::Mismatch(format!("instance should be {}", instantiate(body, t)))),
            _ => Err(E::Mismatch(format!("line {i} is not universal"))),
        },
        Justification::GenForall(i, a) => {
            let src = at(*i);
            let a_term = eigen_term(src, a);
            let (psi, body) = match (cur, src) {
                (Formula::Implies(psi, q), Formula::Implies(psi2, aa))
                    if psi == psi2 && matches!(&**q, Formula::Forall(_, b) if instantiate(b, &a_term) == **aa) =>
                {
                    let Formula::Forall(_, b) = &**q else { unreachable!("matched above") };
                    (Some(&**psi), &**b)
                }
                (Formula::Forall(_, b), _) if instantiate(b, &a_term) == *src => (None, &**b),
                _ => return Err(E::Mismatch(format!("line {i} does not generalize to this line over `{a}`"))),
            };
            if let Some(psi) = psi {
                eigen_free(a, psi, "the side formula")?;
            }
            eigen_free(a, body, "the generalized formula")?;
            for p in premises_upto(*i) {
                eigen_free(a, p, &format!("premise {p}"))?;
            }
            Ok(())
        }
        Justification::GenExists(i, a) => {
            let src = at(*i);
            let a_term = eigen_term(src, a);
            let (Formula::Implies(ex, psi), Formula::Implies(aa, psi2)) = (cur, src) else {
                return Err(E::Mismatch(format!("line {i} and this line must be implications")));
            };
            let Formula::Exists(_, body) = &**ex else {
                return Err(E::Mismatch("antecedent is not existential".into()));
            };
            if psi != psi2 || instantiate(body, &a_term) != **aa {
                return Err(E::Mismatch(format!("line {i} does not generalize to this line over `{a}`")));
            }
            eigen_free(a, psi, "the side formula")?;
            eigen_free(a, body, "the generalized formula")?;
            for p in premises_upto(*i) {
                eigen_free(a, p, &format!("premise {p}"))?;
            }
            Ok(())
        }
        Justification::Axiom(s, args) => match s.instance(args) {
            None => Err(E::SchemaArgs),
            Some(f) if f == *cur => Ok(()),
            Some(f) => Err(E::SchemaMismatch { expected: f.to_string() }),
        },
    }
}

fn taut(hyps: &[&Formula], goal: &Formula) -> Result<(), CheckErrorKind> {
    match entails(hyps, goal) {
        TautOutcome::Tautology => Ok(()),
        TautOutcome::TooManyAtoms(n) => Err(CheckErrorKind::TooManyAtoms(n)),
        TautOutcome::Falsified(v) => {
            let v: Vec<String> = v.iter().map(|(a, b)| format!("{a} := {b}")).collect();
            Err(CheckErrorKind::NotTautology(v.join(", ")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::derivation::parse_derivation;
    use super::*;

    fn run(src: &str, p: Profile) -> Result<CheckReport, CheckError> {
        check(&parse_derivation(src).unwrap(), p)
    }

    #[test]
    fn modus_ponens_on_a_premise() {
        let r = run("1. P(c) ; premise\n2. P(c) -> P(c) ; taut\n3. P(c) ; mp 1, 2", Profile::Cp).unwrap();
        assert_eq!(r.lines, 3);
        assert_eq!(r.conclusion, "P(c)");
    }

    #[test]
    fn epsilon_schema_by_profile() {
        let src = "1. P(c) -> P(eps x. P(x)) ; axiom eps [x. P(x)] [c]";
        assert!(run(src, Profile::CpEps).is_ok());
        assert!(run(src, Profile::CpEpsStar).is_ok());
        let e = run(src, Profile::Cp).unwrap_err();
        assert_eq!(e.kind, CheckErrorKind::SchemaNotAdmitted { schema: Schema::Eps, profile: Profile::Cp });
    }

    #[test]
    fn impropriety_is_refused() {
        let src = "1. forall x. x = (eps y. y = x) ; premise";
        assert!(run(src, Profile::CpEps).is_ok());
        assert!(matches!(run(src, Profile::CpEpsStar).unwrap_err().kind, CheckErrorKind::Improper(_)));
    }

    #[test]
    fn improper_abstraction_argument() {
        // both lines are proper, the abstraction is not
        let src = "1. c = d and P(eps y. Q(y, d)) -> P(eps y. Q(y, c)) ; axiom eq-subst [x. P(eps y. Q(y, x))] [c] [d]";
        assert!(run(src, Profile::CpEps).is_ok());
        assert!(matches!(run(src, Profile::CpEpsStar).unwrap_err().kind, CheckErrorKind::Improper(_)));
    }

    #[test]
    fn references_must_point_back() {
        let e = run("1. P ; premise\n2. P ; mp 1, 3", Profile::Cp).unwrap_err();
        assert_eq!(e, CheckError { line: 2, kind: CheckErrorKind::Reference(3) });
    }

    #[test]
    fn non_tautology_reports_valuation() {
        let e = run("1. P -> Q ; taut", Profile::Cp).unwrap_err();
        assert!(matches!(e.kind, CheckErrorKind::NotTautology(ref s) if s.contains("P := true")));
    }

    #[test]
    fn ce_refuses_quantifiers_and_rules() {
        assert_eq!(run("1. forall x. P(x) ; premise", Profile::Ce).unwrap_err().kind, CheckErrorKind::Quantified);
        let e = run("1. P(c) ; premise\n2. forall x. P(x) ; gen-forall 1 c", Profile::Ce).unwrap_err();
        assert!(matches!(e.kind, CheckErrorKind::RuleNotAdmitted { .. }));
    }

    #[test]
    fn generalization_side_conditions() {
        let ok = "1. Q -> P(a) or not P(a) ; taut\n2. Q -> forall x. P(x) or not P(x) ; gen-forall 1 a";
        assert!(run(ok, Profile::Cp).is_ok());
        let premise = "1. P(a) ; premise\n2. forall x. P(x) ; gen-forall 1 a";
        assert!(matches!(run(premise, Profile::Cp).unwrap_err().kind, CheckErrorKind::Eigen { .. }));
        let side = "1. P(a) -> P(a) ; taut\n2. P(a) -> forall x. P(x) ; gen-forall 1 a";
        assert!(matches!(run(side, Profile::Cp).unwrap_err().kind, CheckErrorKind::Eigen { .. }));
        let ex = "1. P(a) -> exists x. P(x) ; axiom exists-intro [x. P(x)] [a]\n2. (exists x. P(x)) -> exists x. P(x) ; gen-exists 1 a";
        assert!(run(ex, Profile::Cp).is_ok());
    }

    #[test]
    fn intuitionistic_profile() {
        let src = "1. P -> (Q -> P) ; axiom k [P] [Q]\n2. P ; premise\n3. Q -> P ; mp 2, 1";
        assert!(run(src, Profile::CpiEps).is_ok());
        assert!(matches!(run("1. P or not P ; taut", Profile::CpiEps).unwrap_err().kind, CheckErrorKind::RuleNotAdmitted { .. }));
        let dne = "1. not not P -> P ; axiom dne [P]";
        assert!(matches!(run(dne, Profile::CpiEps).unwrap_err().kind, CheckErrorKind::SchemaNotAdmitted { .. }));
    }

    #[test]
    fn wrong_instance() {
        let e = run("1. P(d) -> P(eps x. P(x)) ; axiom eps [x. P(x)] [c]", Profile::CpEps).unwrap_err();
        assert!(matches!(e.kind, CheckErrorKind::SchemaMismatch { .. }));
    }
}
