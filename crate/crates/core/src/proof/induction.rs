//! The ε-proof of induction. With `s = ε_x ¬A(x)` and `t = g(s)`, where
//! `g` is the predecessor (0 at 0), the ten lines derive `A(s)` from
//! `A(0)`, the step `∀x(A(x) ⇒ A(x+1))` and the defining property of `g`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{predecessor, ArithEval, ArithInterp};
use crate::syntax::{abstract_var, free_vars, instantiate, is_proper, Binder, Formula, Term};

use super::check::{check, CheckReport};
use super::derivation::{Derivation, Justification};
use super::schema::{Arg, Schema};
use super::{Profile, ProofError};

/// Cap for the semantic pass over every line.
pub const REPLAY_CAP: u64 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionReplay {
    #[serde(skip)]
    pub derivation: Derivation,
    pub text: String,
    pub s: String,
    pub t: String,
    pub check: CheckReport,
    pub cap: u64,
    /// Least-number value of `s`.
    pub s_value: u64,
    /// Truth of each line under least-number semantics with `g` the predecessor.
    pub line_truth: Vec<bool>,
}

impl InductionReplay {
    pub fn semantically_true(&self) -> bool {
        self.line_truth.iter().all(|b| *b)
    }

    /// Line (8), `s = t+1 ⇒ ¬¬A(t)`.
    pub fn line8(&self) -> &Formula {
        &self.derivation.lines[7].formula
    }
}

/// Build and check the derivation for `a`, which must have exactly one
/// free variable. In proper mode `a` must be proper and the derivation is
/// checked under CP_ε*, otherwise under CP_ε.
pub fn replay_induction(a: &Formula, proper: bool) -> Result<InductionReplay, ProofError> {
    let fv = free_vars(a);
    let [x] = fv.iter().collect::<Vec<_>>()[..] else {
        return Err(ProofError::FreeVariables(a.to_string()));
    };
    if proper && !is_proper(a) {
        return Err(ProofError::Improper(a.to_string()));
    }
    let binder = Binder(x.clone());
    let body = abstract_var(a, x);
    let at = |u: &Term| instantiate(&body, u);
    let abs = |f: &Formula| Arg::Abstraction(binder.clone(), f.clone());

    let s = Term::Eps(binder.clone(), Box::new(Formula::not(body.clone())));
    let t = Term::app("g", vec![s.clone()]);
    let zero = Term::numeral(0);
    let t1 = Term::succ(t.clone());
    let s_zero = Formula::eq(s.clone(), zero.clone());
    let s_succ = Formula::eq(s.clone(), t1.clone());
    let xv = Term::Var(x.clone());
    let step = Formula::Forall(
        binder.clone(),
        Box::new(abstract_var(&Formula::implies(at(&xv), at(&Term::succ(xv.clone()))), x)),
    );

    let mut d = Derivation::new();
    // (1) definition of t
    d.push(Formula::or(s_zero.clone(), s_succ.clone()), Justification::Premise);
    // (2)
    d.push(at(&zero), Justification::Premise);
    // (3)
    let args3 = vec![abs(&body), Arg::Term(s.clone()), Arg::Term(zero.clone())];
    d.push(Schema::EqSubst.instance(&args3).expect("kinds"), Justification::Axiom(Schema::EqSubst, args3));
    // (4)
    d.push(Formula::implies(s_zero, at(&s)), Justification::TautFrom(vec![3, 2]));
    // (5)
    d.push(step, Justification::Premise);
    // (6)
    d.push(Formula::implies(at(&t), at(&t1)), Justification::Inst(5, t.clone()));
    // (7)
    let args7 = vec![abs(&body), Arg::Term(s.clone()), Arg::Term(t1.clone())];
    d.push(Schema::EqSubst.instance(&args7).expect("kinds"), Justification::Axiom(Schema::EqSubst, args7));
    // (8) the successor schema for ¬A
    let args8 = vec![abs(&Formula::not(body.clone())), Arg::Term(t.clone())];
    d.push(Schema::EpsSucc.instance(&args8).expect("kinds"), Justification::Axiom(Schema::EpsSucc, args8));
    // (9)
    d.push(Formula::implies(s_succ, at(&s)), Justification::TautFrom(vec![8, 6, 7]));
    // (10)
    d.push(at(&s), Justification::TautFrom(vec![1, 4, 9]));

    let report = check(&d, if proper { Profile::CpEpsStar } else { Profile::CpEps })?;

    let interp = ArithInterp::new(REPLAY_CAP).with_native("g", 1, predecessor);
    let ev = ArithEval::new(&interp).with_env(BTreeMap::new());
    let s_value = ev.term(&s)?;
    let line_truth = d.lines.iter().map(|l| ev.formula(&l.formula)).collect::<Result<Vec<_>, _>>()?;
    Ok(InductionReplay {
        text: d.to_string(),
        s: s.to_string(),
        t: t.to_string(),
        derivation: d,
        check: report,
        cap: REPLAY_CAP,
        s_value,
        line_truth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn nonnegative() {
        let r = replay_induction(&parse_formula("0 <= x").unwrap(), true).unwrap();
        assert_eq!(r.derivation.len(), 10);
        assert!(r.semantically_true(), "{:?}", r.line_truth);
        let want = parse_formula(&format!("{s} = {t} + 1 -> not not 0 <= {t}", s = r.s, t = r.t)).unwrap();
        assert_eq!(*r.line8(), want);
        assert_eq!(r.s_value, 0);
    }

    #[test]
    fn reflexivity_is_degenerate() {
        let r = replay_induction(&parse_formula("x = x").unwrap(), true).unwrap();
        assert_eq!(r.s_value, 0);
        assert!(r.semantically_true());
    }

    #[test]
    fn improper_refused_in_proper_mode() {
        let a = parse_formula("x = (eps y. y = x)").unwrap();
        assert!(matches!(replay_induction(&a, true), Err(ProofError::Improper(_))));
        assert!(matches!(replay_induction(&parse_formula("P(x, y)").unwrap(), false), Err(ProofError::FreeVariables(_))));
    }

    #[test]
    fn branch_structure() {
        let r = replay_induction(&parse_formula("x < x + 1").unwrap(), true).unwrap();
        let refs: Vec<Vec<usize>> = r.derivation.lines.iter().map(|l| l.just.refs()).collect();
        assert_eq!(refs[3], vec![3, 2]);
        assert_eq!(refs[8], vec![8, 6, 7]);
        assert_eq!(refs[9], vec![1, 4, 9]);
    }
}
