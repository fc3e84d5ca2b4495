//! Verification of quantifier-free consequences of prenex premises.
//!
//! The candidate supplies instances of the premise matrices and of the goal
//! matrix. Each is matched against its source; the entailment
//! `Σ* ⊢ φ₁ ∨ … ∨ φₙ` is then decided by a truth table over the atoms,
//! keeping only valuations consistent with equality (reflexive, symmetric,
//! transitive and a congruence for every function and predicate symbol).
//! No instances are searched for.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::syntax::{free_vars, quantifier_count, subst_many, Formula, Symbol, Term};
use crate::transform::open_prefix;

use super::taut::Skeleton;
use super::ProofError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixInstance {
    /// Index into the premise list.
    pub source: usize,
    pub formula: Formula,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceCandidate {
    pub sigma: Vec<MatrixInstance>,
    /// Instances of the goal matrix, read as a disjunction.
    pub goal: Vec<Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstTheoremReport {
    pub sigma_star: Vec<String>,
    pub disjunction: String,
    pub atoms: usize,
    pub valuations: u64,
    /// Valuations respecting equality.
    pub consistent: u64,
    pub entailed: bool,
    /// Atom values making Σ* true and every disjunct false.
    pub countervaluation: Option<Vec<(String, bool)>>,
}

fn matrix_of(f: &Formula) -> Result<(Vec<Symbol>, Formula), ProofError> {
    let (mut vars, m) = open_prefix(f);
    if quantifier_count(&m) > 0 {
        return Err(ProofError::NotElementary(f.to_string()));
    }
    for v in free_vars(&m) {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    Ok((vars, m))
}

/// Bindings for `vars` making `pattern` equal to `inst`.
pub(crate) fn match_instance(pattern: &Formula, vars: &[Symbol], inst: &Formula) -> Option<Vec<(Symbol, Term)>> {
    let mut env: BTreeMap<Symbol, Term> = BTreeMap::new();
    if !match_formula(pattern, inst, vars, &mut env) {
        return None;
    }
    let bind: Vec<(Symbol, Term)> = env.into_iter().collect();
    (subst_many(pattern, &bind) == *inst).then_some(bind)
}

fn match_formula(p: &Formula, f: &Formula, vars: &[Symbol], env: &mut BTreeMap<Symbol, Term>) -> bool {
    use Formula::*;
    match (p, f) {
        (True, True) | (False, False) => true,
        (Pred(a, xs), Pred(b, ys)) => a == b && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, vars, env)),
        (Eq(a, b), Eq(c, d)) => match_term(a, c, vars, env) && match_term(b, d, vars, env),
        (Not(a), Not(b)) => match_formula(a, b, vars, env),
        (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) | (Implies(a, b), Implies(c, d)) => {
            match_formula(a, c, vars, env) && match_formula(b, d, vars, env)
        }
        // inside binders only exact agreement is checked, by the final substitution
        (Forall(..), Forall(..)) | (Exists(..), Exists(..)) => true,
        _ => false,
    }
}

fn match_term(p: &Term, t: &Term, vars: &[Symbol], env: &mut BTreeMap<Symbol, Term>) -> bool {
    match (p, t) {
        (Term::Var(v), _) if vars.contains(v) => match env.get(v) {
            Some(b) => b == t,
            None => {
                env.insert(v.clone(), t.clone());
                true
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, vars, env))
        }
        (Term::Eps(..), Term::Eps(..)) => true,
        _ => p == t,
    }
}

/// Subterms of atom arguments; ε-terms are opaque.
struct Congruence {
    terms: Vec<Term>,
    /// Per atom: `Some((lhs, rhs))` for equations.
    equations: Vec<Option<(usize, usize)>>,
    /// Per atom: predicate symbol and argument indices.
    preds: Vec<Option<(Symbol, Vec<usize>)>>,
    /// Per term: function symbol and argument indices.
    apps: Vec<Option<(Symbol, Vec<usize>)>>,
}

impl Congruence {
    fn new(atoms: &[Formula]) -> Self {
        let mut c = Congruence { terms: vec![], equations: vec![], preds: vec![], apps: vec![] };
        for a in atoms {
            let (eq, pr) = match a {
                Formula::Eq(l, r) => (Some((c.intern(l), c.intern(r))), None),
                Formula::Pred(p, args) => (None, Some((p.clone(), args.iter().map(|t| c.intern(t)).collect()))),
                _ => (None, None),
            };
            c.equations.push(eq);
            c.preds.push(pr);
        }
        c
    }

    fn intern(&mut self, t: &Term) -> usize {
        if let Some(i) = self.terms.iter().position(|u| u == t) {
            return i;
        }
        let app = match t {
            Term::App(f, args) => Some((f.clone(), args.iter().map(|a| self.intern(a)).collect())),
            _ => None,
        };
        self.terms.push(t.clone());
        self.apps.push(app);
        self.terms.len() - 1
    }

    fn consistent(&self, v: u64) -> bool {
        let n = self.terms.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for (k, e) in self.equations.iter().enumerate() {
            if let Some((l, r)) = e {
                if v >> k & 1 == 1 {
                    let (a, b) = (find(&mut parent, *l), find(&mut parent, *r));
                    parent[a] = b;
                }
            }
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in i + 1..n {
                    let (Some((f, xs)), Some((g, ys))) = (&self.apps[i], &self.apps[j]) else { continue };
                    if f != g || xs.len() != ys.len() || find(&mut parent, i) == find(&mut parent, j) {
                        continue;
                    }
                    if xs.iter().zip(ys).all(|(x, y)| find(&mut parent, *x) == find(&mut parent, *y)) {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = b;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for (k, e) in self.equations.iter().enumerate() {
            if let Some((l, r)) = e {
                if v >> k & 1 == 0 && find(&mut parent, *l) == find(&mut parent, *r) {
                    return false;
                }
            }
        }
        for (i, pi) in self.preds.iter().enumerate() {
            let Some((p, xs)) = pi else { continue };
            for (j, pj) in self.preds.iter().enumerate().skip(i + 1) {
                let Some((q, ys)) = pj else { continue };
                if p == q
                    && xs.len() == ys.len()
                    && (v >> i & 1) != (v >> j & 1)
                    && xs.iter().zip(ys).all(|(x, y)| find(&mut parent, *x) == find(&mut parent, *y))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Check that each candidate formula instantiates its claimed matrix, then
/// decide `Σ* ⊢ φ₁ ∨ … ∨ φₙ` over equality-respecting valuations.
pub fn first_theorem_instance_check(
    sigma: &[Formula],
    phi: &Formula,
    candidate: &InstanceCandidate,
) -> Result<FirstTheoremReport, ProofError> {
    let mut star = Vec::new();
    for inst in &candidate.sigma {
        let src = sigma.get(inst.source).ok_or(ProofError::BadSource(inst.source))?;
        let (vars, m) = matrix_of(src)?;
        match_instance(&m, &vars, &inst.formula)
            .ok_or_else(|| ProofError::NotAnInstance { formula: inst.formula.to_string(), matrix: m.to_string() })?;
        star.push(inst.formula.clone());
    }
    let (gvars, gm) = matrix_of(phi)?;
    for g in &candidate.goal {
        match_instance(&gm, &gvars, g)
            .ok_or_else(|| ProofError::NotAnInstance { formula: g.to_string(), matrix: gm.to_string() })?;
    }
    let disjunction = Formula::disjunction(candidate.goal.iter().cloned());

    let mut sk = Skeleton::new();
    let hs: Vec<usize> = star.iter().map(|h| sk.add(h)).collect();
    let goal = sk.add(&disjunction);
    let total = sk.valuations().map_err(ProofError::TooManyAtoms)?;
    let cong = Congruence::new(&sk.atoms);
    let mut report = FirstTheoremReport {
        sigma_star: star.iter().map(|f| f.to_string()).collect(),
        disjunction: disjunction.to_string(),
        atoms: sk.atoms.len(),
        valuations: total,
        consistent: 0,
        entailed: true,
        countervaluation: None,
    };
    for v in 0..total {
        if !cong.consistent(v) {
            continue;
        }
        report.consistent += 1;
        if report.entailed && hs.iter().all(|h| sk.eval(*h, v)) && !sk.eval(goal, v) {
            report.entailed = false;
            report.countervaluation = Some(sk.describe(v));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn sigma() -> Vec<Formula> {
        // A1, A2, A3, A4', A5'
        [
            "forall x. not x < x",
            "forall x. forall y. forall z. x < y and y < z -> x < z",
            "forall x. forall y. x < y or y < x or x = y",
            "forall x. x < g(x)",
            "forall y. s = y or s < y",
        ]
        .iter()
        .map(|s| f(s))
        .collect()
    }

    fn inst(source: usize, s: &str) -> MatrixInstance {
        MatrixInstance { source, formula: f(s) }
    }

    #[test]
    fn member_of_sigma_star() {
        let goal = f("forall x. x < g(x)");
        let cand = InstanceCandidate { sigma: vec![inst(3, "0 < g(0)"), inst(4, "s = 0 or s < 0")], goal: vec![f("0 < g(0)")] };
        let r = first_theorem_instance_check(&sigma(), &goal, &cand).unwrap();
        assert!(r.entailed);
    }

    #[test]
    fn disjunctive_goal() {
        let goal = f("forall x. x < g(x) or x = g(x)");
        let cand = InstanceCandidate {
            sigma: vec![inst(2, "s < g(s) or g(s) < s or s = g(s)"), inst(3, "s < g(s)")],
            goal: vec![f("s < g(s) or s = g(s)")],
        };
        let r = first_theorem_instance_check(&sigma(), &goal, &cand).unwrap();
        assert!(r.entailed);
        assert_eq!(r.atoms, 3);
    }

    #[test]
    fn unrelated_goal_has_countervaluation() {
        let goal = f("forall x. P(x)");
        let cand = InstanceCandidate { sigma: vec![inst(3, "0 < g(0)")], goal: vec![f("P(0)")] };
        let r = first_theorem_instance_check(&sigma(), &goal, &cand).unwrap();
        assert!(!r.entailed);
        let cv = r.countervaluation.unwrap();
        assert!(cv.contains(&("P(0)".to_string(), false)));
    }

    #[test]
    fn wrong_instance_refused() {
        let cand = InstanceCandidate { sigma: vec![inst(3, "0 < g(1)")], goal: vec![] };
        assert!(matches!(
            first_theorem_instance_check(&sigma(), &f("P"), &cand),
            Err(ProofError::NotAnInstance { .. })
        ));
        let cand = InstanceCandidate { sigma: vec![inst(9, "P")], goal: vec![] };
        assert_eq!(first_theorem_instance_check(&sigma(), &f("P"), &cand), Err(ProofError::BadSource(9)));
    }

    #[test]
    fn equality_is_respected() {
        // c = d and P(c) entail P(d) once valuations respect congruence
        let sigma = vec![f("c = d"), f("P(c)")];
        let cand = InstanceCandidate { sigma: vec![inst(0, "c = d"), inst(1, "P(c)")], goal: vec![f("P(d)")] };
        let r = first_theorem_instance_check(&sigma, &f("P(d)"), &cand).unwrap();
        assert!(r.entailed);
        assert!(r.consistent < r.valuations);
        let cand = InstanceCandidate { sigma: vec![inst(0, "c = d")], goal: vec![f("h(c) = h(d)")] };
        assert!(first_theorem_instance_check(&sigma, &f("h(c) = h(d)"), &cand).unwrap().entailed);
    }
}
