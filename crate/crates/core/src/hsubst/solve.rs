use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith::{ArithEval, ArithInterp};
use crate::proof::first::match_instance;
use crate::proof::CriticalFormula;
use crate::syntax::{
    closed_eps_subterms, closed_eps_subterms_term, epsilon_rank, fresh_symbol, instantiate, is_sentence, occurs_in,
    used_names, Formula, Term,
};

use super::HsubstError;

/// Deepest ε-nesting the solver accepts.
pub const MAX_RANK: usize = 2;

/// Largest number of assignments the brute-force oracle will scan.
pub const ORACLE_LIMIT: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepairKind {
    Repair,
    /// Dependent term sent back to 0 after a repair of a term in its body.
    Reset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Repair {
    #[serde(serialize_with = "ser_display")]
    pub term: Term,
    pub old: u64,
    pub new: u64,
    /// Line of the critical formula that forced the change.
    pub trigger: usize,
    pub kind: RepairKind,
}

impl fmt::Display for Repair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            RepairKind::Repair => "repair",
            RepairKind::Reset => "reset ",
        };
        write!(f, "{what} {} : {} -> {} (line {})", self.term, self.old, self.new, self.trigger)
    }
}

/// Values for closed ε-terms, with the steps that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonAssignment {
    pub values: BTreeMap<Term, u64>,
    /// Number of repairs (resets are not counted).
    pub iterations: usize,
    pub history: Vec<Repair>,
}

impl EpsilonAssignment {
    /// Every term at 0.
    pub fn zero(terms: &[Term]) -> Self {
        EpsilonAssignment { values: terms.iter().map(|t| (t.clone(), 0)).collect(), iterations: 0, history: vec![] }
    }

    pub fn get(&self, t: &Term) -> Option<u64> {
        self.values.get(t).copied()
    }

    pub fn repairs(&self) -> impl Iterator<Item = &Repair> {
        self.history.iter().filter(|r| r.kind == RepairKind::Repair)
    }
}

impl Serialize for EpsilonAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Entry {
            term: String,
            value: u64,
        }
        let values: Vec<Entry> =
            self.values.iter().map(|(t, v)| Entry { term: t.to_string(), value: *v }).collect();
        let mut st = s.serialize_struct("EpsilonAssignment", 3)?;
        st.serialize_field("values", &values)?;
        st.serialize_field("iterations", &self.iterations)?;
        st.serialize_field("history", &self.history)?;
        st.end()
    }
}

impl fmt::Display for EpsilonAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, v) in &self.values {
            writeln!(f, "{t} = {v}")?;
        }
        write!(f, "{} repair(s)", self.iterations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonTermination {
    pub max_iter: usize,
    pub assignment: EpsilonAssignment,
}

impl fmt::Display for NonTermination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no resolving assignment after {} repairs", self.max_iter)
    }
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Read `f` as `F(t) ⇒ F(ε_x F(x))` for the outermost ε-term of the
/// consequent that fits.
pub fn decompose_critical(f: &Formula, line: usize) -> Result<CriticalFormula, HsubstError> {
    let not_critical = || HsubstError::NotCritical(f.to_string());
    let Formula::Implies(lhs, rhs) = f else {
        return Err(not_critical());
    };
    for e in closed_eps_subterms(rhs) {
        let Term::Eps(_, body) = &e else { continue };
        if instantiate(body, &e) != **rhs {
            continue;
        }
        let x = fresh_symbol("x", &used_names(f));
        let open = instantiate(body, &Term::Var(x.clone()));
        let Some(bind) = match_instance(&open, std::slice::from_ref(&x), lhs) else {
            continue;
        };
        let witness = bind.into_iter().find(|(v, _)| *v == x).map(|(_, t)| t).unwrap_or_else(|| Term::numeral(0));
        if instantiate(body, &witness) == **lhs {
            return Ok(CriticalFormula { formula: f.clone(), eps_term: e.clone(), witness, line });
        }
    }
    Err(not_critical())
}

/// Closed ε-terms of the set, outer before inner, without repeats.
pub fn epsilon_terms_of(set: &[CriticalFormula]) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for c in set {
        let mut ts = closed_eps_subterms(&c.formula);
        ts.extend(closed_eps_subterms_term(&c.eps_term));
        ts.extend(closed_eps_subterms_term(&c.witness));
        for t in ts {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// `10 · cap · #terms`, at least 1.
pub fn default_max_iter(set: &[CriticalFormula], cap: u64) -> usize {
    (10 * cap as usize * epsilon_terms_of(set).len()).max(1)
}

fn validate(set: &[CriticalFormula]) -> Result<(), HsubstError> {
    for c in set {
        if !is_sentence(&c.formula) {
            return Err(HsubstError::NotClosed(c.formula.to_string()));
        }
        let rank = epsilon_rank(&c.formula);
        if rank > MAX_RANK {
            return Err(HsubstError::RankTooHigh { term: c.formula.to_string(), rank, max: MAX_RANK });
        }
    }
    Ok(())
}

fn ordered(set: &[CriticalFormula]) -> Vec<&CriticalFormula> {
    let mut v: Vec<&CriticalFormula> = set.iter().collect();
    v.sort_by_key(|c| c.line);
    v
}

/// Terms whose bodies mention `t`, directly or through another such term.
fn dependents(t: &Term, terms: &[Term]) -> Vec<Term> {
    let mut out: BTreeSet<Term> = BTreeSet::new();
    let mut todo = vec![t.clone()];
    while let Some(cur) = todo.pop() {
        for u in terms {
            if let Term::Eps(_, body) = u {
                if u != t && !out.contains(u) && occurs_in(body, &cur) {
                    out.insert(u.clone());
                    todo.push(u.clone());
                }
            }
        }
    }
    terms.iter().filter(|u| out.contains(*u)).cloned().collect()
}

/// Run the substitution method from `S₀ ≡ 0`. The lowest failing line is
/// repaired first; its ε-term gets the least `n ≤ val(t)` satisfying the
/// body, and terms depending on it go back to 0.
pub fn solve(set: &[CriticalFormula], interp: &ArithInterp, max_iter: usize) -> Result<EpsilonAssignment, HsubstError> {
    validate(set)?;
    let terms = epsilon_terms_of(set);
    let order = ordered(set);
    let mut s = EpsilonAssignment::zero(&terms);
    loop {
        let mut failing = None;
        for c in &order {
            if !ArithEval::assigned(interp, &s.values).formula(&c.formula)? {
                failing = Some(*c);
                break;
            }
        }
        let Some(c) = failing else {
            return Ok(s);
        };
        if s.iterations >= max_iter {
            return Err(HsubstError::NonTermination(Box::new(NonTermination { max_iter, assignment: s })));
        }
        let Term::Eps(_, body) = &c.eps_term else {
            return Err(HsubstError::NotCritical(c.formula.to_string()));
        };
        let ev = ArithEval::assigned(interp, &s.values);
        let bound = ev.term(&c.witness)?;
        let mut new = None;
        for n in 0..=bound {
            if ev.formula(&instantiate(body, &Term::numeral(n)))? {
                new = Some(n);
                break;
            }
        }
        let new = new.ok_or_else(|| HsubstError::NoWitness { term: c.eps_term.to_string(), bound })?;
        let old = s.values.insert(c.eps_term.clone(), new).unwrap_or(0);
        s.iterations += 1;
        s.history.push(Repair { term: c.eps_term.clone(), old, new, trigger: c.line, kind: RepairKind::Repair });
        for d in dependents(&c.eps_term, &terms) {
            let old = s.values.insert(d.clone(), 0).unwrap_or(0);
            if old != 0 {
                s.history.push(Repair { term: d, old, new: 0, trigger: c.line, kind: RepairKind::Reset });
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolveRow {
    pub line: usize,
    #[serde(serialize_with = "ser_display")]
    pub formula: Formula,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolveReport {
    pub rows: Vec<ResolveRow>,
    pub resolved: bool,
}

impl ResolveReport {
    pub fn first_failure(&self) -> Option<&ResolveRow> {
        self.rows.iter().find(|r| !r.value)
    }
}

impl fmt::Display for ResolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "line {}: {} : {}", r.line, if r.value { "true " } else { "FALSE" }, r.formula)?;
        }
        write!(f, "resolved: {}", self.resolved)
    }
}

/// Truth of each critical formula under `s`.
pub fn resolve_report(
    s: &EpsilonAssignment,
    set: &[CriticalFormula],
    interp: &ArithInterp,
) -> Result<ResolveReport, HsubstError> {
    let ev = ArithEval::assigned(interp, &s.values);
    let rows = ordered(set)
        .into_iter()
        .map(|c| Ok(ResolveRow { line: c.line, formula: c.formula.clone(), value: ev.formula(&c.formula)? }))
        .collect::<Result<Vec<_>, HsubstError>>()?;
    let resolved = rows.iter().all(|r| r.value);
    Ok(ResolveReport { rows, resolved })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub terms: Vec<String>,
    pub bound: u64,
    pub scanned: u128,
    pub resolving: u128,
    /// Lexicographically first resolving values, in the order of `terms`.
    pub first: Option<Vec<u64>>,
}

impl OracleReport {
    pub fn exists(&self) -> bool {
        self.resolving > 0
    }
}

/// Scan every assignment with values below `bound`.
pub fn brute_force(set: &[CriticalFormula], interp: &ArithInterp, bound: u64) -> Result<OracleReport, HsubstError> {
    let terms = epsilon_terms_of(set);
    let total = (bound as u128).checked_pow(terms.len() as u32).unwrap_or(u128::MAX);
    if total > ORACLE_LIMIT {
        return Err(HsubstError::OracleTooLarge(total));
    }
    let mut report = OracleReport {
        terms: terms.iter().map(|t| t.to_string()).collect(),
        bound,
        scanned: 0,
        resolving: 0,
        first: None,
    };
    if bound == 0 && !terms.is_empty() {
        return Ok(report);
    }
    let mut digits = vec![0u64; terms.len()];
    loop {
        let values: BTreeMap<Term, u64> = terms.iter().cloned().zip(digits.iter().copied()).collect();
        let ev = ArithEval::assigned(interp, &values);
        let mut ok = true;
        for c in set {
            if !ev.formula(&c.formula)? {
                ok = false;
                break;
            }
        }
        report.scanned += 1;
        if ok {
            report.resolving += 1;
            if report.first.is_none() {
                report.first = Some(digits.clone());
            }
        }
        // odometer, last term fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(report);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < bound {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn cf(src: &str, line: usize) -> CriticalFormula {
        decompose_critical(&parse_formula(src).unwrap(), line).unwrap()
    }

    #[test]
    fn decomposes_simple() {
        let c = cf("2 + 2 = 4 -> (eps x. x + x = 4) + (eps x. x + x = 4) = 4", 1);
        assert_eq!(c.witness, Term::numeral(2));
        assert_eq!(c.eps_term, crate::syntax::parse_term("eps x. x + x = 4").unwrap());
        assert!(decompose_critical(&parse_formula("P(c) -> P(d)").unwrap(), 1).is_err());
    }

    #[test]
    fn one_repair_to_two() {
        let set = vec![cf("2 + 2 = 4 -> (eps x. x + x = 4) + (eps x. x + x = 4) = 4", 1)];
        let interp = ArithInterp::new(64);
        let s0 = EpsilonAssignment::zero(&epsilon_terms_of(&set));
        let before = resolve_report(&s0, &set, &interp).unwrap();
        assert!(!before.resolved);
        assert_eq!(before.first_failure().unwrap().line, 1);
        let s = solve(&set, &interp, 10).unwrap();
        assert_eq!(s.iterations, 1);
        assert_eq!(s.get(&set[0].eps_term), Some(2));
        assert!(resolve_report(&s, &set, &interp).unwrap().resolved);
    }

    #[test]
    fn true_set_untouched() {
        let set = vec![cf("3 <= 1 -> 3 <= (eps y. 3 <= y)", 1)];
        let s = solve(&set, &ArithInterp::new(8), 10).unwrap();
        assert_eq!(s.iterations, 0);
        assert!(s.history.is_empty());
        assert_eq!(s.get(&set[0].eps_term), Some(0));
    }

    #[test]
    fn empty_set_resolved() {
        let interp = ArithInterp::new(4);
        let s = solve(&[], &interp, 1).unwrap();
        assert!(resolve_report(&s, &[], &interp).unwrap().resolved);
        assert_eq!(brute_force(&[], &interp, 4).unwrap().resolving, 1);
    }

    #[test]
    fn rank_three_refused() {
        let f = parse_formula("0 = 0 -> (eps x. x = (eps y. y = (eps z. z = 0))) = (eps x. x = (eps y. y = (eps z. z = 0)))");
        let set = vec![CriticalFormula {
            formula: f.unwrap(),
            eps_term: Term::numeral(0),
            witness: Term::numeral(0),
            line: 1,
        }];
        assert!(matches!(solve(&set, &ArithInterp::new(4), 5), Err(HsubstError::RankTooHigh { .. })));
    }

    #[test]
    fn max_iter_reports_history() {
        let set = vec![cf("5 <= 9 -> 5 <= (eps x. 5 <= x)", 1)];
        match solve(&set, &ArithInterp::new(16), 0) {
            Err(HsubstError::NonTermination(nt)) => assert_eq!(nt.assignment.iterations, 0),
            other => panic!("{other:?}"),
        }
    }
}
