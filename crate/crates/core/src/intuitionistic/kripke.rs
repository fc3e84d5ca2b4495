use std::collections::BTreeMap;

use serde::Serialize;

use crate::classical::{full_mask, tuple_index, tuples, Elem, Mask};
use crate::syntax::{instantiate, is_closed_term, loose_bound_formula, Formula, Symbol, Term};

use super::IntuitionisticError;

pub type World = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkePred {
    pub arity: usize,
    /// `holds[world][tuple]`, tuples over all individuals.
    pub holds: Vec<Vec<bool>>,
}

/// Worlds with an accessibility relation, growing domains over a shared
/// pool of individuals, and monotone relational interpretations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeStructure {
    pub worlds: Vec<String>,
    /// `access[m][n]` when `m ℜ n`.
    pub access: Vec<Vec<bool>>,
    pub transitive: bool,
    pub root: World,
    pub individuals: Vec<String>,
    pub domains: Vec<Mask>,
    pub constants: BTreeMap<Symbol, Elem>,
    pub predicates: BTreeMap<Symbol, KripkePred>,
}

impl KripkeStructure {
    /// Reflexive, transitive structure with every individual in every
    /// domain and no predicates.
    pub fn new(worlds: &[&str], individuals: &[&str]) -> Self {
        let n = worlds.len();
        let all = full_mask(individuals.len());
        KripkeStructure {
            worlds: worlds.iter().map(|s| s.to_string()).collect(),
            access: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
            transitive: true,
            root: 0,
            individuals: individuals.iter().map(|s| s.to_string()).collect(),
            domains: vec![all; n],
            constants: BTreeMap::new(),
            predicates: BTreeMap::new(),
        }
    }

    /// A preorder given by `le[i][j]`, taken as is.
    pub fn with_preorder(mut self, le: Vec<Vec<bool>>) -> Self {
        self.access = le;
        self
    }

    /// Add `m ℜ n` and, for a transitive structure, close under composition.
    pub fn add_edge(&mut self, m: World, n: World) {
        self.access[m][n] = true;
        if self.transitive {
            let k = self.worlds.len();
            for via in 0..k {
                for a in 0..k {
                    for b in 0..k {
                        if self.access[a][via] && self.access[via][b] {
                            self.access[a][b] = true;
                        }
                    }
                }
            }
        }
    }

    pub fn world(&self, name: &str) -> Option<World> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn individual(&self, name: &str) -> Option<Elem> {
        self.individuals.iter().position(|w| w == name)
    }

    pub fn set_domain(&mut self, w: World, d: Mask) {
        self.domains[w] = d;
    }

    pub fn set_constant(&mut self, name: &str, e: Elem) {
        self.constants.insert(Symbol::new(name), e);
    }

    /// Declare `name` false everywhere.
    pub fn declare(&mut self, name: &str, arity: usize) {
        let size = self.individuals.len().pow(arity as u32);
        let holds = vec![vec![false; size]; self.worlds.len()];
        self.predicates.insert(Symbol::new(name), KripkePred { arity, holds });
    }

    /// Make `name(args)` true at `w`. Declares the predicate if needed.
    pub fn set_true(&mut self, name: &str, w: World, args: &[Elem]) {
        if !self.predicates.contains_key(name) {
            self.declare(name, args.len());
        }
        let n = self.individuals.len();
        let p = self.predicates.get_mut(name).expect("declared");
        p.holds[w][tuple_index(args, n)] = true;
    }

    pub fn accessible(&self, m: World) -> impl Iterator<Item = World> + '_ {
        (0..self.worlds.len()).filter(move |&n| self.access[m][n])
    }

    pub fn validate(&self) -> Result<(), IntuitionisticError> {
        let k = self.worlds.len();
        if k == 0 || self.root >= k || self.access.len() != k || self.access.iter().any(|r| r.len() != k) {
            return Err(IntuitionisticError::Shape("worlds, root and accessibility disagree".into()));
        }
        if self.domains.len() != k {
            return Err(IntuitionisticError::Shape("one domain per world is required".into()));
        }
        let n = self.individuals.len();
        for m in 0..k {
            if !self.access[m][m] {
                return Err(IntuitionisticError::NotReflexive(self.worlds[m].clone()));
            }
            if self.domains[m] == 0 {
                return Err(IntuitionisticError::EmptyDomain(self.worlds[m].clone()));
            }
            if self.domains[m] & !full_mask(n) != 0 {
                return Err(IntuitionisticError::Shape(format!("domain of {} names unknown individuals", self.worlds[m])));
            }
            for p in 0..k {
                if !self.access[m][p] {
                    continue;
                }
                if self.transitive {
                    if let Some(q) = (0..k).find(|&q| self.access[p][q] && !self.access[m][q]) {
                        return Err(IntuitionisticError::NotTransitive(format!(
                            "{} -> {} -> {}",
                            self.worlds[m], self.worlds[p], self.worlds[q]
                        )));
                    }
                }
                if self.domains[m] & !self.domains[p] != 0 {
                    return Err(IntuitionisticError::DomainShrinks(self.worlds[m].clone(), self.worlds[p].clone()));
                }
                for (name, pred) in &self.predicates {
                    for (i, t) in tuples(n, pred.arity).enumerate() {
                        if pred.holds[m][i] && !pred.holds[p][i] {
                            return Err(IntuitionisticError::NotMonotone {
                                symbol: name.to_string(),
                                args: t.iter().map(|e| self.individuals[*e].clone()).collect::<Vec<_>>().join(","),
                                from: self.worlds[m].clone(),
                                to: self.worlds[p].clone(),
                            });
                        }
                    }
                }
            }
        }
        for (name, pred) in &self.predicates {
            if pred.holds.len() != k || pred.holds.iter().any(|h| h.len() != n.pow(pred.arity as u32)) {
                return Err(IntuitionisticError::Arity(name.to_string()));
            }
            for m in 0..k {
                for (i, t) in tuples(n, pred.arity).enumerate() {
                    if pred.holds[m][i] && t.iter().any(|e| self.domains[m] >> e & 1 == 0) {
                        return Err(IntuitionisticError::Shape(format!(
                            "{name} holds at {} of an individual outside its domain",
                            self.worlds[m]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// World-dependent denotations `f_F` of closed ε-terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WorldChoice {
    pub map: BTreeMap<Term, Vec<Option<Elem>>>,
}

impl WorldChoice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, eps: &Term, worlds: usize, w: World, e: Elem) {
        self.map.entry(eps.clone()).or_insert_with(|| vec![None; worlds])[w] = Some(e);
    }

    /// The same value at every world.
    pub fn set_rigid(&mut self, eps: &Term, worlds: usize, e: Elem) {
        self.map.insert(eps.clone(), vec![Some(e); worlds]);
    }

    pub fn get(&self, eps: &Term, w: World) -> Option<Elem> {
        self.map.get(eps).and_then(|v| v.get(w).copied().flatten())
    }
}

pub type Env = BTreeMap<Symbol, Elem>;

/// `⊨_M φ` under `env`, with ε-terms read from `wc`.
pub fn kripke_force(
    ks: &KripkeStructure,
    m: World,
    phi: &Formula,
    env: &Env,
    wc: &WorldChoice,
) -> Result<bool, IntuitionisticError> {
    if m >= ks.worlds.len() {
        return Err(IntuitionisticError::Shape(format!("no world {m}")));
    }
    for (v, e) in env {
        if ks.domains[m] >> e & 1 == 0 {
            return Err(IntuitionisticError::OutsideDomain {
                what: format!("{v} = {}", ks.individuals.get(*e).map(String::as_str).unwrap_or("?")),
                world: ks.worlds[m].clone(),
            });
        }
    }
    Forcing { ks, env, wc }.force(m, phi, &mut Vec::new())
}

struct Forcing<'a> {
    ks: &'a KripkeStructure,
    env: &'a Env,
    wc: &'a WorldChoice,
}

impl Forcing<'_> {
    fn term(&self, m: World, t: &Term, stack: &[Elem]) -> Result<Elem, IntuitionisticError> {
        let ks = self.ks;
        let e = match t {
            Term::Bound(i) => return stack.len().checked_sub(i + 1).map(|k| stack[k]).ok_or(IntuitionisticError::DanglingIndex(*i)),
            Term::Var(v) => return self.env.get(v).copied().ok_or_else(|| IntuitionisticError::UnboundVariable(v.to_string())),
            Term::App(f, args) if args.is_empty() => ks
                .constants
                .get(f)
                .copied()
                .or_else(|| ks.individual(f.as_str()))
                .ok_or_else(|| IntuitionisticError::Uninterpreted(f.to_string()))?,
            Term::App(f, _) => return Err(IntuitionisticError::Unsupported(format!("function symbol `{f}`"))),
            Term::Eps(..) => {
                if !is_closed_term(t) {
                    return Err(IntuitionisticError::Unsupported(format!("open ε-term {t}")));
                }
                self.wc
                    .get(t, m)
                    .ok_or_else(|| IntuitionisticError::MissingChoice { term: t.to_string(), world: ks.worlds[m].clone() })?
            }
        };
        if ks.domains[m] >> e & 1 == 0 {
            return Err(IntuitionisticError::OutsideDomain { what: t.to_string(), world: ks.worlds[m].clone() });
        }
        Ok(e)
    }

    fn force(&self, m: World, f: &Formula, stack: &mut Vec<Elem>) -> Result<bool, IntuitionisticError> {
        use Formula::*;
        let ks = self.ks;
        Ok(match f {
            True => true,
            False => false,
            Pred(p, args) => {
                let pred = ks.predicates.get(p).ok_or_else(|| IntuitionisticError::Uninterpreted(p.to_string()))?;
                if pred.arity != args.len() {
                    return Err(IntuitionisticError::Arity(p.to_string()));
                }
                let vals = args.iter().map(|a| self.term(m, a, stack)).collect::<Result<Vec<_>, _>>()?;
                pred.holds[m][tuple_index(&vals, ks.individuals.len())]
            }
            Eq(a, b) => self.term(m, a, stack)? == self.term(m, b, stack)?,
            And(a, b) => self.force(m, a, stack)? && self.force(m, b, stack)?,
            Or(a, b) => self.force(m, a, stack)? || self.force(m, b, stack)?,
            Implies(a, b) => {
                for n in ks.accessible(m) {
                    if self.force(n, a, stack)? && !self.force(n, b, stack)? {
                        return Ok(false);
                    }
                }
                true
            }
            Not(a) => {
                for n in ks.accessible(m) {
                    if self.force(n, a, stack)? {
                        return Ok(false);
                    }
                }
                true
            }
            Exists(_, a) => {
                for d in crate::classical::mask_elems(ks.domains[m]) {
                    stack.push(d);
                    let r = self.force(m, a, stack);
                    stack.pop();
                    if r? {
                        return Ok(true);
                    }
                }
                false
            }
            Forall(_, a) => {
                for n in ks.accessible(m) {
                    for d in crate::classical::mask_elems(ks.domains[n]) {
                        stack.push(d);
                        let r = self.force(n, a, stack);
                        stack.pop();
                        if !r? {
                            return Ok(false);
                        }
                    }
                }
                true
            }
        })
    }
}

/// Which of Fitting's conditions on `f_F` failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceViolation {
    pub term: String,
    pub world: String,
    /// `i`: defined exactly where F's constants exist; `ii`: the value lies
    /// in the domain; `iii`: a forced existential is witnessed.
    pub property: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChoiceReport {
    pub terms: usize,
    pub violations: Vec<ChoiceViolation>,
}

impl ChoiceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check (i)–(iii) for every ε-term in `wc`.
pub fn validate_world_choice(ks: &KripkeStructure, wc: &WorldChoice) -> Result<ChoiceReport, IntuitionisticError> {
    let mut report = ChoiceReport { terms: wc.map.len(), violations: vec![] };
    for (t, values) in &wc.map {
        let Term::Eps(b, body) = t else {
            return Err(IntuitionisticError::Unsupported(format!("{t} is not an ε-term")));
        };
        if loose_bound_formula(body) > 1 {
            return Err(IntuitionisticError::Unsupported(format!("open ε-term {t}")));
        }
        let consts: Vec<Elem> = crate::syntax::function_symbols(body)
            .into_iter()
            .filter(|(_, a)| *a == 0)
            .filter_map(|(c, _)| ks.constants.get(&c).copied().or_else(|| ks.individual(c.as_str())))
            .collect();
        let exists = Formula::Exists(b.clone(), body.clone());
        let mut push = |m: World, property, detail: String| {
            report.violations.push(ChoiceViolation { term: t.to_string(), world: ks.worlds[m].clone(), property, detail })
        };
        for m in 0..ks.worlds.len() {
            let defined = consts.iter().all(|c| ks.domains[m] >> c & 1 == 1);
            let value = values.get(m).copied().flatten();
            match (defined, value) {
                (true, None) => push(m, "i", "no value where the formula is defined".into()),
                (false, Some(_)) => push(m, "i", "value where a constant of the formula is missing".into()),
                _ => {}
            }
            let Some(v) = value else { continue };
            if ks.domains[m] >> v & 1 == 0 {
                push(m, "ii", format!("{} is outside the domain", ks.individuals[v]));
                continue;
            }
            if !defined {
                continue;
            }
            let no_eps = WorldChoice::new();
            if kripke_force(ks, m, &exists, &Env::new(), &no_eps)? {
                let at = instantiate(body, &Term::constant(&ks.individuals[v]));
                if !kripke_force(ks, m, &at, &Env::new(), &no_eps)? {
                    push(m, "iii", format!("the existential is forced but not at {}", ks.individuals[v]));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn two_worlds() -> KripkeStructure {
        let mut ks = KripkeStructure::new(&["M0", "M1"], &["a", "b"]);
        ks.add_edge(0, 1);
        ks.set_domain(0, 0b01);
        ks.declare("F", 1);
        ks.set_true("F", 1, &[1]);
        ks
    }

    #[test]
    fn two_world_existential() {
        let ks = two_worlds();
        ks.validate().unwrap();
        let ex = parse_formula("exists x. F(x)").unwrap();
        let wc = WorldChoice::new();
        assert!(!kripke_force(&ks, 0, &ex, &Env::new(), &wc).unwrap());
        assert!(kripke_force(&ks, 1, &ex, &Env::new(), &wc).unwrap());
    }

    #[test]
    fn lem_fails_for_a_late_fact() {
        let mut ks = two_worlds();
        ks.set_true("F", 1, &[0]);
        let lem = parse_formula("F(x) or not F(x)").unwrap();
        let env = Env::from([(Symbol::new("x"), 0)]);
        let wc = WorldChoice::new();
        assert!(!kripke_force(&ks, 0, &lem, &env, &wc).unwrap());
        assert!(kripke_force(&ks, 1, &lem, &env, &wc).unwrap());
        let env_b = Env::from([(Symbol::new("x"), 1)]);
        assert!(matches!(kripke_force(&ks, 0, &lem, &env_b, &wc), Err(IntuitionisticError::OutsideDomain { .. })));
    }

    #[test]
    fn world_choice_properties() {
        let ks = two_worlds();
        let eps = crate::syntax::parse_term("eps x. F(x)").unwrap();
        let mut wc = WorldChoice::new();
        wc.set(&eps, 2, 0, 0);
        wc.set(&eps, 2, 1, 1);
        assert!(validate_world_choice(&ks, &wc).unwrap().passed());
        wc.set(&eps, 2, 1, 0);
        let r = validate_world_choice(&ks, &wc).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].property, "iii");
        wc.set(&eps, 2, 0, 1);
        let r = validate_world_choice(&ks, &wc).unwrap();
        assert_eq!(r.violations[0].property, "ii");
        assert!(validate_world_choice(&ks, &WorldChoice::new()).unwrap().passed());
    }

    #[test]
    fn monotonicity_is_checked() {
        let mut ks = two_worlds();
        ks.set_true("F", 0, &[0]);
        ks.predicates.get_mut("F").unwrap().holds[1][0] = false;
        assert!(matches!(ks.validate(), Err(IntuitionisticError::NotMonotone { .. })));
    }
}
