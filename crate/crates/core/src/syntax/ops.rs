//! Structural operations on terms and formulas: shifting, instantiation,
//! substitution, ε-rank, properness and symbol collection.

use std::collections::BTreeSet;

use super::ast::{Binder, Formula, Term};
use super::symbol::Symbol;
use super::SyntaxError;

/// Rebuild a term, letting `g` replace any subterm. `g` sees each subterm
/// together with the number of binders above it; when it returns `Some`,
/// the replacement is used as is and not visited further.
pub fn map_term<G>(t: &Term, depth: usize, g: &mut G) -> Term
where
    G: FnMut(&Term, usize) -> Option<Term>,
{
    if let Some(r) = g(t, depth) {
        return r;
    }
    match t {
        Term::Bound(_) | Term::Var(_) => t.clone(),
        Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| map_term(a, depth, g)).collect()),
        Term::Eps(b, body) => Term::Eps(b.clone(), Box::new(map_formula(body, depth + 1, g))),
    }
}

/// Formula counterpart of [`map_term`].
pub fn map_formula<G>(f: &Formula, depth: usize, g: &mut G) -> Formula
where
    G: FnMut(&Term, usize) -> Option<Term>,
{
    use Formula::*;
    match f {
        True => True,
        False => False,
        Pred(p, args) => Pred(p.clone(), args.iter().map(|a| map_term(a, depth, g)).collect()),
        Eq(a, b) => Eq(map_term(a, depth, g), map_term(b, depth, g)),
        Not(a) => Not(Box::new(map_formula(a, depth, g))),
        And(a, b) => And(Box::new(map_formula(a, depth, g)), Box::new(map_formula(b, depth, g))),
        Or(a, b) => Or(Box::new(map_formula(a, depth, g)), Box::new(map_formula(b, depth, g))),
        Implies(a, b) => Implies(Box::new(map_formula(a, depth, g)), Box::new(map_formula(b, depth, g))),
        Forall(x, a) => Forall(x.clone(), Box::new(map_formula(a, depth + 1, g))),
        Exists(x, a) => Exists(x.clone(), Box::new(map_formula(a, depth + 1, g))),
    }
}

/// Visit every subterm (pre-order) with its binder depth.
pub fn visit_term<G>(t: &Term, depth: usize, g: &mut G)
where
    G: FnMut(&Term, usize),
{
    g(t, depth);
    match t {
        Term::Bound(_) | Term::Var(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| visit_term(a, depth, g)),
        Term::Eps(_, body) => visit_formula_terms(body, depth + 1, g),
    }
}

pub fn visit_formula_terms<G>(f: &Formula, depth: usize, g: &mut G)
where
    G: FnMut(&Term, usize),
{
    use Formula::*;
    match f {
        True | False => {}
        Pred(_, args) => args.iter().for_each(|a| visit_term(a, depth, g)),
        Eq(a, b) => {
            visit_term(a, depth, g);
            visit_term(b, depth, g);
        }
        Not(a) => visit_formula_terms(a, depth, g),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            visit_formula_terms(a, depth, g);
            visit_formula_terms(b, depth, g);
        }
        Forall(_, a) | Exists(_, a) => visit_formula_terms(a, depth + 1, g),
    }
}

/// Visit every subformula, including ε-bodies, pre-order.
pub fn visit_subformulas<G>(f: &Formula, g: &mut G)
where
    G: FnMut(&Formula),
{
    g(f);
    use Formula::*;
    match f {
        True | False => {}
        Pred(_, args) => args.iter().for_each(|a| visit_term_formulas(a, g)),
        Eq(a, b) => {
            visit_term_formulas(a, g);
            visit_term_formulas(b, g);
        }
        Not(a) | Forall(_, a) | Exists(_, a) => visit_subformulas(a, g),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            visit_subformulas(a, g);
            visit_subformulas(b, g);
        }
    }
}

fn visit_term_formulas<G>(t: &Term, g: &mut G)
where
    G: FnMut(&Formula),
{
    match t {
        Term::Bound(_) | Term::Var(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| visit_term_formulas(a, g)),
        Term::Eps(_, body) => visit_subformulas(body, g),
    }
}

/// Add `d` to every bound index that points past `cutoff` enclosing binders.
pub fn shift_term(t: &Term, d: isize, cutoff: usize) -> Term {
    if d == 0 {
        return t.clone();
    }
    map_term(t, cutoff, &mut |s, depth| match s {
        Term::Bound(i) if *i >= depth => Some(Term::Bound((*i as isize + d) as usize)),
        _ => None,
    })
}

pub fn shift_formula(f: &Formula, d: isize, cutoff: usize) -> Formula {
    if d == 0 {
        return f.clone();
    }
    map_formula(f, cutoff, &mut |s, depth| match s {
        Term::Bound(i) if *i >= depth => Some(Term::Bound((*i as isize + d) as usize)),
        _ => None,
    })
}

/// Open a binder body: `Bound(0)` becomes `t`, other loose indices drop by one.
pub fn instantiate(body: &Formula, t: &Term) -> Formula {
    map_formula(body, 0, &mut |s, depth| match s {
        Term::Bound(i) if *i == depth => Some(shift_term(t, depth as isize, 0)),
        Term::Bound(i) if *i > depth => Some(Term::Bound(i - 1)),
        _ => None,
    })
}

pub fn instantiate_term(body: &Term, t: &Term) -> Term {
    map_term(body, 0, &mut |s, depth| match s {
        Term::Bound(i) if *i == depth => Some(shift_term(t, depth as isize, 0)),
        Term::Bound(i) if *i > depth => Some(Term::Bound(i - 1)),
        _ => None,
    })
}

/// Inverse of [`instantiate`]: every occurrence of `target` becomes the
/// new binder's variable. Existing loose indices move up by one.
pub fn abstract_term(f: &Formula, target: &Term) -> Formula {
    let lifted = shift_formula(f, 1, 0);
    let target = shift_term(target, 1, 0);
    map_formula(&lifted, 0, &mut |s, depth| {
        if *s == shift_term(&target, depth as isize, 0) {
            Some(Term::Bound(depth))
        } else {
            None
        }
    })
}

/// Abstract the free variable `x`.
pub fn abstract_var(f: &Formula, x: &Symbol) -> Formula {
    abstract_term(f, &Term::Var(x.clone()))
}

/// Replace every occurrence of the free variable `x` by `t`. Bound variables
/// are indices, so capture cannot happen.
pub fn substitute(phi: &Formula, x: &Symbol, t: &Term) -> Formula {
    map_formula(phi, 0, &mut |s, depth| match s {
        Term::Var(v) if v == x => Some(shift_term(t, depth as isize, 0)),
        _ => None,
    })
}

pub fn substitute_in_term(u: &Term, x: &Symbol, t: &Term) -> Term {
    map_term(u, 0, &mut |s, depth| match s {
        Term::Var(v) if v == x => Some(shift_term(t, depth as isize, 0)),
        _ => None,
    })
}

/// Simultaneous substitution of free variables.
pub fn subst_many(phi: &Formula, map: &[(Symbol, Term)]) -> Formula {
    map_formula(phi, 0, &mut |s, depth| match s {
        Term::Var(v) => map
            .iter()
            .find(|(x, _)| x == v)
            .map(|(_, t)| shift_term(t, depth as isize, 0)),
        _ => None,
    })
}

/// Replace occurrences of `from` by `to`, both read at the top level.
pub fn replace_term(phi: &Formula, from: &Term, to: &Term) -> Formula {
    map_formula(phi, 0, &mut |s, depth| {
        if *s == shift_term(from, depth as isize, 0) {
            Some(shift_term(to, depth as isize, 0))
        } else {
            None
        }
    })
}

pub fn replace_term_in_term(u: &Term, from: &Term, to: &Term) -> Term {
    map_term(u, 0, &mut |s, depth| {
        if *s == shift_term(from, depth as isize, 0) {
            Some(shift_term(to, depth as isize, 0))
        } else {
            None
        }
    })
}

pub fn free_vars(f: &Formula) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    visit_formula_terms(f, 0, &mut |t, _| {
        if let Term::Var(v) = t {
            out.insert(v.clone());
        }
    });
    out
}

pub fn free_vars_term(t: &Term) -> BTreeSet<Symbol> {
    let mut out = BTreeSet::new();
    visit_term(t, 0, &mut |s, _| {
        if let Term::Var(v) = s {
            out.insert(v.clone());
        }
    });
    out
}

/// Number of enclosing binders a term needs: 0 means no loose indices.
pub fn loose_bound_term(t: &Term) -> usize {
    let mut m = 0;
    visit_term(t, 0, &mut |s, depth| {
        if let Term::Bound(i) = s {
            if *i >= depth {
                m = m.max(i - depth + 1);
            }
        }
    });
    m
}

pub fn loose_bound_formula(f: &Formula) -> usize {
    let mut m = 0;
    visit_formula_terms(f, 0, &mut |s, depth| {
        if let Term::Bound(i) = s {
            if *i >= depth {
                m = m.max(i - depth + 1);
            }
        }
    });
    m
}

/// No free variables and no dangling indices.
pub fn is_closed_term(t: &Term) -> bool {
    free_vars_term(t).is_empty() && loose_bound_term(t) == 0
}

pub fn is_sentence(f: &Formula) -> bool {
    free_vars(f).is_empty() && loose_bound_formula(f) == 0
}

pub fn epsilon_rank_term(t: &Term) -> usize {
    match t {
        Term::Bound(_) | Term::Var(_) => 0,
        Term::App(_, args) => args.iter().map(epsilon_rank_term).max().unwrap_or(0),
        Term::Eps(_, body) => 1 + epsilon_rank(body),
    }
}

/// Maximum nesting depth of ε-binders.
pub fn epsilon_rank(f: &Formula) -> usize {
    use Formula::*;
    match f {
        True | False => 0,
        Pred(_, args) => args.iter().map(epsilon_rank_term).max().unwrap_or(0),
        Eq(a, b) => epsilon_rank_term(a).max(epsilon_rank_term(b)),
        Not(a) | Forall(_, a) | Exists(_, a) => epsilon_rank(a),
        And(a, b) | Or(a, b) | Implies(a, b) => epsilon_rank(a).max(epsilon_rank(b)),
    }
}

/// Whether `t` mentions the binder `idx` levels above it.
fn mentions_index(t: &Term, idx: usize) -> bool {
    let mut found = false;
    visit_term(t, 0, &mut |s, depth| {
        if let Term::Bound(i) = s {
            found |= *i == idx + depth;
        }
    });
    found
}

/// Rank counting only subordinate nesting: an ε-subterm raises the rank of
/// an enclosing `ε_x` only when it contains `x`. `ε_x A(x, ε_y B(y))` has
/// subordination rank 1 and nesting rank 2.
pub fn subordination_rank_term(t: &Term) -> usize {
    let mut best = 0;
    visit_term(t, 0, &mut |s, _| {
        if let Term::Eps(_, body) = s {
            let mut inner = 0;
            visit_formula_terms(body, 0, &mut |u, depth| {
                if u.is_eps() && mentions_index(u, depth) {
                    inner = inner.max(subordination_rank_term(u));
                }
            });
            best = best.max(1 + inner);
        }
    });
    best
}

pub fn subordination_rank(f: &Formula) -> usize {
    let mut best = 0;
    visit_formula_terms(f, 0, &mut |t, _| {
        if t.is_eps() {
            best = best.max(subordination_rank_term(t));
        }
    });
    best
}

/// A formula is proper when every ε-subterm is closed: no variable, free or
/// bound by an enclosing quantifier, reaches inside an ε-body.
pub fn is_proper(f: &Formula) -> bool {
    let mut ok = true;
    visit_formula_terms(f, 0, &mut |t, _| {
        if ok && t.is_eps() && !is_closed_term(t) {
            ok = false;
        }
    });
    ok
}

pub fn is_proper_term(t: &Term) -> bool {
    let mut ok = true;
    visit_term(t, 0, &mut |s, _| {
        if ok && s.is_eps() && !is_closed_term(s) {
            ok = false;
        }
    });
    ok
}

pub fn contains_eps(f: &Formula) -> bool {
    let mut found = false;
    visit_formula_terms(f, 0, &mut |t, _| found |= t.is_eps());
    found
}

pub fn contains_eps_term(t: &Term) -> bool {
    let mut found = false;
    visit_term(t, 0, &mut |s, _| found |= s.is_eps());
    found
}

/// Closed ε-subterms in order of first occurrence (outer before inner).
pub fn closed_eps_subterms(f: &Formula) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    visit_formula_terms(f, 0, &mut |t, _| {
        if t.is_eps() && is_closed_term(t) && !out.contains(t) {
            out.push(t.clone());
        }
    });
    out
}

pub fn closed_eps_subterms_term(t: &Term) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    visit_term(t, 0, &mut |s, _| {
        if s.is_eps() && is_closed_term(s) && !out.contains(s) {
            out.push(s.clone());
        }
    });
    out
}

/// Whether `needle` (a closed term) occurs in `f`.
pub fn occurs_in(f: &Formula, needle: &Term) -> bool {
    let mut found = false;
    visit_formula_terms(f, 0, &mut |t, depth| {
        if !found && *t == shift_term(needle, depth as isize, 0) {
            found = true;
        }
    });
    found
}

pub fn occurs_in_term(u: &Term, needle: &Term) -> bool {
    let mut found = false;
    visit_term(u, 0, &mut |t, depth| {
        if !found && *t == shift_term(needle, depth as isize, 0) {
            found = true;
        }
    });
    found
}

pub fn quantifier_count(f: &Formula) -> usize {
    let mut n = 0;
    visit_subformulas(f, &mut |g| {
        if g.is_quantifier() {
            n += 1;
        }
    });
    n
}

/// Function symbols (with arity) used anywhere, numerals included.
pub fn function_symbols(f: &Formula) -> BTreeSet<(Symbol, usize)> {
    let mut out = BTreeSet::new();
    visit_formula_terms(f, 0, &mut |t, _| {
        if let Term::App(s, args) = t {
            out.insert((s.clone(), args.len()));
        }
    });
    out
}

pub fn predicate_symbols(f: &Formula) -> BTreeSet<(Symbol, usize)> {
    let mut out = BTreeSet::new();
    visit_subformulas(f, &mut |g| {
        if let Formula::Pred(p, args) = g {
            out.insert((p.clone(), args.len()));
        }
    });
    out
}

/// All names in use, for fresh-name generation.
pub fn used_names(f: &Formula) -> BTreeSet<Symbol> {
    let mut out = free_vars(f);
    out.extend(function_symbols(f).into_iter().map(|(s, _)| s));
    out.extend(predicate_symbols(f).into_iter().map(|(s, _)| s));
    out
}

/// `ε_x ¬φ(x)`: the generic counterexample of φ.
pub fn make_tau(phi: &Formula, x: &Symbol) -> Result<Term, SyntaxError> {
    if !free_vars(phi).contains(x) {
        return Err(SyntaxError::NotFree(x.to_string()));
    }
    let body = abstract_var(&Formula::not(phi.clone()), x);
    Ok(Term::Eps(Binder(x.clone()), Box::new(body)))
}

/// `ε_x φ(x)` for a free variable `x`.
pub fn make_eps(phi: &Formula, x: &Symbol) -> Result<Term, SyntaxError> {
    if !free_vars(phi).contains(x) {
        return Err(SyntaxError::NotFree(x.to_string()));
    }
    Ok(Term::Eps(Binder(x.clone()), Box::new(abstract_var(phi, x))))
}

/// An η-term `η_x body`. Kept out of the term language; it exists to state
/// the reduction of ε to η.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaTerm {
    pub binder: Binder,
    /// Body with `Bound(0)` for the η-variable.
    pub body: Formula,
}

impl EtaTerm {
    /// The body read as a formula in the free variable `x`.
    pub fn open(&self, x: &Symbol) -> Formula {
        instantiate(&self.body, &Term::Var(x.clone()))
    }
}

/// `η_x(∃y φ(y) ⇒ φ(x))`.
pub fn eta_expansion(phi: &Formula, x: &Symbol) -> Result<EtaTerm, SyntaxError> {
    if !free_vars(phi).contains(x) {
        return Err(SyntaxError::NotFree(x.to_string()));
    }
    let inner = abstract_var(phi, x);
    // the printer renames the hint if it clashes
    let ex = Formula::Exists(Binder::new("y"), Box::new(inner));
    let body = Formula::implies(ex, phi.clone());
    Ok(EtaTerm { binder: Binder(x.clone()), body: abstract_var(&body, x) })
}

/// `prefix`, `prefix1`, `prefix2`, ... avoiding `taken`.
pub fn fresh_symbol(prefix: &str, taken: &BTreeSet<Symbol>) -> Symbol {
    if !taken.contains(prefix) {
        return Symbol::new(prefix);
    }
    (1..)
        .map(|i| format!("{prefix}{i}"))
        .find(|n| !taken.contains(n.as_str()))
        .map(Symbol::from)
        .expect("unbounded range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: Term) -> Formula {
        Formula::pred("P", vec![t])
    }

    #[test]
    fn instantiate_shifts_under_binders() {
        // exists y. R(x0, y) with x0 = Bound(1) at depth 1, opened with an ε-term
        let body = Formula::exists("y", Formula::pred("R", vec![Term::Bound(1), Term::Bound(0)]));
        let e = Term::eps("z", p(Term::Bound(0)));
        let got = instantiate(&body, &e);
        let want = Formula::exists("y", Formula::pred("R", vec![e.clone(), Term::Bound(0)]));
        assert_eq!(got, want);
    }

    #[test]
    fn abstract_then_instantiate_is_identity() {
        let f = Formula::and(p(Term::var("x")), Formula::exists("y", Formula::eq(Term::Bound(0), Term::var("x"))));
        let a = abstract_var(&f, &Symbol::new("x"));
        assert_eq!(instantiate(&a, &Term::var("x")), f);
    }

    #[test]
    fn substitution_into_eps_body() {
        // x = eps y. (y = x)  with x := c
        let f = Formula::eq(Term::var("x"), Term::eps("y", Formula::eq(Term::Bound(0), Term::var("x"))));
        let g = substitute(&f, &Symbol::new("x"), &Term::constant("c"));
        let want = Formula::eq(Term::constant("c"), Term::eps("y", Formula::eq(Term::Bound(0), Term::constant("c"))));
        assert_eq!(g, want);
        assert!(!is_proper(&f));
        assert!(is_proper(&g));
    }

    #[test]
    fn rank_counts_nesting() {
        let inner = Term::eps("y", Formula::pred("B", vec![Term::Bound(0)]));
        let outer = Term::eps("x", Formula::pred("A", vec![Term::Bound(0), inner]));
        assert_eq!(epsilon_rank_term(&outer), 2);
        assert_eq!(epsilon_rank(&p(Term::constant("c"))), 0);
    }

    #[test]
    fn subordination_ignores_closed_subterms() {
        let inner = Term::eps("y", Formula::pred("B", vec![Term::Bound(0)]));
        let outer = Term::eps("x", Formula::pred("A", vec![Term::Bound(0), inner]));
        assert_eq!(subordination_rank_term(&outer), 1);
        let dep = Term::eps("y", Formula::pred("R", vec![Term::Bound(1), Term::Bound(0)]));
        let outer = Term::eps("x", Formula::pred("A", vec![Term::Bound(0), dep]));
        assert_eq!(subordination_rank_term(&outer), 2);
    }

    #[test]
    fn bound_occurrence_inside_eps_is_improper() {
        let f = Formula::forall("x", Formula::eq(Term::Bound(0), Term::eps("y", Formula::eq(Term::Bound(0), Term::Bound(1)))));
        assert!(!is_proper(&f));
        let g = p(Term::eps("y", Formula::pred("Q", vec![Term::Bound(0)])));
        assert!(is_proper(&g));
    }

    #[test]
    fn tau_and_eta() {
        let x = Symbol::new("x");
        let f = p(Term::var("x"));
        assert_eq!(make_tau(&f, &x).unwrap(), Term::eps("x", Formula::not(p(Term::Bound(0)))));
        assert!(make_tau(&f, &Symbol::new("z")).is_err());
        let eta = eta_expansion(&f, &x).unwrap();
        let want = Formula::implies(Formula::exists("y", p(Term::Bound(0))), p(Term::Bound(0)));
        assert_eq!(eta.body, want);
    }

    #[test]
    fn replace_closed_eps_everywhere() {
        let e = Term::eps("y", Formula::pred("B", vec![Term::Bound(0)]));
        let f = Formula::exists("z", Formula::pred("R", vec![Term::Bound(0), e.clone()]));
        let g = replace_term(&f, &e, &Term::constant("a0"));
        assert!(!contains_eps(&g));
        assert!(occurs_in(&f, &e));
    }
}
