use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{
    abstract_var, contains_eps, fresh_symbol, instantiate, map_formula, map_term, used_names, Binder, Formula,
    Quantifier, Symbol, Term,
};

use super::prenex::split_prenex;
use super::TransformError;

/// Defining ε-term of an introduced symbol, over its parameters as free
/// variables: `g(x) = ε_y B(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemDefinition {
    pub params: Vec<Symbol>,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemResolution {
    pub axioms: Vec<Formula>,
    /// Introduced symbols in order of introduction, with arities.
    pub introduced: Vec<(Symbol, usize)>,
    pub definitions: BTreeMap<Symbol, SkolemDefinition>,
}

impl SkolemResolution {
    /// Replace every introduced symbol by its defining ε-term.
    pub fn unfold(&self, f: &Formula) -> Formula {
        map_formula(f, 0, &mut |t, _| self.unfold_term(t))
    }

    fn unfold_term(&self, t: &Term) -> Option<Term> {
        let Term::App(s, args) = t else { return None };
        let def = self.definitions.get(s)?;
        let args: Vec<Term> = args.iter().map(|a| map_term(a, 0, &mut |u, _| self.unfold_term(u))).collect();
        let mut out = def.term.clone();
        // parameters are fresh names, so sequential substitution is simultaneous
        for (p, a) in def.params.iter().zip(&args) {
            out = crate::syntax::substitute_in_term(&out, p, a);
        }
        Some(out)
    }
}

/// Eliminate existential quantifiers from prenex, ε-free sentences.
/// `∃x∀y B(x,y)` gives `∀y B(s,y)` with `s = ε_x ∀y B(x,y)`; `∀x∃y B(x,y)`
/// gives `∀x B(x, g(x))` with `g(x) = ε_y B(x,y)`.
pub fn skolem_resolve(axioms: &[Formula]) -> Result<SkolemResolution, TransformError> {
    let mut taken: BTreeSet<Symbol> = BTreeSet::new();
    for a in axioms {
        if contains_eps(a) {
            return Err(TransformError::ContainsEpsilon);
        }
        split_prenex(a)?;
        taken.extend(used_names(a));
    }
    let mut res = SkolemResolution { axioms: Vec::new(), introduced: Vec::new(), definitions: BTreeMap::new() };
    for a in axioms {
        let pf = split_prenex(a)?;
        let mut universals: Vec<(Symbol, Binder)> = Vec::new();
        let mut local = taken.clone();
        let mut cur = pf.to_formula();
        for (q, b) in &pf.prefix {
            let body = match &cur {
                Formula::Forall(_, body) | Formula::Exists(_, body) => (**body).clone(),
                _ => unreachable!("prefix and formula agree"),
            };
            match q {
                Quantifier::Forall => {
                    let hint = b.hint().as_str();
                    let v = if local.contains(hint) { fresh_symbol(hint, &local) } else { Symbol::new(hint) };
                    local.insert(v.clone());
                    cur = instantiate(&body, &Term::Var(v.clone()));
                    universals.push((v, b.clone()));
                }
                Quantifier::Exists => {
                    let def = Term::Eps(b.clone(), Box::new(body.clone()));
                    let (name, witness) = if universals.is_empty() {
                        let s = fresh_symbol("s", &local);
                        (s.clone(), Term::App(s, Vec::new()))
                    } else {
                        let g = fresh_symbol("g", &local);
                        let args = universals.iter().map(|(v, _)| Term::Var(v.clone())).collect();
                        (g.clone(), Term::App(g, args))
                    };
                    taken.insert(name.clone());
                    local.insert(name.clone());
                    res.introduced.push((name.clone(), universals.len()));
                    res.definitions.insert(
                        name,
                        SkolemDefinition { params: universals.iter().map(|(v, _)| v.clone()).collect(), term: def },
                    );
                    cur = instantiate(&body, &witness);
                }
            }
        }
        for (v, b) in universals.iter().rev() {
            cur = Formula::Forall(b.clone(), Box::new(abstract_var(&cur, v)));
        }
        res.axioms.push(cur);
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn order_axioms() {
        let a4 = f("forall x. exists y. x < y");
        let a5 = f("exists x. forall y. x = y or x < y");
        let a1 = f("forall x. not x < x");
        let r = skolem_resolve(&[a1.clone(), a4, a5]).unwrap();
        assert_eq!(r.axioms[0], a1);
        assert_eq!(r.axioms[1].to_string(), "forall x. x < g(x)");
        assert_eq!(r.axioms[2].to_string(), "forall y. s = y or s < y");
        assert_eq!(r.introduced, vec![(Symbol::new("g"), 1), (Symbol::new("s"), 0)]);
        let g = &r.definitions[&Symbol::new("g")];
        assert_eq!(g.params.len(), 1);
        assert_eq!(g.params, vec![Symbol::new("x")]);
        assert_eq!(g.term.to_string(), "eps y. x < y");
        assert_eq!(r.definitions[&Symbol::new("s")].term.to_string(), "eps x. forall y. x = y or x < y");
    }

    #[test]
    fn unfold_restores_eps_form() {
        let r = skolem_resolve(&[f("forall x. exists y. x < y")]).unwrap();
        assert_eq!(r.unfold(&r.axioms[0]).to_string(), "forall x. x < (eps y. x < y)");
    }

    #[test]
    fn rejects_non_prenex() {
        assert!(matches!(skolem_resolve(&[f("P(c) and exists x. P(x)")]), Err(TransformError::NotPrenex(_))));
    }
}
