use std::collections::BTreeSet;

use crate::syntax::{
    contains_eps, fresh_symbol, instantiate, shift_formula, used_names, Binder, Formula, Quantifier, Symbol,
    Term,
};

use super::TransformError;

/// A quantifier prefix over a quantifier-free matrix. In `matrix`,
/// `Bound(0)` is the last binder of `prefix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrenexForm {
    pub prefix: Vec<(Quantifier, Binder)>,
    pub matrix: Formula,
}

impl PrenexForm {
    pub fn to_formula(&self) -> Formula {
        self.prefix.iter().rev().fold(self.matrix.clone(), |acc, (q, b)| q.bind(b.clone(), acc))
    }

    /// The matrix with prefix variables exposed as free variables, named
    /// after their hints and kept distinct.
    pub fn open_matrix(&self) -> (Vec<Symbol>, Formula) {
        open_prefix(&self.to_formula())
    }
}

/// Strip all leading quantifiers, opening each to a fresh free variable.
pub fn open_prefix(f: &Formula) -> (Vec<Symbol>, Formula) {
    let mut taken: BTreeSet<Symbol> = used_names(f);
    let mut names = Vec::new();
    let mut cur = f.clone();
    while let Formula::Forall(b, body) | Formula::Exists(b, body) = &cur {
        let hint = b.hint().as_str();
        let name = if taken.contains(hint) { fresh_symbol(hint, &taken) } else { Symbol::new(hint) };
        taken.insert(name.clone());
        let next = instantiate(body, &Term::Var(name.clone()));
        names.push(name);
        cur = next;
    }
    (names, cur)
}

/// Classical prenex normal form. Quantifiers are pulled in source order,
/// left operand before right; they flip under negation and in the
/// antecedent of an implication.
pub fn prenex(phi: &Formula) -> Result<PrenexForm, TransformError> {
    if contains_eps(phi) {
        return Err(TransformError::ContainsEpsilon);
    }
    let (prefix, matrix) = pnf(phi);
    Ok(PrenexForm { prefix, matrix })
}

type Prefix = Vec<(Quantifier, Binder)>;

fn dual(p: Prefix) -> Prefix {
    p.into_iter().map(|(q, b)| (q.dual(), b)).collect()
}

fn combine(pa: Prefix, ma: Formula, pb: Prefix, mb: Formula) -> (Prefix, Formula, Formula) {
    let (na, nb) = (pa.len() as isize, pb.len());
    let ma = shift_formula(&ma, nb as isize, 0);
    let mb = shift_formula(&mb, na, nb);
    let mut prefix = pa;
    prefix.extend(pb);
    (prefix, ma, mb)
}

fn pnf(f: &Formula) -> (Prefix, Formula) {
    use Formula::*;
    match f {
        True | False | Pred(..) | Eq(..) => (Vec::new(), f.clone()),
        Not(a) => {
            let (p, m) = pnf(a);
            (dual(p), Formula::not(m))
        }
        And(a, b) | Or(a, b) | Implies(a, b) => {
            let (pa, ma) = pnf(a);
            let (pb, mb) = pnf(b);
            let pa = if matches!(f, Implies(..)) { dual(pa) } else { pa };
            let (prefix, ma, mb) = combine(pa, ma, pb, mb);
            let m = match f {
                And(..) => Formula::and(ma, mb),
                Or(..) => Formula::or(ma, mb),
                _ => Formula::implies(ma, mb),
            };
            (prefix, m)
        }
        Forall(x, a) | Exists(x, a) => {
            let q = if matches!(f, Forall(..)) { Quantifier::Forall } else { Quantifier::Exists };
            let (pa, m) = pnf(a);
            let mut prefix = vec![(q, x.clone())];
            prefix.extend(pa);
            (prefix, m)
        }
    }
}

/// Split a formula already in prenex form.
pub fn split_prenex(f: &Formula) -> Result<PrenexForm, TransformError> {
    let mut prefix = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Forall(b, body) => {
                prefix.push((Quantifier::Forall, b.clone()));
                cur = body;
            }
            Formula::Exists(b, body) => {
                prefix.push((Quantifier::Exists, b.clone()));
                cur = body;
            }
            _ => break,
        }
    }
    if crate::syntax::quantifier_count(cur) > 0 {
        return Err(TransformError::NotPrenex(f.to_string()));
    }
    Ok(PrenexForm { prefix, matrix: cur.clone() })
}

/// Quantifier-free matrices with their variables exposed.
pub fn matrices(axioms: &[Formula]) -> Vec<Formula> {
    axioms.iter().map(|a| open_prefix(a).1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn antecedent_flips() {
        let p = prenex(&f("(forall x. P(x)) -> Q")).unwrap();
        assert_eq!(p.to_formula(), f("exists x. P(x) -> Q"));
    }

    #[test]
    fn transitivity_axiom() {
        let p = prenex(&f("forall x. forall y. forall z. x < y and y < z -> x < z")).unwrap();
        assert_eq!(p.prefix.len(), 3);
        assert!(p.prefix.iter().all(|(q, _)| *q == Quantifier::Forall));
        assert_eq!(p.open_matrix().1.to_string(), "x < y and y < z -> x < z");
    }

    #[test]
    fn both_sides_in_order() {
        let p = prenex(&f("(exists x. P(x)) and (forall y. exists z. R(y, z))")).unwrap();
        let qs: Vec<Quantifier> = p.prefix.iter().map(|(q, _)| *q).collect();
        assert_eq!(qs, vec![Quantifier::Exists, Quantifier::Forall, Quantifier::Exists]);
        assert_eq!(p.to_formula(), f("exists x. forall y. exists z. P(x) and R(y, z)"));
    }

    #[test]
    fn quantifier_free_and_eps_input() {
        let p = prenex(&f("P(c) or Q")).unwrap();
        assert!(p.prefix.is_empty());
        assert_eq!(p.matrix, f("P(c) or Q"));
        assert!(matches!(prenex(&f("P(eps x. P(x))")), Err(TransformError::ContainsEpsilon)));
    }

    #[test]
    fn matrices_expose_variables() {
        let ms = matrices(&[f("forall x. not x < x"), f("forall x. x < g(x)"), f("P(c)")]);
        assert_eq!(ms[0].to_string(), "not x < x");
        assert_eq!(ms[1].to_string(), "x < g(x)");
        assert_eq!(ms[2], f("P(c)"));
    }
}
