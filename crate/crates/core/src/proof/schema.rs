use std::fmt;

use crate::syntax::{instantiate, Binder, Formula, Term};

/// Kinds of schema arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Formula,
    /// `x. F` with `x` bound in `F`.
    Abstraction,
    Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Formula(Formula),
    /// Body uses `Bound(0)` for the abstracted variable.
    Abstraction(Binder, Formula),
    Term(Term),
}

impl Arg {
    pub fn kind(&self) -> ArgKind {
        match self {
            Arg::Formula(_) => ArgKind::Formula,
            Arg::Abstraction(..) => ArgKind::Abstraction,
            Arg::Term(_) => ArgKind::Term,
        }
    }

    pub(crate) fn map(&self, f: &dyn Fn(&Formula) -> Formula, t: &dyn Fn(&Term) -> Term) -> Arg {
        match self {
            Arg::Formula(a) => Arg::Formula(f(a)),
            Arg::Abstraction(b, body) => Arg::Abstraction(b.clone(), f(body)),
            Arg::Term(a) => Arg::Term(t(a)),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Formula(a) => write!(f, "[{a}]"),
            Arg::Term(t) => write!(f, "[{t}]"),
            Arg::Abstraction(b, body) => {
                // print through the quantifier so the hint is renamed consistently
                let q = Formula::Forall(b.clone(), Box::new(body.clone())).to_string();
                write!(f, "[{}]", q.strip_prefix("forall ").unwrap_or(&q))
            }
        }
    }
}

/// Axiom schemas of the Hilbert basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    /// `A → (B → A)`
    K,
    /// `(A → (B → C)) → ((A → B) → (A → C))`
    S,
    /// `A → (B → A ∧ B)`
    AndI,
    /// `A ∧ B → A`
    AndE1,
    /// `A ∧ B → B`
    AndE2,
    /// `A → A ∨ B`
    OrI1,
    /// `B → A ∨ B`
    OrI2,
    /// `(A → C) → ((B → C) → (A ∨ B → C))`
    OrE,
    /// `⊥ → A`
    Efq,
    /// `(A → ⊥) → ¬A`
    NegI,
    /// `¬A → (A → ⊥)`
    NegE,
    /// `¬¬A → A`
    Dne,
    /// `∀x A → A(t)`
    ForallElim,
    /// `A(t) → ∃x A`
    ExistsIntro,
    /// `t = t`
    EqRefl,
    /// `(s = t ∧ A(t)) → A(s)`
    EqSubst,
    /// `A(t) → A(ε_x A)`
    Eps,
    /// `∃x A → A(ε_x A)`
    EpsExists,
    /// `∀x(A ↔ B) → ε_x A = ε_x B`
    Eps2,
    /// `¬A(ε_x A) → ¬A(t)`
    EpsLeast,
    /// `ε_x A = t+1 → ¬A(t)`
    EpsSucc,
}

pub const ALL_SCHEMAS: [Schema; 21] = [
    Schema::K,
    Schema::S,
    Schema::AndI,
    Schema::AndE1,
    Schema::AndE2,
    Schema::OrI1,
    Schema::OrI2,
    Schema::OrE,
    Schema::Efq,
    Schema::NegI,
    Schema::NegE,
    Schema::Dne,
    Schema::ForallElim,
    Schema::ExistsIntro,
    Schema::EqRefl,
    Schema::EqSubst,
    Schema::Eps,
    Schema::EpsExists,
    Schema::Eps2,
    Schema::EpsLeast,
    Schema::EpsSucc,
];

impl Schema {
    pub fn name(self) -> &'static str {
        use Schema::*;
        match self {
            K => "k",
            S => "s",
            AndI => "and-i",
            AndE1 => "and-e1",
            AndE2 => "and-e2",
            OrI1 => "or-i1",
            OrI2 => "or-i2",
            OrE => "or-e",
            Efq => "efq",
            NegI => "neg-i",
            NegE => "neg-e",
            Dne => "dne",
            ForallElim => "forall-elim",
            ExistsIntro => "exists-intro",
            EqRefl => "eq-refl",
            EqSubst => "eq-subst",
            Eps => "eps",
            EpsExists => "eps-exists",
            Eps2 => "eps2",
            EpsLeast => "eps-least",
            EpsSucc => "eps-succ",
        }
    }

    pub fn from_name(name: &str) -> Option<Schema> {
        ALL_SCHEMAS.iter().copied().find(|s| s.name() == name)
    }

    pub fn kinds(self) -> &'static [ArgKind] {
        use ArgKind::{Abstraction as A, Formula as F, Term as T};
        use Schema::*;
        match self {
            K | AndI | AndE1 | AndE2 | OrI1 | OrI2 => &[F, F],
            S | OrE => &[F, F, F],
            Efq | NegI | NegE | Dne => &[F],
            ForallElim | ExistsIntro | Eps | EpsLeast | EpsSucc => &[A, T],
            EqRefl => &[T],
            EqSubst => &[A, T, T],
            EpsExists => &[A],
            Eps2 => &[A, A],
        }
    }

    /// Whether instances mention an ε-term built by the schema itself.
    pub fn is_epsilon(self) -> bool {
        matches!(self, Schema::Eps | Schema::EpsExists | Schema::Eps2 | Schema::EpsLeast | Schema::EpsSucc)
    }

    pub fn is_quantifier(self) -> bool {
        matches!(self, Schema::ForallElim | Schema::ExistsIntro | Schema::EpsExists | Schema::Eps2)
    }

    /// Build the instance. `None` when the arguments have the wrong kinds.
    pub fn instance(self, args: &[Arg]) -> Option<Formula> {
        use Formula as Fm;
        use Schema::*;
        if args.len() != self.kinds().len() || args.iter().zip(self.kinds()).any(|(a, k)| a.kind() != *k) {
            return None;
        }
        let f = |i: usize| match &args[i] {
            Arg::Formula(a) => a.clone(),
            _ => unreachable!("kinds checked"),
        };
        let t = |i: usize| match &args[i] {
            Arg::Term(a) => a.clone(),
            _ => unreachable!("kinds checked"),
        };
        let abs = |i: usize| match &args[i] {
            Arg::Abstraction(b, body) => (b.clone(), body.clone()),
            _ => unreachable!("kinds checked"),
        };
        let eps_of = |(b, body): (Binder, Fm)| Term::Eps(b, Box::new(body));
        Some(match self {
            K => Fm::implies(f(0), Fm::implies(f(1), f(0))),
            S => Fm::implies(
                Fm::implies(f(0), Fm::implies(f(1), f(2))),
                Fm::implies(Fm::implies(f(0), f(1)), Fm::implies(f(0), f(2))),
            ),
            AndI => Fm::implies(f(0), Fm::implies(f(1), Fm::and(f(0), f(1)))),
            AndE1 => Fm::implies(Fm::and(f(0), f(1)), f(0)),
            AndE2 => Fm::implies(Fm::and(f(0), f(1)), f(1)),
            OrI1 => Fm::implies(f(0), Fm::or(f(0), f(1))),
            OrI2 => Fm::implies(f(1), Fm::or(f(0), f(1))),
            OrE => Fm::implies(
                Fm::implies(f(0), f(2)),
                Fm::implies(Fm::implies(f(1), f(2)), Fm::implies(Fm::or(f(0), f(1)), f(2))),
            ),
            Efq => Fm::implies(Fm::False, f(0)),
            NegI => Fm::implies(Fm::implies(f(0), Fm::False), Fm::not(f(0))),
            NegE => Fm::implies(Fm::not(f(0)), Fm::implies(f(0), Fm::False)),
            Dne => Fm::implies(Fm::not(Fm::not(f(0))), f(0)),
            ForallElim => {
                let (b, body) = abs(0);
                Fm::implies(Fm::Forall(b, Box::new(body.clone())), instantiate(&body, &t(1)))
            }
            ExistsIntro => {
                let (b, body) = abs(0);
                Fm::implies(instantiate(&body, &t(1)), Fm::Exists(b, Box::new(body)))
            }
            EqRefl => Fm::eq(t(0), t(0)),
            EqSubst => {
                let (_, body) = abs(0);
                Fm::implies(Fm::and(Fm::eq(t(1), t(2)), instantiate(&body, &t(2))), instantiate(&body, &t(1)))
            }
            Eps => {
                let (b, body) = abs(0);
                let e = eps_of((b, body.clone()));
                Fm::implies(instantiate(&body, &t(1)), instantiate(&body, &e))
            }
            EpsExists => {
                let (b, body) = abs(0);
                let e = eps_of((b.clone(), body.clone()));
                Fm::implies(Fm::Exists(b, Box::new(body.clone())), instantiate(&body, &e))
            }
            Eps2 => {
                let (ba, a) = abs(0);
                let (bb, b) = abs(1);
                Fm::implies(
                    Fm::Forall(ba.clone(), Box::new(Fm::iff(a.clone(), b.clone()))),
                    Fm::eq(eps_of((ba, a)), eps_of((bb, b))),
                )
            }
            EpsLeast => {
                let (b, body) = abs(0);
                let e = eps_of((b, body.clone()));
                Fm::implies(Fm::not(instantiate(&body, &e)), Fm::not(instantiate(&body, &t(1))))
            }
            EpsSucc => {
                let (b, body) = abs(0);
                let e = eps_of((b, body.clone()));
                Fm::implies(Fm::eq(e, Term::succ(t(1))), Fm::not(instantiate(&body, &t(1))))
            }
        })
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term};

    fn abs(src: &str) -> Arg {
        let Formula::Forall(b, body) = parse_formula(&format!("forall {src}")).unwrap() else { panic!() };
        Arg::Abstraction(b, *body)
    }

    #[test]
    fn names_round_trip() {
        for s in ALL_SCHEMAS {
            assert_eq!(Schema::from_name(s.name()), Some(s));
        }
    }

    #[test]
    fn epsilon_instance() {
        let got = Schema::Eps.instance(&[abs("x. P(x)"), Arg::Term(parse_term("c").unwrap())]).unwrap();
        assert_eq!(got, parse_formula("P(c) -> P(eps x. P(x))").unwrap());
    }

    #[test]
    fn successor_instance() {
        let got = Schema::EpsSucc.instance(&[abs("x. not Q(x)"), Arg::Term(parse_term("t0").unwrap())]).unwrap();
        assert_eq!(got, parse_formula("(eps x. not Q(x)) = t0 + 1 -> not not Q(t0)").unwrap());
    }

    #[test]
    fn wrong_kinds() {
        assert!(Schema::K.instance(&[Arg::Term(parse_term("c").unwrap())]).is_none());
    }

    #[test]
    fn abstraction_display() {
        assert_eq!(abs("x. P(x) and Q").to_string(), "[x. P(x) and Q]");
    }
}
