use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;

use crate::syntax::{parse_formula, Formula, Symbol, Term};
use crate::transform::{universal_to_epsilon, Mode};

use super::choice::ChoiceFunction;
use super::eval::{eval_sentence, eval_term, extension, mask_names, Valuation};
use super::model::FiniteModel;

/// Finite stand-in for a fragment of an ordered field: the grid
/// `{p/q : 1 ≤ q ≤ cap, |p| ≤ q}` together with the halves of its positive
/// points. `Grid` marks the grid, `Pos` the positive elements and
/// `AbsLe(y, r)` holds when `|y| ≤ r`. The halves serve as the `r` in the
/// Archimedean comparison, so that the least positive grid point is not
/// vacuously below every positive element.
pub fn infinitesimal_model(cap: i64) -> FiniteModel {
    let mut grid = BTreeSet::new();
    for q in 1..=cap {
        for p in -q..=q {
            grid.insert(Rational64::new(p, q));
        }
    }
    let halves: BTreeSet<Rational64> =
        grid.iter().filter(|r| **r > Rational64::from(0)).map(|r| r / 2).filter(|r| !grid.contains(r)).collect();
    let mut all: Vec<Rational64> = grid.iter().chain(halves.iter()).copied().collect();
    all.sort();
    let names = all.iter().map(|r| r.to_string()).collect();
    let mut m = FiniteModel::new(names).expect("cap keeps the universe small");
    let zero = Rational64::from(0);
    m.set_predicate_fn("Grid", 1, |a| grid.contains(&all[a[0]]));
    m.set_predicate_fn("Pos", 1, |a| all[a[0]] > zero);
    m.set_predicate_fn("AbsLe", 2, |a| {
        let y = all[a[0]];
        (if y < zero { -y } else { y }) <= all[a[1]]
    });
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitesimalReport {
    pub cap: i64,
    pub universe: usize,
    /// Extension of ¬G: nonzero grid points below every positive element.
    pub extension: Vec<String>,
    pub null_term: bool,
    pub eps_value: String,
    pub universe_choice: String,
    /// The ε-translation of the Archimedean axiom.
    pub translated_axiom: String,
    pub translated_holds: bool,
    /// Extension once the `y ≠ 0` conjunct is dropped.
    pub extension_with_zero: Vec<String>,
}

impl InfinitesimalReport {
    pub fn passed(&self) -> bool {
        self.extension.is_empty() && self.null_term && self.translated_holds && self.extension_with_zero == ["0"]
    }
}

fn not_g(with_nonzero: bool) -> Formula {
    let src = if with_nonzero {
        "Grid(y) and y != 0 and forall r. Pos(r) -> AbsLe(y, r)"
    } else {
        "Grid(y) and forall r. Pos(r) -> AbsLe(y, r)"
    };
    parse_formula(src).expect("fixed source")
}

/// `cap` is clamped to `2..=6` so the universe stays within 64 elements.
pub fn infinitesimal_null_demo(cap: i64) -> InfinitesimalReport {
    let cap = cap.clamp(2, 6);
    let m = infinitesimal_model(cap);
    let cf = ChoiceFunction::Min;
    let ng = not_g(true);
    let ext = extension(&ng, &m, &cf).expect("one free variable");
    let y = Symbol::new("y");
    // G(y) is ¬¬G(y); the Archimedean axiom is ∀y G(y)
    let g = Formula::not(ng.clone());
    let axiom = Formula::Forall(crate::syntax::Binder(y.clone()), Box::new(crate::syntax::abstract_var(&g, &y)));
    let translated = universal_to_epsilon(&axiom, Mode::Classical).expect("universal");
    let tau = crate::syntax::make_tau(&g, &y).expect("y is free");
    let env = Valuation::new();
    let eps = eval_term(&tau, &m, &cf, &env).expect("closed");
    let whole = eval_term(&Term::eps("x", Formula::eq(Term::Bound(0), Term::Bound(0))), &m, &cf, &env).expect("closed");
    InfinitesimalReport {
        cap,
        universe: m.size(),
        extension: mask_names(&m, ext),
        null_term: ext == 0 && eps == whole,
        eps_value: m.name(eps).to_string(),
        universe_choice: m.name(whole).to_string(),
        translated_holds: eval_sentence(&translated, &m, &cf).expect("closed"),
        translated_axiom: translated.to_string(),
        extension_with_zero: mask_names(&m, extension(&not_g(false), &m, &cf).expect("one free variable")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_infinitesimals_on_the_grid() {
        for cap in 2..=6 {
            let r = infinitesimal_null_demo(cap);
            assert!(r.passed(), "{r:?}");
            assert!(r.universe <= 64);
        }
    }

    #[test]
    fn cap_four() {
        let r = infinitesimal_null_demo(4);
        assert!(r.extension.is_empty());
        assert_eq!(r.extension_with_zero, vec!["0".to_string()]);
        assert_eq!(r.eps_value, r.universe_choice);
        assert_eq!(r.eps_value, "-1");
    }
}
