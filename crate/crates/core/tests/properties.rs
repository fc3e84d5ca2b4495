use proptest::prelude::*;

use epsilon_kernel::arith::ArithInterp;
use epsilon_kernel::classical::{eval_sentence, ChoiceFunction, FiniteModel};
use epsilon_kernel::hsubst::{brute_force, check_e1_e2, decompose_critical, default_max_iter, resolve_report, solve};
use epsilon_kernel::intuitionistic::all_spaces;
use epsilon_kernel::syntax::{
    abstract_var, free_vars, make_eps, parse_formula, parse_term, quantifier_count, substitute, Binder, Formula, Symbol,
    Term,
};
use epsilon_kernel::transform::{epsilon_translate, Mode};

const VARS: [&str; 3] = ["x", "y", "z"];

fn leaf_term() -> impl Strategy<Value = Term> {
    prop_oneof![prop::sample::select(VARS.to_vec()).prop_map(Term::var), Just(Term::constant("c"))]
}

fn atom(t: BoxedStrategy<Term>) -> impl Strategy<Value = Formula> {
    prop_oneof![
        t.clone().prop_map(|a| Formula::pred("P", vec![a])),
        (t.clone(), t.clone()).prop_map(|(a, b)| Formula::pred("Q", vec![a, b])),
        (t.clone(), t).prop_map(|(a, b)| Formula::eq(a, b)),
        Just(Formula::True),
        Just(Formula::False),
    ]
}

fn bind(kind: u8, v: &str, f: Formula) -> Formula {
    let x = Symbol::new(v);
    let body = abstract_var(&f, &x);
    match kind {
        0 => Formula::Forall(Binder(x), Box::new(body)),
        _ => Formula::Exists(Binder(x), Box::new(body)),
    }
}

/// Formulas over `P/1`, `Q/2`, `c`, with quantifiers and ε-terms whose
/// bodies are themselves generated.
fn formula() -> impl Strategy<Value = Formula> {
    let eps_terms = atom(leaf_term().boxed()).prop_flat_map(|body| {
        let vars: Vec<String> = free_vars(&body).iter().map(|s| s.to_string()).collect();
        let pick = if vars.is_empty() { Just(None).boxed() } else { prop::sample::select(vars).prop_map(Some).boxed() };
        pick.prop_map(move |v| match v {
            Some(v) => make_eps(&body, &Symbol::new(&v)).expect("free"),
            None => Term::constant("c"),
        })
    });
    let term = prop_oneof![3 => leaf_term(), 1 => eps_terms].boxed();
    atom(term).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (0u8..2, prop::sample::select(VARS.to_vec()), inner).prop_map(|(k, v, f)| bind(k, v, f)),
        ]
    })
}

fn close(f: Formula) -> Formula {
    free_vars(&f).iter().fold(f, |acc, x| bind(0, x.as_str(), acc))
}

/// Universe `0..n`, `P` and `Q` from bit patterns, `c` an element, and a
/// choice table picking a member of every nonempty subset.
fn model() -> impl Strategy<Value = (FiniteModel, ChoiceFunction)> {
    (1usize..=3).prop_flat_map(|n| {
        (any::<u8>(), any::<u16>(), 0..n, prop::collection::vec(any::<u8>(), 1 << n)).prop_map(move |(p, q, c, picks)| {
            let mut m = FiniteModel::new((0..n).map(|i| format!("e{i}")).collect()).unwrap();
            m.set_predicate_fn("P", 1, |a| p >> a[0] & 1 == 1);
            m.set_predicate_fn("Q", 2, |a| q >> (a[0] * 3 + a[1]) & 1 == 1);
            m.set_constant("c", c).unwrap();
            let table = (0..1usize << n)
                .map(|mask| {
                    let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    if members.is_empty() {
                        picks[0] as usize % n
                    } else {
                        members[picks[mask] as usize % members.len()]
                    }
                })
                .collect();
            (m, ChoiceFunction::Table(table))
        })
    })
}

proptest! {
    #[test]
    fn ascii_round_trip(f in formula()) {
        let printed = f.to_string();
        prop_assert_eq!(parse_formula(&printed).map_err(|e| e.to_string()), Ok(f), "{}", printed);
    }

    #[test]
    fn unicode_round_trip(f in formula()) {
        let printed = f.to_unicode();
        prop_assert_eq!(parse_formula(&printed).map_err(|e| e.to_string()), Ok(f), "{}", printed);
    }

    #[test]
    fn renaming_bound_variable_is_invisible(f in formula()) {
        let w = Symbol::new("w");
        let renamed = substitute(&f, &Symbol::new("x"), &Term::Var(w.clone()));
        prop_assert_eq!(bind(0, "x", f), Formula::Forall(Binder(w.clone()), Box::new(abstract_var(&renamed, &w))));
    }

    #[test]
    fn translation_removes_quantifiers(f in formula()) {
        let out = epsilon_translate(&f, Mode::Classical).unwrap();
        prop_assert_eq!(quantifier_count(&out), 0);
        prop_assert_eq!(free_vars(&out), free_vars(&f));
    }

    #[test]
    fn translation_preserves_truth(f in formula().prop_map(close), (m, cf) in model()) {
        let out = epsilon_translate(&f, Mode::Classical).unwrap();
        prop_assert_eq!(eval_sentence(&f, &m, &cf).unwrap(), eval_sentence(&out, &m, &cf).unwrap(), "{}", out);
        prop_assert_eq!(eval_sentence(&f, &m, &ChoiceFunction::Min).unwrap(), eval_sentence(&out, &m, &ChoiceFunction::Min).unwrap());
    }
}

/// A decidable predicate over `x` and a native oracle for it.
#[derive(Clone, Debug)]
enum Pred {
    Linear { k: u64, b: u64, m: u64 },
    AtLeast(u64),
    Square(u64),
    Between(u64, u64),
    Either(u64, u64),
}

impl Pred {
    fn source(&self) -> String {
        match self {
            Pred::Linear { k, b, m } => format!("{k} * x + {b} = {m}"),
            Pred::AtLeast(k) => format!("{k} <= x"),
            Pred::Square(m) => format!("x * x = {m}"),
            Pred::Between(a, b) => format!("{a} < x and x < {b}"),
            Pred::Either(a, b) => format!("x = {a} or x = {b}"),
        }
    }

    fn holds(&self, n: u64) -> bool {
        match *self {
            Pred::Linear { k, b, m } => k * n + b == m,
            Pred::AtLeast(k) => k <= n,
            Pred::Square(m) => n * n == m,
            Pred::Between(a, b) => a < n && n < b,
            Pred::Either(a, b) => n == a || n == b,
        }
    }
}

const CAP: u64 = 20;

fn pred() -> impl Strategy<Value = Pred> {
    prop_oneof![
        (1u64..5, 0u64..CAP, 0u64..CAP).prop_map(|(k, b, m)| Pred::Linear { k, b, m }),
        (0u64..CAP).prop_map(Pred::AtLeast),
        (0u64..CAP).prop_map(Pred::Square),
        (0u64..CAP, 0u64..CAP).prop_map(|(a, b)| Pred::Between(a, b)),
        (0u64..CAP, 0u64..CAP).prop_map(|(a, b)| Pred::Either(a, b)),
    ]
}

proptest! {
    #[test]
    fn least_number_schemas_hold(p in pred()) {
        let a = parse_formula(&p.source()).unwrap();
        let r = check_e1_e2(&a, &ArithInterp::new(CAP), CAP).unwrap();
        let least = (0..CAP).find(|n| p.holds(*n)).unwrap_or(0);
        prop_assert_eq!(r.eps_value, least);
        prop_assert!(r.ok(), "{}", r);
    }

    #[test]
    fn single_critical_formula_is_repaired_to_least(p in pred(), w in 0u64..CAP) {
        let src = p.source();
        let f = parse_formula(&format!("({}) -> ({})", src.replace('x', &w.to_string()), src.replace('x', &format!("(eps x. {src})")))).unwrap();
        let set = vec![decompose_critical(&f, 1).unwrap()];
        let interp = ArithInterp::new(CAP);
        let s = solve(&set, &interp, default_max_iter(&set, CAP)).unwrap();
        let expected = if p.holds(w) { (0..=w).find(|n| p.holds(*n)).unwrap() } else { 0 };
        let eps = parse_term(&format!("eps x. {src}")).unwrap();
        prop_assert_eq!(s.get(&eps), Some(expected));
        prop_assert!(s.iterations <= 1);
        prop_assert!(resolve_report(&s, &set, &interp).unwrap().resolved);
        prop_assert!(brute_force(&set, &interp, CAP).unwrap().exists());
    }

    #[test]
    fn heyting_operations(idx in any::<prop::sample::Index>(), xi in any::<prop::sample::Index>(), yi in any::<prop::sample::Index>()) {
        let spaces = all_spaces(3);
        let sp = idx.get(&spaces);
        let x = *xi.get(sp.opens());
        let y = *yi.get(sp.opens());
        prop_assert_eq!(sp.neg(x) & x, 0);
        prop_assert_eq!(x & !sp.neg(sp.neg(x)), 0);
        // X ⇒ Y is the largest open Z with Z ∩ X ⊆ Y
        let best = sp.opens().iter().copied().filter(|z| z & x & !y == 0).fold(0, |acc, z| acc | z);
        prop_assert_eq!(sp.implies(x, y), best);
    }
}
