use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{full_mask, mask_elems, Mask};
use crate::syntax::{Binder, Formula, Symbol, Term};

use super::heyting::{heyting_eval, TopInterp};
use super::kripke::{kripke_force, Env, KripkeStructure, WorldChoice};
use super::topology::FiniteTopSpace;

/// Every preorder on `n` worlds as `le[i][j]`; with `rooted`, only those
/// where world 0 sees every world.
pub fn preorders(n: usize, rooted: bool) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for (k, (i, j)) in pairs.iter().enumerate() {
            le[*i][*j] = bits >> k & 1 == 1;
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
        if transitive && (!rooted || le[0].iter().all(|x| *x)) {
            out.push(le);
        }
    }
    out
}

/// Up-closed sets of worlds.
pub fn upsets(le: &[Vec<bool>]) -> Vec<Mask> {
    FiniteTopSpace::upsets(le).opens().to_vec()
}

/// Growing domain assignments over `individuals` along `le`.
fn growing_domains(le: &[Vec<bool>], individuals: usize) -> Vec<Vec<Mask>> {
    let n = le.len();
    let choices: Vec<Mask> = (1..=full_mask(individuals)).collect();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Mask>| choices.iter().map(move |c| [prefix.clone(), vec![*c]].concat()))
            .collect();
    }
    out.retain(|d| (0..n).all(|i| (0..n).all(|j| !le[i][j] || d[i] & !d[j] == 0)));
    out
}

/// Monotone unary extensions: per world a subset of its domain, growing
/// along `le`.
fn monotone_unary(le: &[Vec<bool>], domains: &[Mask]) -> Vec<Vec<Mask>> {
    let n = le.len();
    let mut out = vec![vec![]];
    for w in 0..n {
        let subs: Vec<Mask> = (0..=domains[w]).filter(|s| s & !domains[w] == 0).collect();
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Mask>| subs.iter().map(move |s| [prefix.clone(), vec![*s]].concat()))
            .collect();
    }
    out.retain(|v| (0..n).all(|i| (0..n).all(|j| !le[i][j] || v[i] & !v[j] == 0)));
    out
}

/// Formulas of the propositional and existential fragment over a unary
/// `P`, a letter `q` and a free variable `x`: atoms, one layer of
/// connectives, and existential closures of that layer over `x`.
pub fn persistence_formulas() -> Vec<Formula> {
    let x = || Term::var("x");
    let atoms = vec![
        Formula::pred("P", vec![x()]),
        Formula::prop("q"),
        Formula::exists("y", Formula::pred("P", vec![Term::Bound(0)])),
        Formula::False,
    ];
    let mut layer = atoms.clone();
    for a in &atoms {
        layer.push(Formula::not(a.clone()));
        for b in &atoms {
            layer.push(Formula::and(a.clone(), b.clone()));
            layer.push(Formula::or(a.clone(), b.clone()));
            layer.push(Formula::implies(a.clone(), b.clone()));
        }
    }
    let mut out = layer.clone();
    let xs = Symbol::new("x");
    for f in &layer {
        if crate::syntax::free_vars(f).contains(&xs) {
            out.push(Formula::Exists(Binder::new("x"), Box::new(crate::syntax::abstract_var(f, &xs))));
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PersistenceReport {
    pub max_worlds: usize,
    pub structures: u64,
    pub formulas: usize,
    pub checks: u64,
    pub violations: u64,
    pub witness: Option<String>,
}

impl PersistenceReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Forced at `m` implies forced at every `m'` with `m ℜ m'`, over all
/// preorders on at most `max_worlds` worlds, growing domains over two
/// individuals, and monotone `P` and `q`.
pub fn persistence_check(max_worlds: usize) -> PersistenceReport {
    let formulas = persistence_formulas();
    let mut report = PersistenceReport { max_worlds, formulas: formulas.len(), ..Default::default() };
    let wc = WorldChoice::new();
    for n in 1..=max_worlds {
        let mut jobs = Vec::new();
        for le in preorders(n, false) {
            for d in growing_domains(&le, 2) {
                for p in monotone_unary(&le, &d) {
                    for q in upsets(&le) {
                        jobs.push((le.clone(), d.clone(), p.clone(), q));
                    }
                }
            }
        }
        let parts: Vec<(u64, u64, Option<String>)> = jobs
            .par_iter()
            .map(|(le, d, p, q)| {
                let names: Vec<String> = (0..n).map(|i| format!("M{i}")).collect();
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                let mut ks = KripkeStructure::new(&names, &["a", "b"]).with_preorder(le.clone());
                ks.declare("P", 1);
                ks.declare("q", 0);
                for w in 0..n {
                    ks.set_domain(w, d[w]);
                    for e in mask_elems(p[w]) {
                        ks.set_true("P", w, &[e]);
                    }
                    if q >> w & 1 == 1 {
                        ks.set_true("q", w, &[]);
                    }
                }
                ks.validate().expect("enumerated structures are well formed");
                let (mut checks, mut bad, mut witness) = (0, 0, None);
                for f in &formulas {
                    for m in 0..n {
                        for e in mask_elems(d[m]) {
                            let env = Env::from([(Symbol::new("x"), e)]);
                            if !kripke_force(&ks, m, f, &env, &wc).expect("covered") {
                                continue;
                            }
                            for m2 in ks.accessible(m).filter(|m2| *m2 != m) {
                                checks += 1;
                                if !kripke_force(&ks, m2, f, &env, &wc).expect("covered") {
                                    bad += 1;
                                    witness.get_or_insert_with(|| format!("{f} forced at M{m} but not at M{m2}"));
                                }
                            }
                        }
                    }
                }
                (checks, bad, witness)
            })
            .collect();
        report.structures += jobs.len() as u64;
        for (c, b, w) in parts {
            report.checks += c;
            report.violations += b;
            if report.witness.is_none() {
                report.witness = w;
            }
        }
    }
    report
}

/// Propositional formulas over `p` and `q` up to two connectives deep.
pub fn propositional_formulas() -> Vec<Formula> {
    let atoms = vec![Formula::prop("p"), Formula::prop("q"), Formula::False];
    let grow = |base: &[Formula]| {
        let mut out = base.to_vec();
        for a in base {
            out.push(Formula::not(a.clone()));
            for b in base {
                out.push(Formula::and(a.clone(), b.clone()));
                out.push(Formula::or(a.clone(), b.clone()));
                out.push(Formula::implies(a.clone(), b.clone()));
            }
        }
        out
    };
    let one = grow(&atoms);
    let mut two = one.clone();
    for a in &one {
        two.push(Formula::not(a.clone()));
        for b in &atoms {
            two.push(Formula::implies(a.clone(), b.clone()));
            two.push(Formula::implies(b.clone(), a.clone()));
            two.push(Formula::or(a.clone(), b.clone()));
        }
    }
    two
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub frames: u64,
    pub valuations: u64,
    pub formulas: usize,
    pub disagreements: u64,
    pub witness: Option<String>,
}

/// Forcing on a preorder frame against Heyting evaluation in its up-set
/// topology, for propositional formulas.
pub fn kripke_topology_agreement(max_worlds: usize) -> AgreementReport {
    let formulas = propositional_formulas();
    let mut report = AgreementReport { formulas: formulas.len(), ..Default::default() };
    let wc = WorldChoice::new();
    for n in 1..=max_worlds {
        for le in preorders(n, false) {
            report.frames += 1;
            let sp = FiniteTopSpace::upsets(&le);
            let ups = sp.opens().to_vec();
            for &p in &ups {
                for &q in &ups {
                    report.valuations += 1;
                    let names: Vec<String> = (0..n).map(|i| format!("M{i}")).collect();
                    let names: Vec<&str> = names.iter().map(String::as_str).collect();
                    let mut ks = KripkeStructure::new(&names, &["*"]).with_preorder(le.clone());
                    ks.declare("p", 0);
                    ks.declare("q", 0);
                    for w in mask_elems(p) {
                        ks.set_true("p", w, &[]);
                    }
                    for w in mask_elems(q) {
                        ks.set_true("q", w, &[]);
                    }
                    let mut interp = TopInterp::propositional();
                    interp.set("p", 0, vec![p]).set("q", 0, vec![q]);
                    for f in &formulas {
                        let forced: Mask = (0..n)
                            .filter(|&m| kripke_force(&ks, m, f, &Env::new(), &wc).expect("propositional"))
                            .fold(0, |acc, m| acc | 1 << m);
                        let open = heyting_eval(f, &sp, &interp, &BTreeMap::new()).expect("propositional");
                        if forced != open {
                            report.disagreements += 1;
                            report.witness.get_or_insert_with(|| format!("{f}: forced at {forced:#b}, open {open:#b}"));
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (1..=3).map(|n| preorders(n, false).len()).collect();
        assert_eq!(counts, vec![1, 4, 29]);
    }

    #[test]
    fn persistence_two_worlds() {
        let r = persistence_check(2);
        assert!(r.passed(), "{r:?}");
        assert!(r.checks > 0);
    }

    #[test]
    fn agreement_two_worlds() {
        let r = kripke_topology_agreement(2);
        assert_eq!(r.disagreements, 0, "{r:?}");
    }
}
