//! Exhaustive search for Kripke countermodels to excluded middle among
//! structures that force the ε-schema and Ackermann's extensionality
//! schema at the root.
//!
//! The working pair is `F(x) ≡ x = c0 ∨ p` and `G(x) ≡ x = c1 ∨ p` for a
//! propositional letter `p`, with `c0`, `c1` naming distinct individuals
//! when the domain has two elements. The tested instance of excluded
//! middle is `p ∨ ¬p`.

use serde::Serialize;

use crate::classical::{mask_elems, Elem, Mask};
use crate::syntax::{parse_formula, parse_term, Formula, Term};

use super::kripke::{kripke_force, Env, KripkeStructure, WorldChoice};
use super::search::{preorders, upsets};
use super::IntuitionisticError;

/// One reading of the schemas and the resulting count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BellVariant {
    pub name: String,
    /// Whether the search asserts a zero count for this reading.
    pub asserted: bool,
    /// Structures with choices forcing the required schemas at the root.
    pub admissible: u64,
    /// Of those, the ones refusing `p ∨ ¬p` at the root.
    pub countermodels: u64,
    pub example: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BellReport {
    pub max_worlds: usize,
    pub max_domain: usize,
    pub frames: u64,
    pub structures: u64,
    pub variants: Vec<BellVariant>,
}

impl BellReport {
    pub fn variant(&self, name: &str) -> Option<&BellVariant> {
        self.variants.iter().find(|v| v.name == name)
    }

    /// No countermodel under the asserted reading, and at least one once
    /// extensionality is dropped.
    pub fn passed(&self) -> bool {
        self.variants.iter().filter(|v| v.asserted).all(|v| v.countermodels == 0)
            && self.variant(WITHOUT_EXTENSIONALITY).is_some_and(|v| v.countermodels > 0)
    }
}

pub const RIGID: &str = "rigid choice, schemas forced at the root";
pub const WITHOUT_EXTENSIONALITY: &str = "rigid choice, extensionality dropped";
pub const ROOT_ANTECEDENT: &str = "rigid choice, extensionality antecedent read at the root only";
pub const NON_RIGID: &str = "world-dependent choice, schemas forced at the root";

struct Schemas {
    eps_f: Term,
    eps_g: Term,
    epsilon: Vec<Formula>,
    extensional: Formula,
    antecedent: Formula,
    lem: Formula,
}

fn schemas() -> Schemas {
    let f = |s: &str| parse_formula(s).expect("fixed source");
    let mut epsilon = Vec::new();
    for (body, eps) in [("x = c0 or p", "(eps x. x = c0 or p)"), ("x = c1 or p", "(eps x. x = c1 or p)")] {
        let at = |t: &str| body.replace('x', t);
        epsilon.push(f(&format!("(exists x. {body}) -> {}", at(eps))));
        for c in ["c0", "c1"] {
            epsilon.push(f(&format!("{} -> {}", at(c), at(eps))));
        }
    }
    Schemas {
        eps_f: parse_term("eps x. x = c0 or p").expect("fixed source"),
        eps_g: parse_term("eps x. x = c1 or p").expect("fixed source"),
        epsilon,
        extensional: f("(forall x. (x = c0 or p) <-> (x = c1 or p)) -> (eps x. x = c0 or p) = (eps x. x = c1 or p)"),
        antecedent: f("forall x. (x = c0 or p) <-> (x = c1 or p)"),
        lem: f("p or not p"),
    }
}

fn structure(le: &[Vec<bool>], domain: usize, p: Mask) -> KripkeStructure {
    let names: Vec<String> = (0..le.len()).map(|i| format!("M{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let inds: Vec<String> = (0..domain).map(|i| format!("d{i}")).collect();
    let inds: Vec<&str> = inds.iter().map(String::as_str).collect();
    let mut ks = KripkeStructure::new(&names, &inds).with_preorder(le.to_vec());
    ks.set_constant("c0", 0);
    ks.set_constant("c1", 1.min(domain - 1));
    ks.declare("p", 0);
    for w in mask_elems(p) {
        ks.set_true("p", w, &[]);
    }
    ks
}

fn describe(ks: &KripkeStructure, p: Mask, fc: &[Elem], gc: &[Elem]) -> String {
    let edges: Vec<String> = (0..ks.worlds.len())
        .flat_map(|i| (0..ks.worlds.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && ks.access[i][j])
        .map(|(i, j)| format!("{}<={}", ks.worlds[i], ks.worlds[j]))
        .collect();
    let pw: Vec<&str> = mask_elems(p).map(|w| ks.worlds[w].as_str()).collect();
    let show = |v: &[Elem]| v.iter().map(|e| ks.individuals[*e].clone()).collect::<Vec<_>>().join(",");
    format!(
        "worlds {}, order [{}], p at [{}], f_F = [{}], f_G = [{}]",
        ks.worlds.len(),
        edges.join(" "),
        pw.join(","),
        show(fc),
        show(gc)
    )
}

/// All value sequences over `domain` for `worlds` worlds.
fn sequences(worlds: usize, domain: usize) -> Vec<Vec<Elem>> {
    let total = domain.pow(worlds as u32);
    (0..total)
        .map(|mut i| {
            (0..worlds)
                .map(|_| {
                    let e = i % domain;
                    i /= domain;
                    e
                })
                .collect()
        })
        .collect()
}

pub fn bell_lem_search(max_worlds: usize, max_domain: usize) -> Result<BellReport, IntuitionisticError> {
    if !(1..=3).contains(&max_worlds) || !(1..=2).contains(&max_domain) {
        return Err(IntuitionisticError::Bounds(format!(
            "search covers 1 to 3 worlds and 1 to 2 individuals, given {max_worlds} and {max_domain}"
        )));
    }
    let s = schemas();
    let mut report = BellReport { max_worlds, max_domain, frames: 0, structures: 0, variants: vec![] };
    let mut variants: Vec<BellVariant> = [(RIGID, true), (WITHOUT_EXTENSIONALITY, false), (ROOT_ANTECEDENT, false), (NON_RIGID, false)]
        .iter()
        .map(|(n, a)| BellVariant { name: n.to_string(), asserted: *a, admissible: 0, countermodels: 0, example: None })
        .collect();
    let domain = max_domain;
    let env = Env::new();
    for n in 1..=max_worlds {
        for le in preorders(n, true) {
            report.frames += 1;
            for p in upsets(&le) {
                report.structures += 1;
                let ks = structure(&le, domain, p);
                ks.validate()?;
                let lem = kripke_force(&ks, 0, &s.lem, &env, &WorldChoice::new())?;
                let antecedent = kripke_force(&ks, 0, &s.antecedent, &env, &WorldChoice::new())?;
                let seqs = sequences(n, domain);
                for fc in &seqs {
                    for gc in &seqs {
                        let rigid = fc.iter().all(|e| *e == fc[0]) && gc.iter().all(|e| *e == gc[0]);
                        let mut wc = WorldChoice::new();
                        for w in 0..n {
                            wc.set(&s.eps_f, n, w, fc[w]);
                            wc.set(&s.eps_g, n, w, gc[w]);
                        }
                        let mut eps_ok = true;
                        for e in &s.epsilon {
                            if !kripke_force(&ks, 0, e, &env, &wc)? {
                                eps_ok = false;
                                break;
                            }
                        }
                        if !eps_ok {
                            continue;
                        }
                        let ext = kripke_force(&ks, 0, &s.extensional, &env, &wc)?;
                        let root_ext = !antecedent || fc == gc;
                        let mut tally = |idx: usize, holds: bool| {
                            if holds {
                                let v = &mut variants[idx];
                                v.admissible += 1;
                                if !lem {
                                    v.countermodels += 1;
                                    v.example.get_or_insert_with(|| describe(&ks, p, fc, gc));
                                }
                            }
                        };
                        if rigid {
                            tally(0, ext);
                            tally(1, true);
                            tally(2, root_ext);
                        }
                        tally(3, ext);
                    }
                }
            }
        }
    }
    report.variants = variants;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_world_is_classical() {
        let r = bell_lem_search(1, 2).unwrap();
        assert!(r.variants.iter().all(|v| v.countermodels == 0));
    }

    #[test]
    fn full_search() {
        let r = bell_lem_search(3, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.variant(RIGID).unwrap().countermodels, 0);
        assert!(r.variant(WITHOUT_EXTENSIONALITY).unwrap().countermodels > 0);
    }
}
