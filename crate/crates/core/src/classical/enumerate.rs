use rayon::prelude::*;
use serde::Serialize;

use crate::syntax::{Formula, Term};

use super::choice::{all_choice_functions, ChoiceFunction};
use super::model::FiniteModel;

/// A small signature whose models of a given size are indexed densely, so
/// that a sweep can be split across threads by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpace {
    pub unary: Vec<String>,
    pub binary: Vec<String>,
    pub constants: Vec<String>,
}

impl ModelSpace {
    pub fn new(unary: &[&str], binary: &[&str], constants: &[&str]) -> Self {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        ModelSpace { unary: own(unary), binary: own(binary), constants: own(constants) }
    }

    /// Number of models with universe `0..n`.
    pub fn count(&self, n: usize) -> u64 {
        let n = n as u64;
        let bits = n * self.unary.len() as u64 + n * n * self.binary.len() as u64;
        (1u64 << bits) * n.pow(self.constants.len() as u32)
    }

    /// Decode the `idx`-th model of size `n`: constants vary fastest, then
    /// binary tables, then unary tables.
    pub fn model(&self, n: usize, mut idx: u64) -> FiniteModel {
        let mut m = FiniteModel::new((0..n).map(|i| i.to_string()).collect()).expect("small universe");
        for c in &self.constants {
            m.set_constant(c, (idx % n as u64) as usize).expect("in range");
            idx /= n as u64;
        }
        for r in &self.binary {
            let table = (0..n * n).map(|_| {
                let b = idx & 1 == 1;
                idx >>= 1;
                b
            });
            let table: Vec<bool> = table.collect();
            m.set_predicate(r, 2, table).expect("sized");
        }
        for p in &self.unary {
            let table: Vec<bool> = (0..n)
                .map(|_| {
                    let b = idx & 1 == 1;
                    idx >>= 1;
                    b
                })
                .collect();
            m.set_predicate(p, 1, table).expect("sized");
        }
        m
    }

    pub fn models(&self, n: usize) -> impl Iterator<Item = FiniteModel> + '_ {
        (0..self.count(n)).map(move |i| self.model(n, i))
    }
}

/// Outcome of checking a property over every (model, Φ) pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub property: String,
    pub max_size: usize,
    pub models: u64,
    pub choice_functions: u64,
    pub instances: u64,
    pub violations: u64,
    pub witness: Option<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl std::fmt::Display for SweepReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} models, {} (model, choice) pairs, {} instances, {} violations",
            self.property, self.models, self.choice_functions, self.instances, self.violations
        )?;
        if let Some(w) = &self.witness {
            write!(f, "; first witness: {w}")?;
        }
        Ok(())
    }
}

/// Run `check` on every model of size `1..=max_n` and every admissible
/// choice function. `check` returns the number of instances it tested and
/// a description of a violation, if any.
pub fn sweep<F>(property: &str, space: &ModelSpace, max_n: usize, check: F) -> SweepReport
where
    F: Fn(&FiniteModel, &ChoiceFunction) -> (u64, Option<String>) + Sync,
{
    let mut report = SweepReport { property: property.to_string(), max_size: max_n, ..Default::default() };
    for n in 1..=max_n {
        let choices: Vec<ChoiceFunction> = all_choice_functions(n).collect();
        let count = space.count(n);
        let parts: Vec<(u64, u64, u64, Option<String>)> = (0..count)
            .into_par_iter()
            .map(|i| {
                let m = space.model(n, i);
                let mut inst = 0;
                let mut bad = 0;
                let mut witness = None;
                for (k, cf) in choices.iter().enumerate() {
                    let (c, w) = check(&m, cf);
                    inst += c;
                    if let Some(w) = w {
                        bad += 1;
                        witness.get_or_insert_with(|| format!("size {n}, model #{i}, choice #{k}: {w}"));
                    }
                }
                (choices.len() as u64, inst, bad, witness)
            })
            .collect();
        report.models += count;
        for (pairs, inst, bad, w) in parts {
            report.choice_functions += pairs;
            report.instances += inst;
            report.violations += bad;
            if report.witness.is_none() {
                report.witness = w;
            }
        }
    }
    report
}

/// Unary formulas in `x` over the space's symbols, used as the `F` of the
/// equivalence checks.
pub fn unary_bodies(space: &ModelSpace) -> Vec<Formula> {
    let x = || Term::var("x");
    let mut out = vec![Formula::eq(x(), x()), Formula::neq(x(), x())];
    for p in &space.unary {
        out.push(Formula::pred(p, vec![x()]));
        out.push(Formula::not(Formula::pred(p, vec![x()])));
    }
    for c in &space.constants {
        out.push(Formula::eq(x(), Term::constant(c)));
        out.push(Formula::neq(x(), Term::constant(c)));
        for p in &space.unary {
            out.push(Formula::and(Formula::pred(p, vec![x()]), Formula::neq(x(), Term::constant(c))));
        }
    }
    for r in &space.binary {
        out.push(Formula::pred(r, vec![x(), x()]));
        for c in &space.constants {
            out.push(Formula::pred(r, vec![x(), Term::constant(c)]));
            out.push(Formula::pred(r, vec![Term::constant(c), x()]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_decoding() {
        let s = ModelSpace::new(&["P"], &["R"], &["c"]);
        assert_eq!(s.count(1), 4);
        assert_eq!(s.count(3), 8 * 512 * 3);
        let all: Vec<FiniteModel> = s.models(2).collect();
        for i in 0..all.len() {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn sweep_counts_pairs() {
        let s = ModelSpace::new(&["P"], &[], &[]);
        let r = sweep("trivial", &s, 3, |_, _| (1, None));
        // 2 + 4*2 + 8*24
        assert_eq!(r.models, 2 + 4 + 8);
        assert_eq!(r.choice_functions, 2 + 4 * 2 + 8 * 24);
        assert!(r.passed());
    }
}
