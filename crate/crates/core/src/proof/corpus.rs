//! Checked-in derivations of ε-free sentences in the proper ε-calculus.

use rayon::prelude::*;

use super::derivation::{parse_derivation, Derivation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
}

impl CorpusEntry {
    pub fn derivation(&self) -> Derivation {
        parse_derivation(self.source).unwrap_or_else(|e| panic!("corpus entry {}: {e}", self.name))
    }
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry { name: $name, source: include_str!(concat!("../../corpus/derivations/", $name, ".drv")) }
    };
}

const ENTRIES: [CorpusEntry; 8] = [
    entry!("routed"),
    entry!("witness"),
    entry!("counterexample"),
    entry!("premises"),
    entry!("swap"),
    entry!("nonempty"),
    entry!("generalized"),
    entry!("nested"),
];

pub fn corpus() -> Vec<CorpusEntry> {
    ENTRIES.to_vec()
}

/// Critical formulas for `ε_y B(y)` and for `ε_x A(x, ε_y B(y))`.
pub fn nested_critical_derivation() -> Derivation {
    ENTRIES[7].derivation()
}

/// Run `f` over the corpus in parallel, keeping corpus order.
pub fn map_corpus<T: Send>(f: impl Fn(&CorpusEntry) -> T + Sync + Send) -> Vec<T> {
    ENTRIES.par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::super::{check, critical_formulas, second_epsilon_theorem, Profile};
    use super::*;
    use crate::syntax::{contains_eps, parse_term};

    #[test]
    fn corpus_checks_and_eliminates() {
        let results = map_corpus(|e| {
            let d = e.derivation();
            check(&d, Profile::CpEpsStar).map_err(|x| format!("{}: {x}", e.name))?;
            let out = second_epsilon_theorem(&d).map_err(|x| format!("{}: {x}", e.name))?;
            Ok::<_, String>((d, out))
        });
        for r in results {
            let (d, out) = r.unwrap();
            assert!(out.epsilon_terms().is_empty());
            assert!(out.lines.iter().all(|l| !contains_eps(&l.formula)));
            assert_eq!(out.conclusion(), d.conclusion());
            check(&out, Profile::Cp).unwrap();
        }
    }

    #[test]
    fn nested_critical_formulas() {
        let cf = critical_formulas(&nested_critical_derivation());
        let terms: Vec<_> = cf.iter().map(|c| c.eps_term.clone()).collect();
        assert_eq!(terms, vec![parse_term("eps y. B(y)").unwrap(), parse_term("eps x. A(x, eps y. B(y))").unwrap()]);
        assert_eq!(cf[1].witness, parse_term("d").unwrap());
    }
}
