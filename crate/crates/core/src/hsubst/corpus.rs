//! Checked-in critical-formula sets: rank-1 instances with pairwise
//! independent terms, and the nested instance where repairing one term
//! invalidates another.

use crate::formats::{parse_problem, Problem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProblemEntry {
    pub name: &'static str,
    pub source: &'static str,
}

impl ProblemEntry {
    pub fn problem(&self) -> Problem {
        parse_problem(self.source).unwrap_or_else(|e| panic!("corpus problem {}: {e}", self.name))
    }
}

macro_rules! entry {
    ($name:literal) => {
        ProblemEntry { name: $name, source: include_str!(concat!("../../corpus/problems/", $name, ".prob")) }
    };
}

const RANK_ONE: [ProblemEntry; 11] = [
    entry!("r1-double"),
    entry!("r1-square"),
    entry!("r1-threshold"),
    entry!("r1-pair"),
    entry!("r1-vacuous"),
    entry!("r1-sum"),
    entry!("r1-chained"),
    entry!("r1-triple"),
    entry!("r1-even"),
    entry!("r1-divisor"),
    entry!("r1-shared"),
];

const PATHOLOGY: ProblemEntry = entry!("pathology");

pub fn rank_one_corpus() -> &'static [ProblemEntry] {
    &RANK_ONE
}

/// `B(y) ≡ 3 ≤ y`, `A(x, z) ≡ z+3 ≤ x` with the three critical formulas
/// `B(1) ⇒ B(ε_B)`, `A(7, ε_B) ⇒ A(ε_A, ε_B)`, `B(ε_A) ⇒ B(ε_B)`.
pub fn pathology() -> ProblemEntry {
    PATHOLOGY
}

/// Every checked-in problem, rank-1 first.
pub fn problem_corpus() -> Vec<ProblemEntry> {
    let mut v = RANK_ONE.to_vec();
    v.push(PATHOLOGY);
    v
}
