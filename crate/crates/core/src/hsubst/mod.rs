//! Least-number semantics for ε over the naturals and the numeric
//! substitution method: start every closed ε-term at 0 and repair values
//! until all critical formulas `F(t) ⇒ F(ε_F)` are true.

mod battery;
mod corpus;
mod solve;

pub use battery::{check_e1_e2, check_battery, E1E2Report, SchemaKind, SchemaViolation, BATTERY, BATTERY_CAP};
pub use corpus::{pathology, problem_corpus, rank_one_corpus, ProblemEntry};
pub use solve::{
    brute_force, decompose_critical, default_max_iter, epsilon_terms_of, resolve_report, solve, EpsilonAssignment,
    NonTermination, OracleReport, Repair, RepairKind, ResolveReport, ResolveRow, MAX_RANK, ORACLE_LIMIT,
};

use crate::arith::ArithError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HsubstError {
    #[error("critical formula {0} is not closed")]
    NotClosed(String),
    #[error("{term} has ε-rank {rank}, above the supported {max}")]
    RankTooHigh { term: String, rank: usize, max: usize },
    #[error("{0} is not of the form F(t) -> F(eps x. F(x))")]
    NotCritical(String),
    #[error("formula {0} must have exactly one free variable")]
    FreeVariables(String),
    #[error("no value below {bound} satisfies the body of {term}")]
    NoWitness { term: String, bound: u64 },
    #[error("oracle would scan {0} assignments")]
    OracleTooLarge(u128),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{}", .0)]
    NonTermination(Box<NonTermination>),
}
