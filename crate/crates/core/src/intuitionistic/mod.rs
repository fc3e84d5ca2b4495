//! Intuitionistic semantics: Heyting algebras of opens in finite spaces,
//! Kripke forcing with world-dependent ε-choices, and the exhaustive
//! searches around Markov's principle and Bell's theorem.

mod bell;
mod heyting;
mod kripke;
mod search;
mod topology;

use serde::Serialize;

pub use bell::{bell_lem_search, BellReport, BellVariant, NON_RIGID, RIGID, ROOT_ANTECEDENT, WITHOUT_EXTENSIONALITY};
pub use heyting::{heyting_eval, markov_check, MarkovReport, TopInterp};
pub use kripke::{
    kripke_force, validate_world_choice, ChoiceReport, ChoiceViolation, Env, KripkePred, KripkeStructure, World,
    WorldChoice,
};
pub use search::{
    kripke_topology_agreement, persistence_check, persistence_formulas, preorders, propositional_formulas, upsets,
    AgreementReport, PersistenceReport,
};
pub use topology::{all_spaces, double_negation_gap, three_point_witness, FiniteTopSpace, MAX_POINTS};

use crate::classical::{check_null_collapse, ModelSpace, SweepReport};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntuitionisticError {
    #[error("a space needs between 1 and 16 points, given {0}")]
    SpaceSize(usize),
    #[error("not a topology: {0}")]
    NotOpenFamily(String),
    #[error("value of `{symbol}` is {set}, which is not open")]
    NotOpen { symbol: String, set: String },
    #[error("`{0}` used with the wrong number of arguments")]
    Arity(String),
    #[error("`{0}` has no interpretation")]
    Uninterpreted(String),
    #[error("unsupported here: {0}")]
    Unsupported(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("dangling bound index {0}")]
    DanglingIndex(usize),
    #[error("{what} is not in the domain of {world}")]
    OutsideDomain { what: String, world: String },
    #[error("no choice for {term} at {world}")]
    MissingChoice { term: String, world: String },
    #[error("accessibility is not reflexive at {0}")]
    NotReflexive(String),
    #[error("accessibility is not transitive: {0}")]
    NotTransitive(String),
    #[error("domain shrinks from {0} to {1}")]
    DomainShrinks(String, String),
    #[error("domain of {0} is empty")]
    EmptyDomain(String),
    #[error("`{symbol}({args})` holds at {from} but not at {to}")]
    NotMonotone { symbol: String, args: String, from: String, to: String },
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error("{0}")]
    Bounds(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpiReport {
    pub formula: String,
    pub sweep: SweepReport,
    pub valid: bool,
    /// Only the validity side is computed.
    pub derivability: &'static str,
}

/// `ε_x(x=x) = ε_x(x≠x)` in every classical model with every choice
/// function up to `max_n` elements.
pub fn cpi_validity_demo(max_n: usize) -> CpiReport {
    let sweep = check_null_collapse(max_n, &ModelSpace::new(&["P"], &[], &["c"]));
    CpiReport {
        formula: "(eps x. x = x) = (eps x. x != x)".into(),
        valid: sweep.passed(),
        sweep,
        derivability: "not checked",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cpi_demo() {
        let r = cpi_validity_demo(3);
        assert!(r.valid);
        assert_eq!(r.derivability, "not checked");
        assert!(r.sweep.instances > 0);
    }
}
