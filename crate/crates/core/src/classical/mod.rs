//! Finite classical models with a universal choice function Φ: `ε_x F(x)`
//! denotes Φ applied to the extension of `F`, and Φ(∅) = Φ(𝒰).

mod checks;
mod choice;
mod enumerate;
mod eval;
mod finitist;
mod infinitesimal;
mod model;

pub use checks::{
    abstraction_representative, check_ackermann, check_epsilon_soundness, check_exists_equivalence,
    check_forall_equivalence, check_null_collapse, eta_extension, iota_check, AckermannReport, IotaFailure,
    IotaOutcome,
};
pub use choice::{all_choice_functions, choice_function_at, choice_function_count, ChoiceFunction, MAX_TABLE_UNIVERSE};
pub use enumerate::{sweep, unary_bodies, ModelSpace, SweepReport};
pub use eval::{eval_formula, eval_sentence, eval_term, extension, mask_names, Evaluator, Valuation};
pub use finitist::{a1_a5_axioms, a1_a5_interp, verify_matrices, MatrixCounterexample, MatrixReport};
pub use infinitesimal::{infinitesimal_model, infinitesimal_null_demo, InfinitesimalReport};
pub use model::{full_mask, mask_elems, tuple_index, tuples, Elem, FiniteModel, FuncTable, Mask, PredTable, MAX_UNIVERSE};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassicalError {
    #[error("the universe must be nonempty")]
    EmptyUniverse,
    #[error("universe of {0} elements exceeds the limit of 64")]
    UniverseTooLarge(usize),
    #[error("element `{0}` listed twice")]
    DuplicateElement(String),
    #[error("table for `{0}` has the wrong size or an out-of-range entry")]
    BadTable(String),
    #[error("`{0}` applied with the wrong number of arguments")]
    Arity(String),
    #[error("`{0}` has no interpretation in the model")]
    Uninterpreted(String),
    #[error("invalid choice function: {0}")]
    BadChoice(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("dangling bound index {0}")]
    DanglingIndex(usize),
    #[error("expected exactly one free variable, found {0}")]
    FreeVariableCount(usize),
    #[error("`{relation}` is not {property}: {witness}")]
    NotEquivalence { relation: String, property: &'static str, witness: String },
}
