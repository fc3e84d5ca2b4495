//! Formula-to-formula pipelines: quantifier elimination by ε-terms, prenex
//! normal form, matrices and Skolem resolution.

mod prenex;
mod skolem;
mod translate;

pub use prenex::{matrices, open_prefix, prenex, split_prenex, PrenexForm};
pub use skolem::{skolem_resolve, SkolemDefinition, SkolemResolution};
pub use translate::{
    epsilon_translate, epsilon_translate_traced, existential_to_epsilon, universal_to_epsilon, TraceStep,
    EXISTS_RULE, FORALL_RULE,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Classical,
    Intuitionistic,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(Mode::Classical),
            "intuitionistic" => Ok(Mode::Intuitionistic),
            other => Err(format!("unknown mode `{other}` (classical | intuitionistic)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("not an existential formula: {0}")]
    NotExistential(String),
    #[error("not a universal formula: {0}")]
    NotUniversal(String),
    #[error(
        "universal-to-epsilon refused in intuitionistic mode: the equivalence for universals \
         needs the Markov principle, which intuitionistic logic does not grant"
    )]
    MarkovRefused,
    #[error("input contains epsilon terms")]
    ContainsEpsilon,
    #[error("not in prenex form: {0}")]
    NotPrenex(String),
}
