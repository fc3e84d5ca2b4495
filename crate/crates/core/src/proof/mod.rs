//! Hilbert-style derivations over CP, the ε-calculi and the elementary
//! calculus CE: checking, critical formulas, elimination of ε-terms from
//! proper derivations, instance checks for prenex consequences and the
//! ε-proof of induction.

mod check;
mod corpus;
mod derivation;
mod eliminate;
pub(crate) mod first;
mod induction;
mod schema;
mod taut;

use std::fmt;

use serde::Serialize;

pub use check::{check, CheckError, CheckErrorKind, CheckReport};
pub use corpus::{corpus, map_corpus, nested_critical_derivation, CorpusEntry};
pub use derivation::{parse_args, parse_derivation, parse_justification, Derivation, Justification, Line};
pub use eliminate::{critical_formulas, eliminate_one_epsilon, second_epsilon_theorem, CriticalFormula};
pub use first::{first_theorem_instance_check, FirstTheoremReport, InstanceCandidate, MatrixInstance};
pub use induction::{replay_induction, InductionReplay};
pub use schema::{Arg, ArgKind, Schema, ALL_SCHEMAS};
pub use taut::{entails, is_tautology, Skeleton, TautOutcome, MAX_ATOMS};

use crate::arith::ArithError;

/// Which calculus a derivation is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Profile {
    /// Classical predicate calculus, no ε-terms.
    Cp,
    /// CP with (ε), its existential form, (ε₂) and the least-number schemas.
    CpEps,
    /// CP_ε without (ε₂), every line and schema argument proper.
    CpEpsStar,
    /// Quantifier-free lines, no quantifier rules.
    Ce,
    /// Intuitionistic basis with (ε): no tautology rules, no double negation.
    CpiEps,
}

pub const ALL_PROFILES: [Profile; 5] = [Profile::Cp, Profile::CpEps, Profile::CpEpsStar, Profile::Ce, Profile::CpiEps];

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Cp => "cp",
            Profile::CpEps => "cp-eps",
            Profile::CpEpsStar => "cp-eps*",
            Profile::Ce => "ce",
            Profile::CpiEps => "cpi-eps",
        }
    }

    pub fn from_name(s: &str) -> Option<Profile> {
        let s = s.to_ascii_lowercase();
        ALL_PROFILES.iter().copied().find(|p| p.name() == s || (s == "cp-eps-star" && *p == Profile::CpEpsStar))
    }

    pub fn admits_schema(self, s: Schema) -> bool {
        use Schema::*;
        let propositional = matches!(s, K | S | AndI | AndE1 | AndE2 | OrI1 | OrI2 | OrE | Efq | NegI | NegE | Dne);
        let equality = matches!(s, EqRefl | EqSubst);
        match self {
            Profile::Cp => propositional || equality || matches!(s, ForallElim | ExistsIntro),
            Profile::CpEps => true,
            Profile::CpEpsStar => s != Eps2,
            Profile::Ce => propositional || equality || matches!(s, Eps | EpsLeast | EpsSucc),
            Profile::CpiEps => {
                (propositional && s != Dne) || equality || matches!(s, ForallElim | ExistsIntro | Eps | EpsExists)
            }
        }
    }

    pub fn admits_rule(self, j: &Justification) -> bool {
        match j {
            Justification::Taut | Justification::TautFrom(_) => self != Profile::CpiEps,
            Justification::Inst(..) | Justification::GenForall(..) | Justification::GenExists(..) => self != Profile::Ce,
            Justification::Premise | Justification::Mp(..) | Justification::Axiom(..) => true,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Cp => "CP",
            Profile::CpEps => "CP_ε",
            Profile::CpEpsStar => "CP_ε*",
            Profile::Ce => "CE",
            Profile::CpiEps => "CPI_ε",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("{0} is not a closed ε-term")]
    NotClosed(String),
    #[error("{0} is not innermost: its body contains ε-terms")]
    NotInnermost(String),
    #[error("the conclusion {0} contains ε-terms")]
    EpsilonConclusion(String),
    #[error("premise {0} contains ε-terms")]
    EpsilonPremise(String),
    #[error("line {line} uses schema `{schema}`, which elimination does not handle for the target")]
    UnsupportedSchema { line: usize, schema: Schema },
    #[error("eigen-symbol `{0}` of a generalization occurs in the target ε-term")]
    EigenClash(String),
    #[error("formula {0} must have exactly one free variable")]
    FreeVariables(String),
    #[error("{0} is not proper")]
    Improper(String),
    #[error("no premise {0}")]
    BadSource(usize),
    #[error("{formula} is not an instance of the matrix {matrix}")]
    NotAnInstance { formula: String, matrix: String },
    #[error("formula {0} is not quantifier-free")]
    NotElementary(String),
    #[error("too many atoms for a truth table ({0})")]
    TooManyAtoms(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{0}")]
    Transform(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_names() {
        for p in ALL_PROFILES {
            assert_eq!(Profile::from_name(p.name()), Some(p));
        }
        assert_eq!(Profile::from_name("CP-EPS*"), Some(Profile::CpEpsStar));
    }

    #[test]
    fn schema_admission() {
        assert!(!Profile::Cp.admits_schema(Schema::Eps));
        assert!(Profile::CpEps.admits_schema(Schema::Eps2));
        assert!(!Profile::CpEpsStar.admits_schema(Schema::Eps2));
        assert!(!Profile::Ce.admits_schema(Schema::EpsExists));
        assert!(!Profile::CpiEps.admits_schema(Schema::Dne));
    }
}
