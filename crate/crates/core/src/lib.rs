//! Hilbert's ε-calculus at desk scale: syntax, quantifier translations,
//! classical choice-function semantics, intuitionistic Kripke and
//! topological semantics, a Hilbert-style proof kernel with ε-elimination,
//! and the ε-substitution method for quantifier-free arithmetic.

pub mod syntax;
pub mod transform;
pub mod arith;
pub mod classical;
pub mod intuitionistic;
pub mod proof;
pub mod hsubst;
pub mod formats;
pub mod cli;
