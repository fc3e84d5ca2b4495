//! First-order terms and formulas with Hilbert's ε-binder.

mod ast;
mod lexer;
mod ops;
mod parser;
mod printer;
mod signature;
mod symbol;

pub use ast::{Binder, Formula, Quantifier, Term};
pub use lexer::{is_keyword, lex, Spanned, Tok};
pub use ops::*;
pub use parser::{
    looks_like_variable, parse, parse_formula, parse_formula_tokens, parse_formula_with, parse_term,
    parse_term_tokens, parse_term_with, parse_with, DefBody, Definition, ParseContext, ParseError, ParseErrorKind,
    Parsed, Parser,
};
pub use printer::{formula_to_string, needs_declaration, term_to_string, Style};
pub use signature::Signature;
pub use symbol::Symbol;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("variable `{0}` is not free in the formula")]
    NotFree(String),
    #[error("`{symbol}` takes {expected} argument(s), given {found}")]
    Arity { symbol: String, expected: usize, found: usize },
    #[error("`{0}` used both as a function and as a predicate")]
    KindConflict(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("bound index {0} has no enclosing binder")]
    DanglingIndex(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// α-equivalence. Binders are indices, so this is structural equality.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    a == b
}

pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    a == b
}

/// Epsilon rank of either syntactic category.
pub fn rank_of(p: &Parsed) -> usize {
    match p {
        Parsed::Formula(f) => epsilon_rank(f),
        Parsed::Term(t) => epsilon_rank_term(t),
    }
}
