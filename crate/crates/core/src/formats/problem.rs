//! Critical-formula sets: `def Name(params) := body` declarations, then one
//! critical formula `F(t) -> F(eps x. F(x))` per line. Declarations expand
//! where they are used.

use crate::hsubst::decompose_critical;
use crate::proof::CriticalFormula;
use crate::syntax::{parse_formula_with, ParseContext};

use super::{content_lines, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub formulas: Vec<CriticalFormula>,
}

pub fn parse_problem(src: &str) -> Result<Problem, FormatError> {
    let mut ctx = ParseContext::new();
    let mut formulas = Vec::new();
    for (line, text) in content_lines(src) {
        if let Some(rest) = text.strip_prefix("def ") {
            if !formulas.is_empty() {
                return Err(FormatError::new(line, "declarations must precede the critical formulas"));
            }
            ctx.define(rest, line).map_err(|e| FormatError::new(line, e.to_string()))?;
            continue;
        }
        let f = parse_formula_with(text, &ctx).map_err(|e| FormatError::new(line, e.to_string()))?;
        formulas.push(decompose_critical(&f, line).map_err(|e| FormatError::new(line, e.to_string()))?);
    }
    Ok(Problem { formulas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;

    #[test]
    fn header_then_formulas() {
        let p = parse_problem("# demo\ndef F(x) := x + x = 4\n\nF(2) -> F(eps x. F(x))\n").unwrap();
        assert_eq!(p.formulas.len(), 1);
        assert_eq!(p.formulas[0].line, 4);
        assert_eq!(p.formulas[0].witness, Term::numeral(2));
    }

    #[test]
    fn late_declaration_refused() {
        let e = parse_problem("0 = 0 -> (eps x. x = 0) = 0\ndef F(x) := x = 1").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(parse_problem("P(c) -> P(d)").unwrap_err().line, 1);
    }
}
