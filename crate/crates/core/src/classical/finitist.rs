use serde::Serialize;

use crate::arith::{ArithError, ArithEval, ArithInterp};
use crate::syntax::{free_vars, parse_formula, Formula, Symbol, Term};

/// The order axioms: irreflexive, transitive, total, no greatest element,
/// a least element.
pub fn a1_a5_axioms() -> Vec<Formula> {
    [
        "forall x. not x < x",
        "forall x. forall y. forall z. x < y and y < z -> x < z",
        "forall x. forall y. x < y or y < x or x = y",
        "forall x. exists y. x < y",
        "exists x. forall y. x = y or x < y",
    ]
    .iter()
    .map(|s| parse_formula(s).expect("fixed source"))
    .collect()
}

/// Naturals with `g` defined by `g_body` over `x` and `s` = 0.
pub fn a1_a5_interp(cap: u64, g_body: Term) -> ArithInterp {
    ArithInterp::new(cap).with_term_fn("g", &["x"], g_body).with_term_fn("s", &[], Term::numeral(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixCounterexample {
    pub matrix: usize,
    pub formula: String,
    pub assignment: Vec<(String, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixReport {
    pub cap: u64,
    pub matrices: usize,
    pub instances: u64,
    pub counterexample: Option<MatrixCounterexample>,
}

impl MatrixReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl std::fmt::Display for MatrixReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.counterexample {
            None => write!(f, "{} matrices, {} instances below {}: all true", self.matrices, self.instances, self.cap),
            Some(c) => {
                let a: Vec<String> = c.assignment.iter().map(|(v, n)| format!("{v}={n}")).collect();
                write!(f, "matrix {} ({}) fails at {}", c.matrix + 1, c.formula, a.join(", "))
            }
        }
    }
}

/// Substitute every tuple of numerals below `cap` for the free variables of
/// each matrix and evaluate. Function values are not truncated, so
/// `g(cap - 1)` may be `cap`.
pub fn verify_matrices(matrices: &[Formula], cap: u64, interp: &ArithInterp) -> Result<MatrixReport, ArithError> {
    let mut report = MatrixReport { cap, matrices: matrices.len(), instances: 0, counterexample: None };
    for (i, m) in matrices.iter().enumerate() {
        let vars: Vec<Symbol> = free_vars(m).into_iter().collect();
        if cap == 0 && !vars.is_empty() {
            continue;
        }
        let mut vals = vec![0u64; vars.len()];
        loop {
            report.instances += 1;
            let env = vars.iter().cloned().zip(vals.iter().copied()).collect();
            if !ArithEval::new(interp).with_env(env).formula(m)? {
                report.counterexample = Some(MatrixCounterexample {
                    matrix: i,
                    formula: m.to_string(),
                    assignment: vars.iter().map(|v| v.to_string()).zip(vals.iter().copied()).collect(),
                });
                return Ok(report);
            }
            if !advance(&mut vals, cap) {
                break;
            }
        }
    }
    Ok(report)
}

/// Odometer step, last position fastest. False once every tuple is done.
fn advance(vals: &mut [u64], cap: u64) -> bool {
    for v in vals.iter_mut().rev() {
        *v += 1;
        if *v < cap {
            return true;
        }
        *v = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::transform::{matrices, skolem_resolve};

    #[test]
    fn successor_and_least_element_satisfy_matrices() {
        let res = skolem_resolve(&a1_a5_axioms()).unwrap();
        let ms = matrices(&res.axioms);
        assert_eq!(ms.len(), 5);
        let r = verify_matrices(&ms, 10, &a1_a5_interp(10, parse_term("x + 1").unwrap())).unwrap();
        assert!(r.passed(), "{r}");
        // 10 + 1000 + 100 + 10 + 10
        assert_eq!(r.instances, 1130);
    }

    #[test]
    fn identity_skolem_function_fails_at_zero() {
        let a4 = parse_formula("x < g(x)").unwrap();
        let r = verify_matrices(&[a4], 3, &a1_a5_interp(3, parse_term("x").unwrap())).unwrap();
        let c = r.counterexample.unwrap();
        assert_eq!(c.assignment, vec![("x".to_string(), 0)]);
    }

    #[test]
    fn empty_list_passes() {
        let r = verify_matrices(&[], 10, &ArithInterp::new(10)).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 0);
    }
}
