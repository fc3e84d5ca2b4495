use std::fmt;

use serde::Serialize;

use crate::arith::{ArithEval, ArithInterp};
use crate::syntax::{abstract_var, free_vars, instantiate, parse_formula, Binder, Formula, Term};

use super::HsubstError;

pub const BATTERY_CAP: u64 = 20;

/// Decidable unary predicates over `x`, several with empty extension below
/// the cap and several with bounded quantifiers.
pub const BATTERY: [&str; 20] = [
    "0 <= x",
    "3 <= x",
    "x + x = 4",
    "x * x = 9",
    "x = x",
    "x != x",
    "x < 0",
    "5 < x",
    "x * x = x",
    "x + 1 = 7",
    "x * 3 = 12",
    "2 < x and x < 5",
    "x = 2 or x = 11",
    "0 < x and exists y. y + y = x",
    "not x < 10",
    "x * x + 1 = 17",
    "x + 2 = 2 * x",
    "7 <= x * x",
    "4 < x and exists y. y * y = x",
    "1 < x and forall y. (1 < y and y < x -> forall z. y * z != x)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SchemaKind {
    /// `A(t) ⇒ A(ε_A)`
    Eps,
    /// `¬A(ε_A) ⇒ ¬A(t)`
    E1,
    /// `ε_A = t+1 ⇒ ¬A(t)`
    E2,
    /// `A(t) ⇒ ε_A ≤ t`
    LeastBound,
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemaKind::Eps => "eps",
            SchemaKind::E1 => "E1",
            SchemaKind::E2 => "E2",
            SchemaKind::LeastBound => "least",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaViolation {
    pub schema: SchemaKind,
    pub t: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1E2Report {
    pub predicate: String,
    pub cap: u64,
    pub eps_value: u64,
    /// Schema instances evaluated.
    pub instances: usize,
    pub violations: Vec<SchemaViolation>,
}

impl E1E2Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for E1E2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: eps = {}, {} instances, {} violation(s)",
            self.predicate,
            self.eps_value,
            self.instances,
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\n  {} fails at t = {}", v.schema, v.t)?;
        }
        Ok(())
    }
}

/// Evaluate (ε), (E1), (E2) and `A(t) ⇒ ε_A ≤ t` for every numeral
/// `t < cap`, reading ε as the least number.
pub fn check_e1_e2(a: &Formula, interp: &ArithInterp, cap: u64) -> Result<E1E2Report, HsubstError> {
    let fv = free_vars(a);
    let [x] = fv.iter().collect::<Vec<_>>()[..] else {
        return Err(HsubstError::FreeVariables(a.to_string()));
    };
    let body = abstract_var(a, x);
    let eps = Term::Eps(Binder(x.clone()), Box::new(body.clone()));
    let interp = ArithInterp { cap, ..interp.clone() };
    let ev = ArithEval::new(&interp);
    let eps_value = ev.term(&eps)?;
    let mut report = E1E2Report { predicate: a.to_string(), cap, eps_value, instances: 0, violations: vec![] };
    for n in 0..cap {
        let t = Term::numeral(n);
        let at_t = instantiate(&body, &t);
        let at_eps = instantiate(&body, &eps);
        let instances = [
            (SchemaKind::Eps, Formula::implies(at_t.clone(), at_eps.clone())),
            (SchemaKind::E1, Formula::implies(Formula::not(at_eps), Formula::not(at_t.clone()))),
            (SchemaKind::E2, Formula::implies(Formula::eq(eps.clone(), Term::succ(t.clone())), Formula::not(at_t.clone()))),
            (SchemaKind::LeastBound, Formula::implies(at_t, Formula::le(eps.clone(), t))),
        ];
        for (schema, f) in instances {
            report.instances += 1;
            if !ev.formula(&f)? {
                report.violations.push(SchemaViolation { schema, t: n });
            }
        }
    }
    Ok(report)
}

/// The whole battery at `cap`.
pub fn check_battery(cap: u64) -> Result<Vec<E1E2Report>, HsubstError> {
    let interp = ArithInterp::new(cap);
    BATTERY
        .iter()
        .map(|src| {
            let a = parse_formula(src).map_err(|e| HsubstError::NotCritical(format!("{src}: {e}")))?;
            check_e1_e2(&a, &interp, cap)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_le_x() {
        let r = check_e1_e2(&parse_formula("x >= 3").unwrap(), &ArithInterp::new(20), 20).unwrap();
        assert_eq!(r.eps_value, 3);
        assert!(r.ok());
        assert_eq!(r.instances, 80);
    }

    #[test]
    fn empty_extension() {
        let r = check_e1_e2(&parse_formula("x != x").unwrap(), &ArithInterp::new(20), 20).unwrap();
        assert_eq!(r.eps_value, 0);
        assert!(r.ok());
    }

    #[test]
    fn witness_beyond_cap_is_reported() {
        let r = check_e1_e2(&parse_formula("x = 11").unwrap(), &ArithInterp::new(5), 5);
        assert!(matches!(r, Err(HsubstError::Arith(crate::arith::ArithError::CapExceeded { .. }))));
        assert!(check_e1_e2(&parse_formula("x = y").unwrap(), &ArithInterp::new(5), 5).is_err());
    }
}
