//! Finite topological spaces with an interpretation in their opens.
//!
//! ```text
//! points a b c
//! opens {} {a} {a,b} {a,b,c}
//! individuals d e
//! const k = d
//! pred P 0 : {a}
//! pred R 1 : d={a} e={a,b}
//! ```
//!
//! `opens` may repeat; the family is validated as a topology. Without an
//! `individuals` line there is a single individual `*`. Unlisted tuples of
//! a predicate get the empty open.

use crate::classical::tuple_index;
use crate::intuitionistic::{FiniteTopSpace, TopInterp};

use super::{content_lines, head, lookup, parse_set, parse_tuple, symbol_and_arity, tokens, FormatError};

#[derive(Clone, Debug)]
pub struct SpaceFile {
    pub space: FiniteTopSpace,
    pub interp: TopInterp,
}

pub fn parse_space(src: &str) -> Result<SpaceFile, FormatError> {
    let mut points: Option<Vec<String>> = None;
    let mut opens = Vec::new();
    let mut opens_line = 0;
    let mut interp = TopInterp::propositional();
    let mut preds = Vec::new();
    let mut consts = Vec::new();
    for (line, text) in content_lines(src) {
        let (kw, rest) = head(text);
        match kw {
            "points" => {
                if points.is_some() {
                    return Err(FormatError::new(line, "points given twice"));
                }
                points = Some(tokens(rest));
            }
            "opens" => {
                let p = points.as_ref().ok_or_else(|| FormatError::new(line, "the points must come first"))?;
                for tok in tokens(rest) {
                    opens.push(parse_set(&tok, p, line)?);
                }
                opens_line = line;
            }
            "individuals" => interp.individuals = tokens(rest),
            "const" => consts.push((line, rest)),
            "pred" => preds.push((line, rest)),
            other => return Err(FormatError::new(line, format!("unknown declaration `{other}`"))),
        }
    }
    let points = points.ok_or_else(|| FormatError::new(0, "no points declared"))?;
    let space = FiniteTopSpace::new(points.clone(), opens).map_err(|e| FormatError::new(opens_line, e.to_string()))?;
    for (line, rest) in consts {
        let (name, value) =
            rest.split_once('=').ok_or_else(|| FormatError::new(line, "expected `const NAME = INDIVIDUAL`"))?;
        let e = lookup(&interp.individuals, value.trim(), line, "individual")?;
        interp.set_constant(name.trim(), e);
    }
    for (line, rest) in preds {
        let (name, arity, rest) = symbol_and_arity(rest, line)?;
        let body = rest.strip_prefix(':').unwrap_or(rest);
        let n = interp.individuals.len();
        let mut table = vec![0; n.pow(arity as u32)];
        for tok in tokens(body) {
            let (args, set) = if arity == 0 {
                ("", tok.as_str())
            } else {
                tok.split_once('=').ok_or_else(|| FormatError::new(line, format!("expected TUPLE={{..}}, found `{tok}`")))?
            };
            let t = parse_tuple(args, &interp.individuals, line)?;
            if t.len() != arity {
                return Err(FormatError::new(line, format!("`{args}` is not a {arity}-tuple")));
            }
            let x = parse_set(set, &points, line)?;
            if !space.is_open(x) {
                return Err(FormatError::new(line, format!("{} is not open", space.describe(x))));
            }
            table[tuple_index(&t, n)] = x;
        }
        interp.set(name, arity, table);
    }
    Ok(SpaceFile { space, interp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intuitionistic::heyting_eval;
    use crate::syntax::parse_formula;
    use std::collections::BTreeMap;

    #[test]
    fn three_point_gap() {
        let f = parse_space("points a b c\nopens {} {a} {a, b} {a,c} {a,b,c}\npred X 0 : {a}\n").unwrap();
        let eval = |s: &str| heyting_eval(&parse_formula(s).unwrap(), &f.space, &f.interp, &BTreeMap::new()).unwrap();
        assert_eq!(eval("X"), 0b001);
        assert_eq!(eval("not not X"), 0b111);
        assert_eq!(eval("X or not X"), 0b001);
    }

    #[test]
    fn rejects_non_topology_and_closed_values() {
        let e = parse_space("points a b\nopens {} {a} {b}\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_space("points a b\nopens {} {a} {a,b}\npred X 0 : {b}\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn unary_predicates() {
        let f = parse_space("points a b\nopens {} {a} {a,b}\nindividuals d e\npred R 1 : d={a} e={a,b}\n").unwrap();
        let eval = |s: &str| heyting_eval(&parse_formula(s).unwrap(), &f.space, &f.interp, &BTreeMap::new()).unwrap();
        assert_eq!(eval("forall x. R(x)"), 0b01);
    }
}
