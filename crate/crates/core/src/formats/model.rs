//! Finite classical models.
//!
//! ```text
//! universe a b c
//! const c = a
//! func f 1 : a->b b->c c->a
//! pred P 1 : a c
//! pred R 2 : a,b b,c
//! phi {a,b} = b
//! ```
//!
//! Predicates list their true tuples; functions must cover every tuple.
//! `phi` lines give an explicit choice function: unlisted subsets take
//! their least element and the empty set follows the universe unless set.

use crate::classical::{full_mask, tuple_index, tuples, ChoiceFunction, Elem, FiniteModel, MAX_TABLE_UNIVERSE};

use super::{content_lines, head, lookup, parse_set, parse_tuple, symbol_and_arity, tokens, FormatError};

#[derive(Clone, Debug)]
pub struct ModelFile {
    pub model: FiniteModel,
    /// `None` when the file has no `phi` lines.
    pub choice: Option<ChoiceFunction>,
}

pub fn parse_model(src: &str) -> Result<ModelFile, FormatError> {
    let mut model: Option<FiniteModel> = None;
    let mut phi: Vec<(usize, u64, Elem)> = Vec::new();
    for (line, text) in content_lines(src) {
        let (kw, rest) = head(text);
        if kw == "universe" {
            if model.is_some() {
                return Err(FormatError::new(line, "universe given twice"));
            }
            let names = tokens(rest);
            model = Some(FiniteModel::new(names).map_err(|e| FormatError::new(line, e.to_string()))?);
            continue;
        }
        let m = model.as_mut().ok_or_else(|| FormatError::new(line, "the universe must come first"))?;
        let names: Vec<String> = m.names().to_vec();
        match kw {
            "const" => {
                let (name, value) =
                    rest.split_once('=').ok_or_else(|| FormatError::new(line, "expected `const NAME = ELEMENT`"))?;
                let e = lookup(&names, value.trim(), line, "element")?;
                m.set_constant(name.trim(), e).map_err(|e| FormatError::new(line, e.to_string()))?;
            }
            "pred" => {
                let (name, arity, rest) = symbol_and_arity(rest, line)?;
                let body = rest.strip_prefix(':').unwrap_or(rest);
                let mut table = vec![false; names.len().pow(arity as u32)];
                for tok in tokens(body) {
                    if arity == 0 {
                        table[0] = match tok.as_str() {
                            "true" => true,
                            "false" => false,
                            _ => return Err(FormatError::new(line, "a nullary predicate is `true` or `false`")),
                        };
                        continue;
                    }
                    let t = parse_tuple(&tok, &names, line)?;
                    if t.len() != arity {
                        return Err(FormatError::new(line, format!("`{tok}` is not a {arity}-tuple")));
                    }
                    table[tuple_index(&t, names.len())] = true;
                }
                m.set_predicate(name, arity, table).map_err(|e| FormatError::new(line, e.to_string()))?;
            }
            "func" => {
                let (name, arity, rest) = symbol_and_arity(rest, line)?;
                let body = rest.strip_prefix(':').unwrap_or(rest);
                let mut table: Vec<Option<Elem>> = vec![None; names.len().pow(arity as u32)];
                for tok in tokens(body) {
                    let (args, value) = tok
                        .split_once("->")
                        .ok_or_else(|| FormatError::new(line, format!("expected ARGS->VALUE, found `{tok}`")))?;
                    let t = parse_tuple(args, &names, line)?;
                    if t.len() != arity {
                        return Err(FormatError::new(line, format!("`{args}` is not a {arity}-tuple")));
                    }
                    table[tuple_index(&t, names.len())] = Some(lookup(&names, value, line, "element")?);
                }
                let table = tuples(names.len(), arity)
                    .zip(table)
                    .map(|(t, v)| {
                        v.ok_or_else(|| {
                            let args: Vec<&str> = t.iter().map(|e| names[*e].as_str()).collect();
                            FormatError::new(line, format!("no value for {name}({})", args.join(",")))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                m.set_function(name, arity, table).map_err(|e| FormatError::new(line, e.to_string()))?;
            }
            "phi" => {
                let (set, value) =
                    rest.split_once('=').ok_or_else(|| FormatError::new(line, "expected `phi {..} = ELEMENT`"))?;
                let x = parse_set(&tokens(set).concat(), &names, line)?;
                phi.push((line, x, lookup(&names, value.trim(), line, "element")?));
            }
            other => return Err(FormatError::new(line, format!("unknown declaration `{other}`"))),
        }
    }
    let model = model.ok_or_else(|| FormatError::new(0, "no universe declared"))?;
    let choice = if phi.is_empty() { None } else { Some(choice_table(&model, &phi)?) };
    Ok(ModelFile { model, choice })
}

fn choice_table(model: &FiniteModel, phi: &[(usize, u64, Elem)]) -> Result<ChoiceFunction, FormatError> {
    let n = model.size();
    let line = phi[0].0;
    if n > MAX_TABLE_UNIVERSE {
        return Err(FormatError::new(line, format!("explicit choice tables stop at {MAX_TABLE_UNIVERSE} elements")));
    }
    let mut table = ChoiceFunction::Min.to_table(n);
    let mut empty_set = false;
    for &(_, x, e) in phi {
        table[x as usize] = e;
        empty_set |= x == 0;
    }
    if !empty_set {
        table[0] = table[full_mask(n) as usize];
    }
    let cf = ChoiceFunction::Table(table);
    cf.validate(n).map_err(|e| FormatError::new(line, e.to_string()))?;
    Ok(cf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::eval_sentence;
    use crate::syntax::parse_formula;

    const SRC: &str = "universe a b c\nconst c = b\nfunc f 1 : a->b b->c c->a\npred P 1 : a c\npred R 2 : a,b\n";

    #[test]
    fn reads_tables() {
        let m = parse_model(SRC).unwrap();
        assert!(m.choice.is_none());
        let yes = |s: &str| eval_sentence(&parse_formula(s).unwrap(), &m.model, &ChoiceFunction::Min).unwrap();
        assert!(yes("P(f(c))"));
        assert!(yes("R(a, f(a))"));
        assert!(!yes("P(c)"));
    }

    #[test]
    fn explicit_phi() {
        let m = parse_model(&format!("{SRC}phi {{a, c}} = c\nphi {{a,b,c}} = b\n")).unwrap();
        let cf = m.choice.unwrap();
        assert_eq!(cf.choose(0b101, 3), 2);
        assert_eq!(cf.choose(0, 3), 1);
        let bad = parse_model(&format!("{SRC}phi {{a,c}} = b\n")).unwrap_err();
        assert_eq!(bad.line, 6);
    }

    #[test]
    fn incomplete_function() {
        let e = parse_model("universe a b\nfunc f 1 : a->b\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_model("const c = a").is_err());
    }
}
