//! Kripke structures with world-dependent ε-choices.
//!
//! ```text
//! worlds w0 w1
//! individuals a b
//! edge w0 w1
//! root w0
//! domain w0 : a
//! domain w1 : a b
//! const c = a
//! pred P 1
//! pred P 1 @ w1 : b
//! pred Q 0 @ w1 : true
//! choice w1 b : eps x. P(x)
//! ```
//!
//! Accessibility is reflexive and closed under composition. Domains
//! default to every individual. A bare `pred` line declares a predicate
//! false everywhere; `@ WORLD : tuples` lists where it holds.

use crate::intuitionistic::{KripkeStructure, WorldChoice};
use crate::syntax::{parse_term, Term};

use super::{content_lines, head, lookup, parse_tuple, symbol_and_arity, tokens, FormatError};

#[derive(Clone, Debug)]
pub struct KripkeFile {
    pub structure: KripkeStructure,
    pub choice: WorldChoice,
    /// ε-terms in `choice` lines, in order of first appearance.
    pub choice_terms: Vec<Term>,
}

pub fn parse_kripke(src: &str) -> Result<KripkeFile, FormatError> {
    let mut worlds: Option<Vec<String>> = None;
    let mut ks: Option<KripkeStructure> = None;
    let mut choice = WorldChoice::new();
    let mut choice_terms = Vec::new();
    for (line, text) in content_lines(src) {
        let (kw, rest) = head(text);
        match kw {
            "worlds" => {
                if worlds.is_some() {
                    return Err(FormatError::new(line, "worlds given twice"));
                }
                worlds = Some(tokens(rest));
                continue;
            }
            "individuals" => {
                let ws = worlds.as_ref().ok_or_else(|| FormatError::new(line, "the worlds must come first"))?;
                if ks.is_some() {
                    return Err(FormatError::new(line, "individuals given twice"));
                }
                let w: Vec<&str> = ws.iter().map(String::as_str).collect();
                let names = tokens(rest);
                let i: Vec<&str> = names.iter().map(String::as_str).collect();
                ks = Some(KripkeStructure::new(&w, &i));
                continue;
            }
            _ => {}
        }
        let k = ks.as_mut().ok_or_else(|| FormatError::new(line, "worlds and individuals must come first"))?;
        let world = |k: &KripkeStructure, name: &str| lookup(&k.worlds, name, line, "world");
        match kw {
            "edge" => {
                let t = tokens(rest);
                let [a, b] = t.as_slice() else {
                    return Err(FormatError::new(line, "expected `edge FROM TO`"));
                };
                let (a, b) = (world(k, a)?, world(k, b)?);
                k.add_edge(a, b);
            }
            "root" => k.root = world(k, rest)?,
            "domain" => {
                let (w, list) =
                    rest.split_once(':').ok_or_else(|| FormatError::new(line, "expected `domain WORLD : individuals`"))?;
                let w = world(k, w.trim())?;
                let mut d = 0;
                for name in tokens(list) {
                    d |= 1 << lookup(&k.individuals, &name, line, "individual")?;
                }
                k.set_domain(w, d);
            }
            "const" => {
                let (name, value) =
                    rest.split_once('=').ok_or_else(|| FormatError::new(line, "expected `const NAME = INDIVIDUAL`"))?;
                let e = lookup(&k.individuals, value.trim(), line, "individual")?;
                k.set_constant(name.trim(), e);
            }
            "pred" => {
                let (name, arity, rest) = symbol_and_arity(rest, line)?;
                match k.predicates.get(name) {
                    Some(p) if p.arity != arity => {
                        return Err(FormatError::new(line, format!("`{name}` was declared with arity {}", p.arity)))
                    }
                    Some(_) => {}
                    None => k.declare(name, arity),
                }
                let Some(rest) = rest.strip_prefix('@') else {
                    if rest.is_empty() {
                        continue;
                    }
                    return Err(FormatError::new(line, "expected `@ WORLD : tuples`"));
                };
                let (w, list) = rest.split_once(':').ok_or_else(|| FormatError::new(line, "expected `@ WORLD : tuples`"))?;
                let w = world(k, w.trim())?;
                for tok in tokens(list) {
                    let t = if arity == 0 {
                        if tok != "true" {
                            return Err(FormatError::new(line, "a nullary predicate is listed as `true`"));
                        }
                        vec![]
                    } else {
                        parse_tuple(&tok, &k.individuals, line)?
                    };
                    if t.len() != arity {
                        return Err(FormatError::new(line, format!("`{tok}` is not a {arity}-tuple")));
                    }
                    k.set_true(name, w, &t);
                }
            }
            "choice" => {
                let (ws, term) =
                    rest.split_once(':').ok_or_else(|| FormatError::new(line, "expected `choice WORLD INDIVIDUAL : TERM`"))?;
                let t = tokens(ws);
                let [w, e] = t.as_slice() else {
                    return Err(FormatError::new(line, "expected `choice WORLD INDIVIDUAL : TERM`"));
                };
                let (w, e) = (world(k, w)?, lookup(&k.individuals, e, line, "individual")?);
                let term = parse_term(term.trim()).map_err(|err| FormatError::new(line, err.to_string()))?;
                if !matches!(term, Term::Eps(..)) {
                    return Err(FormatError::new(line, "choices are given for ε-terms"));
                }
                if !choice_terms.contains(&term) {
                    choice_terms.push(term.clone());
                }
                choice.set(&term, k.worlds.len(), w, e);
            }
            other => return Err(FormatError::new(line, format!("unknown declaration `{other}`"))),
        }
    }
    let structure = ks.ok_or_else(|| FormatError::new(0, "no worlds and individuals declared"))?;
    structure.validate().map_err(|e| FormatError::new(0, e.to_string()))?;
    Ok(KripkeFile { structure, choice, choice_terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intuitionistic::{kripke_force, Env};
    use crate::syntax::parse_formula;

    const SRC: &str = "worlds w0 w1\nindividuals a b\nedge w0 w1\ndomain w0 : a\npred P 1\npred P 1 @ w1 : b\n\
                       choice w0 a : eps x. P(x)\nchoice w1 b : eps x. P(x)\n";

    #[test]
    fn reads_structure() {
        let k = parse_kripke(SRC).unwrap();
        let s = &k.structure;
        assert!(s.access[0][1] && !s.access[1][0]);
        assert_eq!(s.domains, vec![0b01, 0b11]);
        let f = parse_formula("P(eps x. P(x))").unwrap();
        assert!(!kripke_force(s, 0, &f, &Env::new(), &k.choice).unwrap());
        assert!(kripke_force(s, 1, &f, &Env::new(), &k.choice).unwrap());
        assert_eq!(k.choice_terms.len(), 1);
    }

    #[test]
    fn refuses_non_monotone() {
        let e = parse_kripke("worlds w0 w1\nindividuals a\nedge w0 w1\npred P 1 @ w0 : a\n").unwrap_err();
        assert!(e.message.contains("holds at"), "{e}");
        assert_eq!(parse_kripke("edge w0 w1").unwrap_err().line, 1);
    }
}
