//! Plain-text input files for the command-line tool. Every format is line
//! based: one declaration per line, `#` starts a comment.

mod kripke;
mod model;
mod problem;
mod space;

pub use kripke::{parse_kripke, KripkeFile};
pub use model::{parse_model, ModelFile};
pub use problem::{parse_problem, Problem};
pub use space::{parse_space, SpaceFile};

use crate::classical::{Elem, Mask};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError { line, message: message.into() }
    }
}

/// Lines with `#` comments removed, numbered from 1, blank lines skipped.
pub fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Whitespace-separated tokens, with blanks inside `{...}` dropped so that
/// `{a, b}` stays one token.
pub(crate) fn tokens(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '{' => {
                depth += 1;
                cur.push(c);
            }
            '}' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            c if c.is_whitespace() => {
                if depth == 0 && !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Split `keyword rest`.
pub(crate) fn head(text: &str) -> (&str, &str) {
    match text.split_once(char::is_whitespace) {
        Some((k, r)) => (k, r.trim()),
        None => (text, ""),
    }
}

pub(crate) fn lookup(names: &[String], name: &str, line: usize, what: &str) -> Result<Elem, FormatError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| FormatError::new(line, format!("unknown {what} `{name}`")))
}

/// `{a,b}` over `names`.
pub(crate) fn parse_set(tok: &str, names: &[String], line: usize) -> Result<Mask, FormatError> {
    let inner = tok
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| FormatError::new(line, format!("expected a set like {{a,b}}, found `{tok}`")))?;
    let mut m: Mask = 0;
    for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        m |= 1 << lookup(names, name, line, "point")?;
    }
    Ok(m)
}

/// `a,b` over `names`; the empty string is the empty tuple.
pub(crate) fn parse_tuple(tok: &str, names: &[String], line: usize) -> Result<Vec<Elem>, FormatError> {
    if tok.is_empty() || tok == "()" {
        return Ok(vec![]);
    }
    tok.split(',').map(|n| lookup(names, n.trim(), line, "individual")).collect()
}

/// `NAME ARITY` followed by the rest of the line.
pub(crate) fn symbol_and_arity(rest: &str, line: usize) -> Result<(&str, usize, &str), FormatError> {
    let (name, rest) = head(rest);
    let (arity, rest) = head(rest);
    let arity = arity
        .parse()
        .map_err(|_| FormatError::new(line, format!("expected an arity after `{name}`, found `{arity}`")))?;
    if name.is_empty() {
        return Err(FormatError::new(line, "missing symbol name"));
    }
    Ok((name, arity, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braces_keep_together() {
        assert_eq!(tokens("P 1 : d={a, b}  e={}"), vec!["P", "1", ":", "d={a,b}", "e={}"]);
    }

    #[test]
    fn sets_and_tuples() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_set("{a,c}", &names, 1).unwrap(), 0b101);
        assert_eq!(parse_set("{}", &names, 1).unwrap(), 0);
        assert!(parse_set("{d}", &names, 3).is_err());
        assert_eq!(parse_tuple("b,a", &names, 1).unwrap(), vec![1, 0]);
    }
}
