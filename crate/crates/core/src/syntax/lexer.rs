use super::parser::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Forall,
    Exists,
    Eps,
    Not,
    And,
    Or,
    Arrow,
    Iff,
    True,
    False,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Define,
    Semicolon,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Star,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Num(s) => format!("`{s}`"),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Forall => "forall",
            Tok::Exists => "exists",
            Tok::Eps => "eps",
            Tok::Not => "not",
            Tok::And => "and",
            Tok::Or => "or",
            Tok::Arrow => "->",
            Tok::Iff => "<->",
            Tok::True => "true",
            Tok::False => "false",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Define => ":=",
            Tok::Semicolon => ";",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::Ident(_) | Tok::Num(_) => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn is_keyword(s: &str) -> bool {
    keyword(s).is_some()
}

fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "forall" => Tok::Forall,
        "exists" => Tok::Exists,
        "eps" => Tok::Eps,
        "not" => Tok::Not,
        "and" => Tok::And,
        "or" => Tok::Or,
        "true" => Tok::True,
        "false" => Tok::False,
        _ => return None,
    })
}

/// Tokenize; `#` starts a comment running to end of line. Line and column
/// numbers are 1-based and offset by `first_line - 1`.
pub fn lex(src: &str, first_line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut col = 1;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: l0, col: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, keyword(&word).unwrap_or(Tok::Ident(word)));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            push(&mut out, Tok::Num(chars[start..i].iter().collect()));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let next2 = chars.get(i + 2).copied();
        let (tok, len) = match (c, next, next2) {
            ('<', Some('-'), Some('>')) => (Tok::Iff, 3),
            ('-', Some('>'), _) => (Tok::Arrow, 2),
            ('=', Some('>'), _) => (Tok::Arrow, 2),
            ('<', Some('='), _) => (Tok::Le, 2),
            ('>', Some('='), _) => (Tok::Ge, 2),
            ('!', Some('='), _) => (Tok::Neq, 2),
            (':', Some('='), _) => (Tok::Define, 2),
            ('<', _, _) => (Tok::Lt, 1),
            ('>', _, _) => (Tok::Gt, 1),
            ('=', _, _) => (Tok::Eq, 1),
            ('(', _, _) => (Tok::LParen, 1),
            (')', _, _) => (Tok::RParen, 1),
            ('[', _, _) => (Tok::LBracket, 1),
            (']', _, _) => (Tok::RBracket, 1),
            ('{', _, _) => (Tok::LBrace, 1),
            ('}', _, _) => (Tok::RBrace, 1),
            (',', _, _) => (Tok::Comma, 1),
            ('.', _, _) => (Tok::Dot, 1),
            (':', _, _) => (Tok::Colon, 1),
            (';', _, _) => (Tok::Semicolon, 1),
            ('+', _, _) => (Tok::Plus, 1),
            ('*', _, _) => (Tok::Star, 1),
            ('~', _, _) | ('¬', _, _) => (Tok::Not, 1),
            ('&', _, _) | ('∧', _, _) => (Tok::And, 1),
            ('|', _, _) | ('∨', _, _) => (Tok::Or, 1),
            ('∀', _, _) => (Tok::Forall, 1),
            ('∃', _, _) => (Tok::Exists, 1),
            ('ε', _, _) => (Tok::Eps, 1),
            ('→', _, _) | ('⇒', _, _) => (Tok::Arrow, 1),
            ('↔', _, _) | ('⇔', _, _) => (Tok::Iff, 1),
            ('≠', _, _) => (Tok::Neq, 1),
            ('≤', _, _) => (Tok::Le, 1),
            ('≥', _, _) => (Tok::Ge, 1),
            ('⊤', _, _) => (Tok::True, 1),
            ('⊥', _, _) => (Tok::False, 1),
            _ => {
                return Err(ParseError { kind: ParseErrorKind::InvalidCharacter(c), line: l0, col: c0 });
            }
        };
        push(&mut out, tok);
        i += len;
        col += len;
    }
    Ok(out)
}
