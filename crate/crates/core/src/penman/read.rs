//! Reader for the Penman text produced by [`super::render_penman`].
//!
//! Attribute values are always quoted; an unquoted symbol after a role is a
//! reference to an already declared variable.

use super::{NamedTriple, PenmanError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Slash,
    Role(String),
    Str(String),
    Sym(String),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PenmanError> {
    let mut toks = Vec::new();
    let mut it = text.char_indices().peekable();
    let syntax = |offset, message: &str| PenmanError::Syntax { offset, message: message.to_string() };
    let is_delim = |c: char| c.is_whitespace() || matches!(c, '(' | ')' | '"' | '/');
    while let Some(&(i, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '(' | ')' | '/' => {
                it.next();
                toks.push((
                    i,
                    match c {
                        '(' => Tok::Open,
                        ')' => Tok::Close,
                        _ => Tok::Slash,
                    },
                ));
            }
            '"' => {
                it.next();
                let mut s = String::new();
                loop {
                    match it.next() {
                        Some((_, '\\')) => match it.next() {
                            Some((_, e)) => s.push(e),
                            None => return Err(syntax(i, "unterminated string")),
                        },
                        Some((_, '"')) => break,
                        Some((_, ch)) => s.push(ch),
                        None => return Err(syntax(i, "unterminated string")),
                    }
                }
                toks.push((i, Tok::Str(s)));
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, ch)) = it.peek() {
                    if is_delim(ch) {
                        break;
                    }
                    s.push(ch);
                    it.next();
                }
                match s.strip_prefix(':') {
                    Some("") => return Err(syntax(i, "empty role")),
                    Some(role) => toks.push((i, Tok::Role(role.to_string()))),
                    None => toks.push((i, Tok::Sym(s))),
                }
            }
        }
    }
    Ok(toks)
}

struct Reader {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    out: Vec<NamedTriple>,
}

impl Reader {
    fn err(&self, message: &str) -> PenmanError {
        let offset = self.toks.get(self.at).map_or(self.end, |t| t.0);
        PenmanError::Syntax { offset, message: message.to_string() }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn node(&mut self) -> Result<String, PenmanError> {
        if self.next() != Some(Tok::Open) {
            return Err(self.err("expected `(`"));
        }
        let Some(Tok::Sym(var)) = self.next() else {
            return Err(self.err("expected variable"));
        };
        if self.next() != Some(Tok::Slash) {
            return Err(self.err("expected `/`"));
        }
        let label = match self.next() {
            Some(Tok::Sym(s) | Tok::Str(s)) => s,
            _ => return Err(self.err("expected concept label")),
        };
        self.out.push(NamedTriple::Instance(var.clone(), label));
        loop {
            match self.next() {
                Some(Tok::Close) => return Ok(var),
                Some(Tok::Role(role)) => match self.toks.get(self.at).map(|t| &t.1) {
                    Some(Tok::Open) => {
                        let child = self.node()?;
                        self.out.push(NamedTriple::Relation(var.clone(), role, child));
                    }
                    Some(Tok::Str(v)) => {
                        let v = v.clone();
                        self.at += 1;
                        self.out.push(NamedTriple::Attribute(var.clone(), role, v));
                    }
                    Some(Tok::Sym(t)) => {
                        let t = t.clone();
                        self.at += 1;
                        self.out.push(NamedTriple::Relation(var.clone(), role, t));
                    }
                    _ => return Err(self.err("expected role value")),
                },
                _ => return Err(self.err("expected role or `)`")),
            }
        }
    }
}

/// Reads one or more top-level graphs into named triples, in reading order.
pub fn read_penman(text: &str) -> Result<Vec<NamedTriple>, PenmanError> {
    let toks = lex(text)?;
    let mut r = Reader { toks, at: 0, end: text.len(), out: Vec::new() };
    while r.at < r.toks.len() {
        r.node()?;
    }
    Ok(r.out)
}
