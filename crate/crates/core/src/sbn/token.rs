//! Lexing of Simplified Box Notation text.
//!
//! Tokens are whitespace separated. A token that starts with `"` runs to the
//! next `"` on the same line and may contain spaces. A `%` at the start of a
//! token opens a comment that runs to the end of the line.

use std::fmt;

use serde::Serialize;

use super::synset::SynsetId;
use super::vocab::Vocabulary;
use super::SbnError;

/// 1-based line and column (in characters) of a token's first character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Token text; for quoted literals this is the content between the quotes.
    pub text: String,
    pub quoted: bool,
    pub pos: Position,
}

impl Token {
    pub fn bare(text: impl Into<String>) -> Self {
        Token { text: text.into(), quoted: false, pos: Position::default() }
    }

    pub fn literal(text: impl Into<String>) -> Self {
        Token { text: text.into(), quoted: true, pos: Position::default() }
    }

    /// Surface form as it would be written in a document.
    pub fn surface(&self) -> String {
        if self.quoted {
            format!("\"{}\"", self.text)
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TokenClass {
    Synset,
    DiscourseRelation,
    EdgeLabel,
    Operator,
    NodeRef,
    Constant,
    Literal,
    BoxRef,
}

/// Which grammatical slot the parser is about to fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// Start of a node, a discourse relation, or an edge label.
    Label,
    /// The target following an edge label.
    Target,
}

pub fn tokenize_sbn(text: &str) -> Result<Vec<Token>, SbnError> {
    let mut tokens = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let pos = Position { line: line_no, column: i + 1 };
            if c == '%' {
                break;
            }
            if c == '"' {
                let start = i + 1;
                let end = chars[start..]
                    .iter()
                    .position(|&c| c == '"')
                    .map(|off| start + off)
                    .ok_or(SbnError::UnterminatedLiteral { pos })?;
                tokens.push(Token { text: chars[start..end].iter().collect(), quoted: true, pos });
                i = end + 1;
                continue;
            }
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            tokens.push(Token { text: chars[start..i].iter().collect(), quoted: false, pos });
        }
    }
    Ok(tokens)
}

fn is_all_upper(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_uppercase() || c == '_' || c.is_ascii_digit())
        && s.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

/// Parses `<k` with k >= 1.
pub(crate) fn box_ref_offset(s: &str) -> Option<usize> {
    let digits = s.strip_prefix('<')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses an explicitly signed integer such as `-2` or `+1`.
pub(crate) fn node_ref_offset(s: &str) -> Option<i64> {
    let (sign, digits) = match s.as_bytes().first()? {
        b'+' => (1, &s[1..]),
        b'-' => (-1, &s[1..]),
        _ => return None,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<i64>().ok().map(|v| sign * v)
}

/// Assigns a class to `token` given the slot being filled and the following token.
pub fn classify_token(
    token: &Token,
    slot: Slot,
    next: Option<&Token>,
    vocab: &Vocabulary,
) -> Result<TokenClass, SbnError> {
    if token.quoted {
        return Ok(TokenClass::Literal);
    }
    let t = token.text.as_str();
    if SynsetId::is_synset_like(t) {
        return Ok(TokenClass::Synset);
    }
    if box_ref_offset(t).is_some() {
        return Ok(TokenClass::BoxRef);
    }
    if is_all_upper(t) {
        let next_is_box_ref = next.is_some_and(|n| !n.quoted && box_ref_offset(&n.text).is_some());
        if vocab.is_discourse(t) && next_is_box_ref {
            return Ok(TokenClass::DiscourseRelation);
        }
        if vocab.is_operator(t) {
            return Ok(TokenClass::Operator);
        }
    }
    if node_ref_offset(t).is_some() {
        return Ok(TokenClass::NodeRef);
    }
    match slot {
        Slot::Label if t.chars().next().is_some_and(char::is_uppercase) => Ok(TokenClass::EdgeLabel),
        Slot::Target => Ok(TokenClass::Constant),
        Slot::Label => Err(SbnError::UnknownToken { token: t.to_string(), pos: token.pos }),
    }
}
