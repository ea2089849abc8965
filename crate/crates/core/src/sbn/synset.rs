use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// WordNet part of speech as it appears in a synset label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adjective, Pos::Adverb];

    pub fn from_char(c: char) -> Option<Pos> {
        match c {
            'n' => Some(Pos::Noun),
            'v' => Some(Pos::Verb),
            'a' => Some(Pos::Adjective),
            'r' => Some(Pos::Adverb),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adjective => 'a',
            Pos::Adverb => 'r',
        }
    }
}

/// A concept label of the form `lemma.pos.NN`, e.g. `read.v.01`.
///
/// The lemma is split off from the right, so lemmas containing dots
/// (`st.louis.n.01`) are accepted and survive a round trip.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SynsetId {
    lemma: String,
    pos: Pos,
    sense: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a synset label (expected lemma.pos.NN)")]
pub struct InvalidSynset(pub String);

impl SynsetId {
    pub fn new(lemma: impl Into<String>, pos: Pos, sense: u8) -> Result<Self, InvalidSynset> {
        let lemma = lemma.into();
        if lemma.is_empty() || lemma.chars().any(char::is_whitespace) || !(1..=99).contains(&sense) {
            return Err(InvalidSynset(format!("{lemma}.{}.{sense:02}", pos.as_char())));
        }
        Ok(SynsetId { lemma, pos, sense })
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn pos(&self) -> Pos {
        self.pos
    }

    pub fn sense(&self) -> u8 {
        self.sense
    }

    /// `lemma.pos` with the sense number dropped.
    pub fn without_sense(&self) -> String {
        format!("{}.{}", self.lemma, self.pos.as_char())
    }

    /// Cheap check used by the tokenizer; same rules as `from_str`.
    pub fn is_synset_like(s: &str) -> bool {
        s.parse::<SynsetId>().is_ok()
    }
}

impl FromStr for SynsetId {
    type Err = InvalidSynset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || InvalidSynset(s.to_string());
        let mut parts = s.rsplitn(3, '.');
        let sense = parts.next().ok_or_else(err)?;
        let pos = parts.next().ok_or_else(err)?;
        let lemma = parts.next().ok_or_else(err)?;
        if sense.len() != 2 || !sense.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let mut pos_chars = pos.chars();
        let pos = match (pos_chars.next(), pos_chars.next()) {
            (Some(c), None) => Pos::from_char(c).ok_or_else(err)?,
            _ => return Err(err()),
        };
        let sense: u8 = sense.parse().map_err(|_| err())?;
        if lemma.starts_with('"') {
            return Err(err());
        }
        SynsetId::new(lemma, pos, sense).map_err(|_| err())
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{:02}", self.lemma, self.pos.as_char(), self.sense)
    }
}
