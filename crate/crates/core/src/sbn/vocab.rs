use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

pub const DEFAULT_OPERATORS: &[&str] =
    &["EQU", "NEQ", "APX", "LES", "LEQ", "TPR", "TAB", "TIN", "TSU", "TCT", "SXP", "SXN", "SXY", "SZP", "SZN"];

pub const DEFAULT_DISCOURSE: &[&str] = &[
    "NEGATION",
    "CONTINUATION",
    "CONTRAST",
    "ATTRIBUTION",
    "POSSIBILITY",
    "NECESSITY",
    "RESULT",
    "EXPLANATION",
    "CONDITION",
    "CONSEQUENCE",
    "ALTERNATION",
    "COMMENTARY",
];

/// Operator and discourse-relation label sets that drive token classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    operators: BTreeSet<String>,
    discourse: BTreeSet<String>,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Vocabulary::new(DEFAULT_OPERATORS.iter().copied(), DEFAULT_DISCOURSE.iter().copied())
    }
}

impl Vocabulary {
    pub fn new<O, D, S1, S2>(operators: O, discourse: D) -> Self
    where
        O: IntoIterator<Item = S1>,
        D: IntoIterator<Item = S2>,
        S1: Into<String>,
        S2: Into<String>,
    {
        Vocabulary {
            operators: operators.into_iter().map(Into::into).collect(),
            discourse: discourse.into_iter().map(Into::into).collect(),
        }
    }

    pub fn with_operators<I: IntoIterator<Item = String>>(mut self, ops: I) -> Self {
        self.operators = ops.into_iter().collect();
        self
    }

    pub fn with_discourse<I: IntoIterator<Item = String>>(mut self, rels: I) -> Self {
        self.discourse = rels.into_iter().collect();
        self
    }

    pub fn is_operator(&self, label: &str) -> bool {
        self.operators.contains(label)
    }

    pub fn is_discourse(&self, label: &str) -> bool {
        self.discourse.contains(label)
    }

    pub fn operators(&self) -> impl Iterator<Item = &str> {
        self.operators.iter().map(String::as_str)
    }

    pub fn discourse(&self) -> impl Iterator<Item = &str> {
        self.discourse.iter().map(String::as_str)
    }

    /// Parses a line-delimited label list; blank lines and `%`/`#` comments are skipped.
    pub fn parse_label_list(text: &str) -> Vec<String> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('%') && !l.starts_with('#'))
            .map(str::to_string)
            .collect()
    }

    /// Short stable digest of (operators, discourse) for report provenance.
    pub fn fingerprint(&self) -> (String, String) {
        (digest(self.operators()), digest(self.discourse()))
    }
}

fn digest<'a>(labels: impl Iterator<Item = &'a str>) -> String {
    let mut h = Sha256::new();
    for l in labels {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    hex::encode(&h.finalize()[..8])
}
