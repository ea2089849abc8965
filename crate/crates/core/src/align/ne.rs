use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{AlignError, AlignmentLink, ParallelSentence};

/// Symptoms of the four known alignment error classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NeFlag {
    EmptyTarget,
    ContainsDigitsNotInSource,
    NotSubstringOfTarget,
    DuplicateTarget,
}

impl NeFlag {
    pub const ALL: [NeFlag; 4] =
        [NeFlag::EmptyTarget, NeFlag::ContainsDigitsNotInSource, NeFlag::NotSubstringOfTarget, NeFlag::DuplicateTarget];

    /// Error class the symptom points at.
    pub fn category(self) -> &'static str {
        match self {
            NeFlag::EmptyTarget => "Nationality",
            NeFlag::ContainsDigitsNotInSource => "CharacterInclusion",
            NeFlag::NotSubstringOfTarget => "CharacterExclusion",
            NeFlag::DuplicateTarget => "Dislocation",
        }
    }
}

impl fmt::Display for NeFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for NeFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NeFlag::ALL.into_iter().find(|f| f.to_string() == s).ok_or_else(|| format!("unknown flag {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeEntry {
    pub id: String,
    pub src_literal: String,
    pub tgt_literal: String,
    pub flags: BTreeSet<NeFlag>,
}

impl NeEntry {
    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags_string(&self) -> String {
        self.flags.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Lowercased words of a name with `~` and `_` read as spaces.
pub fn name_words(literal: &str) -> Vec<String> {
    literal.replace(['~', '_'], " ").split_whitespace().map(str::to_lowercase).collect()
}

/// Normalized lookup key for a name literal.
pub fn name_key(literal: &str) -> String {
    name_words(literal).join(" ")
}

/// First run of source tokens spelling out `literal`, compared
/// case-insensitively. Returns a half-open token range.
pub fn locate_name(src_tokens: &[String], literal: &str) -> Option<(usize, usize)> {
    let words = name_words(literal);
    if words.is_empty() || words.len() > src_tokens.len() {
        return None;
    }
    let lower: Vec<String> = src_tokens.iter().map(|t| t.to_lowercase()).collect();
    (0..=lower.len() - words.len()).find(|&i| lower[i..i + words.len()] == words[..]).map(|i| (i, i + words.len()))
}

/// Builds one dictionary entry per located source name by joining, in
/// target order, every target token linked into the name's span.
pub fn extract_ne_pairs(
    s: &ParallelSentence,
    links: &[AlignmentLink],
    names: &[(String, (usize, usize))],
    separator: &str,
) -> Result<Vec<NeEntry>, AlignError> {
    let joined = s.tgt_tokens.join(separator);
    let mut entries = Vec::with_capacity(names.len());
    for (literal, (start, end)) in names {
        if start >= end || *end > s.src_tokens.len() {
            return Err(AlignError::SpanOutOfRange {
                id: s.id.clone(),
                name: literal.clone(),
                start: *start,
                end: *end,
            });
        }
        let mut linked: Vec<&AlignmentLink> = links
            .iter()
            .filter(|l| l.src_index.is_some_and(|i| (*start..*end).contains(&i)) && l.tgt_index < s.tgt_tokens.len())
            .collect();
        linked.sort_by_key(|l| l.tgt_index);
        let tgt = linked.iter().map(|l| s.tgt_tokens[l.tgt_index].as_str()).collect::<Vec<_>>().join(separator);

        let mut flags = BTreeSet::new();
        if tgt.is_empty() {
            flags.insert(NeFlag::EmptyTarget);
        } else if !joined.contains(&tgt) {
            flags.insert(NeFlag::NotSubstringOfTarget);
        }
        if tgt.chars().any(|c| c.is_ascii_digit() && !literal.contains(c)) {
            flags.insert(NeFlag::ContainsDigitsNotInSource);
        }
        entries.push(NeEntry { id: s.id.clone(), src_literal: literal.clone(), tgt_literal: tgt, flags });
    }

    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if i != j
                && !entries[i].tgt_literal.is_empty()
                && entries[i].tgt_literal == entries[j].tgt_literal
                && name_key(&entries[i].src_literal) != name_key(&entries[j].src_literal)
            {
                entries[i].flags.insert(NeFlag::DuplicateTarget);
            }
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(t: usize, s: Option<usize>) -> AlignmentLink {
        AlignmentLink { tgt_index: t, src_index: s }
    }

    #[test]
    fn locate() {
        let src: Vec<String> = "What group sang the song \" Happy Together \" ?".split(' ').map(String::from).collect();
        assert_eq!(locate_name(&src, "Happy~Together"), Some((6, 8)));
        assert_eq!(locate_name(&src, "happy together"), Some((6, 8)));
        assert_eq!(locate_name(&src, "Sad Together"), None);
        assert_eq!(locate_name(&src, ""), None);
    }

    #[test]
    fn one_token_names() {
        let s = ParallelSentence::from_text("f3", "Yunus founded the Grameen Bank", "尤努斯 创立 了 格莱美 银行");
        let links = vec![link(0, Some(0)), link(1, Some(1)), link(2, None), link(3, Some(3)), link(4, Some(4))];
        let names = vec![("Yunus".to_string(), (0, 1)), ("Grameen".to_string(), (3, 4))];
        let e = extract_ne_pairs(&s, &links, &names, "").unwrap();
        assert_eq!(e[0].tgt_literal, "尤努斯");
        assert_eq!(e[1].tgt_literal, "格莱美");
        assert!(e.iter().all(NeEntry::is_clean));
    }

    #[test]
    fn character_inclusion() {
        let s = ParallelSentence::from_text(
            "h",
            "Rutherford Hayes was born in Ohio in 1822 .",
            "卢瑟福·海斯 1822 年 出生 于 俄亥俄州 。",
        );
        let links = vec![link(0, Some(1)), link(1, Some(1)), link(5, Some(5)), link(6, Some(8))];
        let names = vec![("Rutherford Hayes".to_string(), (0, 2))];
        let e = extract_ne_pairs(&s, &links, &names, "").unwrap();
        assert_eq!(e[0].tgt_literal, "卢瑟福·海斯1822");
        assert_eq!(e[0].flags, BTreeSet::from([NeFlag::ContainsDigitsNotInSource]));
    }

    #[test]
    fn character_exclusion_and_empty() {
        let s = ParallelSentence::from_text(
            "x",
            "What group sang the song \" Happy Together \" ?",
            "什么 乐队 唱 了 “ 快乐 在 一起 ” 这 首 歌 ？",
        );
        let links = vec![link(5, Some(6)), link(6, None), link(7, Some(7))];
        let e = extract_ne_pairs(&s, &links, &[("Happy Together".into(), (6, 8))], "").unwrap();
        assert_eq!(e[0].tgt_literal, "快乐一起");
        assert_eq!(e[0].flags, BTreeSet::from([NeFlag::NotSubstringOfTarget]));
        let e = extract_ne_pairs(&s, &[], &[("Happy Together".into(), (6, 8))], "").unwrap();
        assert_eq!(e[0].flags, BTreeSet::from([NeFlag::EmptyTarget]));
    }

    #[test]
    fn duplicate_targets() {
        let s = ParallelSentence::from_text(
            "d",
            "Mel Karmazin is an executive of Sirius .",
            "梅尔·卡玛津 是 天狼星 的 执行官 。",
        );
        let links = vec![link(0, Some(1)), link(2, Some(6)), link(4, Some(4))];
        let names = vec![
            ("Mel Karmazin".to_string(), (0, 2)),
            ("Sirius".to_string(), (6, 7)),
            ("Karmazin".to_string(), (1, 2)),
        ];
        let e = extract_ne_pairs(&s, &links, &names, "").unwrap();
        assert!(e[0].flags.contains(&NeFlag::DuplicateTarget));
        assert!(e[2].flags.contains(&NeFlag::DuplicateTarget));
        assert!(e[1].is_clean());
        assert!(extract_ne_pairs(&s, &links, &[("x".into(), (7, 9))], "").is_err());
    }
}
