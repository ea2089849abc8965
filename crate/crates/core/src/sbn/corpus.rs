//! Corpus files: blank-line separated documents.
//!
//! A document may start with an `% id: <name>` comment line, which becomes
//! its id. Blocks consisting solely of other comments are file-level notes and
//! are not counted as documents.

use std::fs;
use std::io;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub index: usize,
    pub id: Option<String>,
    /// 1-based line in the corpus file where the block starts.
    pub line: usize,
    pub text: String,
}

impl Document {
    /// Explicit id if present, otherwise the corpus position.
    pub fn origin(&self) -> String {
        self.id.clone().unwrap_or_else(|| self.index.to_string())
    }
}

fn id_comment(line: &str) -> Option<&str> {
    let rest = line.trim().strip_prefix('%')?.trim_start();
    let id = rest.strip_prefix("id:")?.trim();
    (!id.is_empty()).then_some(id)
}

pub fn split_corpus(text: &str) -> Vec<Document> {
    let mut docs = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    let mut start = 0;
    let flush = |block: &mut Vec<&str>, start: usize, docs: &mut Vec<Document>| {
        if block.is_empty() {
            return;
        }
        let id = block.iter().find_map(|l| id_comment(l)).map(str::to_string);
        let only_comments = block.iter().all(|l| l.trim_start().starts_with('%'));
        if !(only_comments && id.is_none()) {
            docs.push(Document { index: docs.len(), id, line: start, text: block.join("\n") });
        }
        block.clear();
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            flush(&mut block, start, &mut docs);
        } else {
            if block.is_empty() {
                start = i + 1;
            }
            block.push(line);
        }
    }
    flush(&mut block, start, &mut docs);
    docs
}

pub fn read_corpus(path: &Path) -> io::Result<Vec<Document>> {
    Ok(split_corpus(&fs::read_to_string(path)?))
}

/// Joins documents with blank lines, prefixing `% id:` lines where given.
pub fn write_corpus<'a, I>(docs: I) -> String
where
    I: IntoIterator<Item = (Option<&'a str>, &'a str)>,
{
    let mut out = String::new();
    for (id, body) in docs {
        if !out.is_empty() {
            out.push('\n');
        }
        if let Some(id) = id {
            out.push_str("% id: ");
            out.push_str(id);
            out.push('\n');
        }
        out.push_str(body);
        out.push('\n');
    }
    out
}
