//! Silver-data pipeline: word alignment, name dictionary extraction and
//! name projection into English SBN documents.

mod ibm1;
mod ne;
mod pipeline;
mod replace;

use serde::Serialize;

pub use ibm1::{
    align_sentence, corpus_log_likelihood, train_ibm1, train_ibm1_with, AlignmentLink, TranslationTable,
    DEFAULT_ITERATIONS, NULL_TOKEN,
};
pub use ne::{extract_ne_pairs, locate_name, name_key, name_words, NeEntry, NeFlag};
pub use pipeline::{
    audit_tsv, dictionary_tsv, located_names, parse_dictionary, parse_parallel, parse_patches, run_pipeline, AuditRow,
    PipelineOptions, PipelineOutput,
};
pub use replace::{apply_patches, replace_names, Patch, ReplacementRecord, ReplacementReport, ReplacementStatus};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlignError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("iterations must be at least 1")]
    ZeroIterations,
    #[error("name {name:?} in sentence {id} has token span {start}..{end} outside the sentence")]
    SpanOutOfRange { id: String, name: String, start: usize, end: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("sentence {id}: {message}")]
    Mismatch { id: String, message: String },
}

/// Pre-tokenized English/Chinese sentence pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParallelSentence {
    pub id: String,
    pub src_tokens: Vec<String>,
    pub tgt_tokens: Vec<String>,
}

impl ParallelSentence {
    pub fn new(id: impl Into<String>, src_tokens: Vec<String>, tgt_tokens: Vec<String>) -> Self {
        ParallelSentence { id: id.into(), src_tokens, tgt_tokens }
    }

    /// Splits both sides on whitespace.
    pub fn from_text(id: &str, src: &str, tgt: &str) -> Self {
        let split = |s: &str| s.split_whitespace().map(String::from).collect();
        ParallelSentence::new(id, split(src), split(tgt))
    }
}
