use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::ne::{extract_ne_pairs, locate_name, name_key, NeEntry, NeFlag};
use super::replace::{apply_patches, replace_names, Patch, ReplacementRecord, ReplacementStatus};
use super::{AlignError, ParallelSentence, TranslationTable};
use crate::sbn::{parse_document, serialize_sbn, write_corpus, Document, Drg, EdgeKind, EdgeTarget, Vocabulary};

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub skip_nationality: bool,
    /// joins target tokens of a multi-token name
    pub separator: String,
    pub patches: Vec<Patch>,
    pub vocab: Vocabulary,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            skip_nationality: true,
            separator: String::new(),
            patches: Vec::new(),
            vocab: Vocabulary::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub id: String,
    pub concept: String,
    pub source: String,
    pub target: String,
    pub status: ReplacementStatus,
    pub flags: Vec<NeFlag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineOutput {
    /// (id, rewritten SBN) in input order
    pub documents: Vec<(String, String)>,
    pub dictionary: Vec<NeEntry>,
    pub audit: Vec<AuditRow>,
}

impl PipelineOutput {
    pub fn sbn_corpus(&self) -> String {
        write_corpus(self.documents.iter().map(|(id, text)| (Some(id.as_str()), text.as_str())))
    }

    pub fn audit_tsv(&self) -> String {
        audit_tsv(&self.audit)
    }

    pub fn count(&self, status: ReplacementStatus) -> usize {
        self.audit.iter().filter(|r| r.status == status).count()
    }
}

/// `id, concept, source, target, status, flags, categories`
pub fn audit_tsv(rows: &[AuditRow]) -> String {
    let mut out = String::from("id\tconcept\tsource\ttarget\tstatus\tflags\tcategories\n");
    for r in rows {
        let flags: Vec<String> = r.flags.iter().map(|f| f.to_string()).collect();
        let cats: Vec<&str> = r.flags.iter().map(|f| f.category()).collect();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.id,
            r.concept,
            r.source,
            r.target,
            r.status,
            flags.join(","),
            cats.join(",")
        );
    }
    out
}

impl AuditRow {
    pub fn from_record(id: &str, r: ReplacementRecord) -> Self {
        AuditRow {
            id: id.to_string(),
            concept: r.concept,
            source: r.source,
            target: r.target,
            status: r.status,
            flags: r.flags,
        }
    }
}

struct DocOutput {
    id: String,
    sbn: String,
    entries: Vec<NeEntry>,
    audit: Vec<AuditRow>,
}

/// Distinct Name literals of `drg` with the first source-token run that
/// spells each of them. Names that cannot be found are left out.
pub fn located_names(drg: &Drg, src_tokens: &[String]) -> Vec<(String, (usize, usize))> {
    let mut seen = HashSet::new();
    drg.edges_of_kind(EdgeKind::Name)
        .filter_map(|e| match &e.target {
            EdgeTarget::Literal(l) if seen.insert(name_key(l)) => Some(l.clone()),
            _ => None,
        })
        .filter_map(|l| locate_name(src_tokens, &l).map(|span| (l, span)))
        .collect()
}

fn process(
    s: &ParallelSentence,
    doc: &Document,
    table: &TranslationTable,
    opts: &PipelineOptions,
) -> Result<DocOutput, AlignError> {
    let invalid = |message: String| AlignError::Mismatch { id: s.id.clone(), message };
    let drg =
        parse_document(&doc.text, &opts.vocab, &s.id).map_err(|e| invalid(format!("document does not parse: {e}")))?;

    let names = located_names(&drg, &s.src_tokens);

    let links = table.align(s);
    let entries = extract_ne_pairs(s, &links, &names, &opts.separator)?;
    let (mut out, mut report) = replace_names(&drg, &entries, opts.skip_nationality);
    apply_patches(&mut out, &mut report, &s.id, &opts.patches);
    let sbn = serialize_sbn(&out).map_err(|e| invalid(e.to_string()))?;

    let audit = report.records.into_iter().map(|r| AuditRow::from_record(&s.id, r)).collect();
    Ok(DocOutput { id: s.id.clone(), sbn, entries, audit })
}

/// Aligns every sentence pair with `table`, extracts its name dictionary and
/// rewrites the matching English document. Documents are paired with
/// sentences by position; a document that carries an id must agree with
/// its sentence.
pub fn run_pipeline(
    corpus: &[ParallelSentence],
    docs: &[Document],
    table: &TranslationTable,
    opts: &PipelineOptions,
) -> Result<PipelineOutput, AlignError> {
    if corpus.len() != docs.len() {
        return Err(AlignError::Mismatch {
            id: String::new(),
            message: format!("{} sentences but {} documents", corpus.len(), docs.len()),
        });
    }
    for (s, d) in corpus.iter().zip(docs) {
        if let Some(id) = &d.id {
            if *id != s.id {
                return Err(AlignError::Mismatch {
                    id: s.id.clone(),
                    message: format!("document {} has id {id}", d.index),
                });
            }
        }
    }
    let outputs: Vec<DocOutput> =
        corpus.par_iter().zip(docs.par_iter()).map(|(s, d)| process(s, d, table, opts)).collect::<Result<_, _>>()?;

    let mut result = PipelineOutput { documents: Vec::new(), dictionary: Vec::new(), audit: Vec::new() };
    for o in outputs {
        result.documents.push((o.id, o.sbn));
        result.dictionary.extend(o.entries);
        result.audit.extend(o.audit);
    }
    Ok(result)
}

fn columns<'a>(line: &'a str, n: usize, lineno: usize, what: &str) -> Result<Vec<&'a str>, AlignError> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != n {
        return Err(AlignError::Format {
            line: lineno,
            message: format!("expected {what}, got {} columns", cols.len()),
        });
    }
    Ok(cols)
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r'))).filter(|(_, l)| !l.trim().is_empty())
}

/// `id<TAB>source tokens<TAB>target tokens`, tokens separated by spaces.
pub fn parse_parallel(text: &str) -> Result<Vec<ParallelSentence>, AlignError> {
    data_lines(text)
        .map(|(n, line)| {
            let c = columns(line, 3, n, "id<TAB>src<TAB>tgt")?;
            let s = ParallelSentence::from_text(c[0].trim(), c[1], c[2]);
            if s.src_tokens.is_empty() || s.tgt_tokens.is_empty() {
                return Err(AlignError::Format { line: n, message: "empty side".into() });
            }
            Ok(s)
        })
        .collect()
}

/// `id<TAB>src<TAB>tgt<TAB>flags` with comma-joined flag names.
pub fn dictionary_tsv(entries: &[NeEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", e.id, e.src_literal, e.tgt_literal, e.flags_string());
    }
    out
}

pub fn parse_dictionary(text: &str) -> Result<Vec<NeEntry>, AlignError> {
    data_lines(text)
        .map(|(n, line)| {
            let c = columns(line, 4, n, "id<TAB>src<TAB>tgt<TAB>flags")?;
            let flags = c[3]
                .split(',')
                .filter(|f| !f.is_empty())
                .map(|f| f.parse().map_err(|message| AlignError::Format { line: n, message }))
                .collect::<Result<BTreeSet<NeFlag>, _>>()?;
            Ok(NeEntry { id: c[0].into(), src_literal: c[1].into(), tgt_literal: c[2].into(), flags })
        })
        .collect()
}

/// `id<TAB>src<TAB>tgt`
pub fn parse_patches(text: &str) -> Result<Vec<Patch>, AlignError> {
    data_lines(text)
        .map(|(n, line)| {
            let c = columns(line, 3, n, "id<TAB>src<TAB>tgt")?;
            Ok(Patch { id: c[0].into(), src: c[1].into(), tgt: c[2].into() })
        })
        .collect()
}
