use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{AlignError, ParallelSentence};

pub const NULL_TOKEN: &str = "NULL";
pub const DEFAULT_ITERATIONS: usize = 20;

/// Lexical translation probabilities t(target | source).
///
/// Source index 0 is the empty word, written `NULL`. Rows are kept in
/// ordered maps so that sums and saved files are reproducible.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TranslationTable {
    src: Vec<String>,
    tgt: Vec<String>,
    src_ids: HashMap<String, u32>,
    tgt_ids: HashMap<String, u32>,
    rows: Vec<BTreeMap<u32, f64>>,
}

/// Target position linked to a source position, or to NULL when `src_index`
/// is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlignmentLink {
    pub tgt_index: usize,
    pub src_index: Option<usize>,
}

impl TranslationTable {
    fn new() -> Self {
        let mut t = TranslationTable::default();
        t.src_id_or_insert(NULL_TOKEN);
        t
    }

    fn src_id_or_insert(&mut self, s: &str) -> u32 {
        if let Some(&i) = self.src_ids.get(s) {
            return i;
        }
        let i = self.src.len() as u32;
        self.src.push(s.to_string());
        self.src_ids.insert(s.to_string(), i);
        self.rows.push(BTreeMap::new());
        i
    }

    fn tgt_id_or_insert(&mut self, s: &str) -> u32 {
        if let Some(&i) = self.tgt_ids.get(s) {
            return i;
        }
        let i = self.tgt.len() as u32;
        self.tgt.push(s.to_string());
        self.tgt_ids.insert(s.to_string(), i);
        i
    }

    /// t(tgt | src); zero for unseen pairs. Use [`NULL_TOKEN`] for the empty word.
    pub fn prob(&self, src: &str, tgt: &str) -> f64 {
        match (self.src_ids.get(src), self.tgt_ids.get(tgt)) {
            (Some(&s), Some(&t)) => self.p(s, t),
            _ => 0.0,
        }
    }

    fn p(&self, s: u32, t: u32) -> f64 {
        self.rows[s as usize].get(&t).copied().unwrap_or(0.0)
    }

    pub fn sources(&self) -> impl Iterator<Item = &str> {
        self.src.iter().map(String::as_str)
    }

    /// Σ over targets of t(tgt | src).
    pub fn row_sum(&self, src: &str) -> f64 {
        self.src_ids.get(src).map(|&s| self.rows[s as usize].values().sum()).unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `src<TAB>tgt<TAB>prob` lines, sorted by source then target string.
    pub fn to_tsv(&self) -> String {
        let mut lines: Vec<(&str, &str, f64)> = Vec::with_capacity(self.len());
        for (s, row) in self.rows.iter().enumerate() {
            for (&t, &p) in row {
                lines.push((&self.src[s], &self.tgt[t as usize], p));
            }
        }
        lines.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut out = String::new();
        for (s, t, p) in lines {
            let _ = writeln!(out, "{s}\t{t}\t{p:e}");
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, AlignError> {
        let mut table = TranslationTable::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad =
                || AlignError::Format { line: n + 1, message: format!("expected src<TAB>tgt<TAB>prob, got {line:?}") };
            let mut cols = line.split('\t');
            let (Some(s), Some(t), Some(p), None) = (cols.next(), cols.next(), cols.next(), cols.next()) else {
                return Err(bad());
            };
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let s = table.src_id_or_insert(s);
            let t = table.tgt_id_or_insert(t);
            table.rows[s as usize].insert(t, p);
        }
        Ok(table)
    }

    /// Links every target token to its most probable source token. Ties go to
    /// the leftmost source token, and NULL only wins when strictly better
    /// than every source token. Tokens with no positive probability link to NULL.
    pub fn align(&self, s: &ParallelSentence) -> Vec<AlignmentLink> {
        let src: Vec<Option<u32>> = s.src_tokens.iter().map(|w| self.src_ids.get(w).copied()).collect();
        s.tgt_tokens
            .iter()
            .enumerate()
            .map(|(j, w)| {
                let Some(&t) = self.tgt_ids.get(w) else {
                    return AlignmentLink { tgt_index: j, src_index: None };
                };
                let mut best = (0.0, None);
                for (i, id) in src.iter().enumerate() {
                    let p = id.map(|id| self.p(id, t)).unwrap_or(0.0);
                    if p > best.0 {
                        best = (p, Some(i));
                    }
                }
                if self.p(0, t) > best.0 {
                    best = (self.p(0, t), None);
                }
                AlignmentLink { tgt_index: j, src_index: best.1 }
            })
            .collect()
    }
}

pub fn align_sentence(table: &TranslationTable, s: &ParallelSentence) -> Vec<AlignmentLink> {
    table.align(s)
}

struct Encoded {
    /// source ids with NULL (0) first
    src: Vec<u32>,
    tgt: Vec<u32>,
}

fn encode(table: &mut TranslationTable, corpus: &[ParallelSentence]) -> Vec<Encoded> {
    corpus
        .iter()
        .map(|s| {
            let mut src = vec![0];
            src.extend(s.src_tokens.iter().map(|w| table.src_id_or_insert(w)));
            let tgt = s.tgt_tokens.iter().map(|w| table.tgt_id_or_insert(w)).collect();
            Encoded { src, tgt }
        })
        .collect()
}

fn normalize(rows: &mut [BTreeMap<u32, f64>]) {
    for row in rows {
        let z: f64 = row.values().sum();
        if z > 0.0 {
            for p in row.values_mut() {
                *p /= z;
            }
        }
    }
}

fn expected_counts(table: &TranslationTable, s: &Encoded) -> Vec<(u32, u32, f64)> {
    let mut out = Vec::with_capacity(s.src.len() * s.tgt.len());
    for &t in &s.tgt {
        let z: f64 = s.src.iter().map(|&e| table.p(e, t)).sum();
        if z <= 0.0 {
            continue;
        }
        for &e in &s.src {
            out.push((e, t, table.p(e, t) / z));
        }
    }
    out
}

/// IBM Model 1 trained with EM, starting from uniform probabilities over the
/// target words each source word (and NULL) co-occurs with.
///
/// Expected counts are gathered per sentence in parallel and merged in corpus
/// order, so the table is identical for any thread count.
pub fn train_ibm1(corpus: &[ParallelSentence], iterations: usize) -> Result<TranslationTable, AlignError> {
    train_ibm1_with(corpus, iterations, |_, _| {})
}

/// As [`train_ibm1`], calling `observe(iteration, table)` after every update.
pub fn train_ibm1_with(
    corpus: &[ParallelSentence],
    iterations: usize,
    mut observe: impl FnMut(usize, &TranslationTable),
) -> Result<TranslationTable, AlignError> {
    if corpus.is_empty() {
        return Err(AlignError::EmptyCorpus);
    }
    if iterations == 0 {
        return Err(AlignError::ZeroIterations);
    }
    let mut table = TranslationTable::new();
    let sentences = encode(&mut table, corpus);
    for s in &sentences {
        for &e in &s.src {
            for &t in &s.tgt {
                table.rows[e as usize].insert(t, 1.0);
            }
        }
    }
    normalize(&mut table.rows);

    for it in 1..=iterations {
        let per_sentence: Vec<Vec<(u32, u32, f64)>> =
            sentences.par_iter().map(|s| expected_counts(&table, s)).collect();
        let mut counts: Vec<BTreeMap<u32, f64>> = vec![BTreeMap::new(); table.rows.len()];
        for (e, t, c) in per_sentence.into_iter().flatten() {
            *counts[e as usize].entry(t).or_insert(0.0) += c;
        }
        normalize(&mut counts);
        table.rows = counts;
        observe(it, &table);
    }
    Ok(table)
}

/// Σ over sentences and target tokens of log( Σ_i t(f | e_i) / (l + 1) ),
/// the IBM Model 1 likelihood up to a constant.
pub fn corpus_log_likelihood(table: &TranslationTable, corpus: &[ParallelSentence]) -> f64 {
    let mut ll = 0.0;
    for s in corpus {
        let src: Vec<&str> = std::iter::once(NULL_TOKEN).chain(s.src_tokens.iter().map(String::as_str)).collect();
        for f in &s.tgt_tokens {
            let p: f64 = src.iter().map(|e| table.prob(e, f)).sum::<f64>() / src.len() as f64;
            ll += if p > 0.0 { p.ln() } else { f64::NEG_INFINITY };
        }
    }
    ll
}
