use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{edge_level_counts, graph_level_in_stream, node_level_counts, EdgeLevel, GraphLevel, NodeLevel};
use crate::sbn::{check_document, Document, Drg, Vocabulary};
use crate::smatch::{Counts, Score, DEFAULT_RESTARTS};

#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub restarts: usize,
    pub seed: u64,
    pub vocab: Vocabulary,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig { restarts: DEFAULT_RESTARTS, seed: 0, vocab: Vocabulary::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("prediction corpus has {pred} documents but gold has {gold}")]
    LengthMismatch { pred: usize, gold: usize },
    #[error("gold document {origin} does not parse: {message}")]
    Gold { index: usize, origin: String, message: String },
}

/// A prediction that failed to parse or validate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Malformed {
    pub index: usize,
    pub origin: String,
    pub parsed: bool,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub version: String,
    pub operators_hash: String,
    pub discourse_hash: String,
    pub seed: u64,
    pub restarts: usize,
    pub documents: usize,
    pub notes: Vec<String>,
}

const NOTES: [&str; 5] = [
    "triples are matched as multisets",
    "scores are micro-averaged over documents",
    "node-level roles exclude Name and operator edges",
    "node-level negation and members compare counts only",
    "edge-level triples are anchored by node labels, not by a variable mapping",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FineGrainedReport {
    pub metadata: ReportMetadata,
    pub well_formed_rate: f64,
    pub graph_level: GraphLevel<Score>,
    pub node_level: NodeLevel,
    pub edge_level: EdgeLevel,
    pub malformed: Vec<Malformed>,
}

struct DocCounts {
    well_formed: bool,
    malformed: Option<Malformed>,
    graph: [Counts; 6],
    node: [Counts; 10],
    edge: [Counts; 5],
}

fn score_document(
    index: usize,
    pred: &Document,
    gold: &Document,
    cfg: &ReportConfig,
) -> Result<DocCounts, CorpusError> {
    let (gold_drg, gold_report) = check_document(&gold.text, &cfg.vocab, &gold.origin());
    let Some(gold_drg) = gold_drg else {
        let message = gold_report.errors.first().map(|e| e.message.clone()).unwrap_or_default();
        return Err(CorpusError::Gold { index, origin: gold.origin(), message });
    };
    let (pred_drg, report) = check_document(&pred.text, &cfg.vocab, &pred.origin());
    let malformed = (!report.well_formed).then(|| Malformed {
        index,
        origin: pred.origin(),
        parsed: pred_drg.is_some(),
        errors: report.errors.iter().map(|e| format!("{}: {}", e.location, e.message)).collect(),
    });
    let pred_drg = pred_drg.unwrap_or_else(|| Drg::new(pred.origin()));
    let graph = graph_level_in_stream(&pred_drg, &gold_drg, cfg.restarts, cfg.seed, index as u64);
    let graph_counts = graph.rows().map(|(_, m)| m.counts);
    Ok(DocCounts {
        well_formed: report.well_formed,
        malformed,
        graph: graph_counts,
        node: node_level_counts(&pred_drg, &gold_drg),
        edge: edge_level_counts(&pred_drg, &gold_drg),
    })
}

fn add<const N: usize>(a: [Counts; N], b: [Counts; N]) -> [Counts; N] {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Scores aligned prediction and gold corpora.
///
/// Predictions that do not parse are scored as empty graphs and listed in
/// `malformed`. Counts are pooled over all documents before precision and
/// recall are computed. Work is spread over the current rayon pool; the
/// result does not depend on the pool size.
pub fn corpus_report(
    pred: &[Document],
    gold: &[Document],
    cfg: &ReportConfig,
) -> Result<FineGrainedReport, CorpusError> {
    if pred.len() != gold.len() {
        return Err(CorpusError::LengthMismatch { pred: pred.len(), gold: gold.len() });
    }
    let docs: Vec<DocCounts> = pred
        .par_iter()
        .zip(gold.par_iter())
        .enumerate()
        .map(|(i, (p, g))| score_document(i, p, g, cfg))
        .collect::<Result<_, _>>()?;

    let mut graph = [Counts::default(); 6];
    let mut node = [Counts::default(); 10];
    let mut edge = [Counts::default(); 5];
    let mut good = 0;
    let mut malformed = Vec::new();
    for d in docs {
        graph = add(graph, d.graph);
        node = add(node, d.node);
        edge = add(edge, d.edge);
        good += d.well_formed as usize;
        malformed.extend(d.malformed);
    }
    let well_formed_rate = if pred.is_empty() { 1.0 } else { good as f64 / pred.len() as f64 };
    let (operators_hash, discourse_hash) = cfg.vocab.fingerprint();

    Ok(FineGrainedReport {
        metadata: ReportMetadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            operators_hash,
            discourse_hash,
            seed: cfg.seed,
            restarts: cfg.restarts,
            documents: pred.len(),
            notes: NOTES.iter().map(|s| s.to_string()).collect(),
        },
        well_formed_rate,
        graph_level: GraphLevel {
            smatch_fine: graph[0].score(),
            smatch_coarse: graph[1].score(),
            no_roles: graph[2].score(),
            no_discourse: graph[3].score(),
            no_operators: graph[4].score(),
            no_senses: graph[5].score(),
        },
        node_level: NodeLevel::from_counts(node),
        edge_level: EdgeLevel::from_counts(edge),
        malformed,
    })
}

impl FineGrainedReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One metric per row: `level, metric, precision, recall, f1`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("level\tmetric\tprecision\trecall\tf1\n");
        let mut row = |level: &str, name: &str, s: &Score| {
            let _ = writeln!(out, "{level}\t{name}\t{:.6}\t{:.6}\t{:.6}", s.precision, s.recall, s.f1);
        };
        for (k, s) in self.graph_level.rows() {
            row("graph", k, s);
        }
        for (k, s) in self.node_level.rows() {
            row("node", k, s);
        }
        for (k, s) in self.edge_level.rows() {
            row("edge", k, s);
        }
        let r = self.well_formed_rate;
        let _ = writeln!(out, "overall\twell_formed\t{r:.6}\t{r:.6}\t{r:.6}");
        out
    }

    /// F1 percentages laid out as overall, graph, node (with indented
    /// part-of-speech rows) and edge blocks.
    pub fn to_markdown(&self) -> String {
        let pct = |s: &Score| format!("{:.1}", s.f1 * 100.0);
        let mut out = String::from("| Level | Metric | F1 |\n|---|---|---:|\n");
        let g = &self.graph_level;
        let _ = writeln!(out, "| Overall | Smatch (fine) | {} |", pct(&g.smatch_fine));
        let _ = writeln!(out, "|  | Smatch (coarse) | {} |", pct(&g.smatch_coarse));
        let _ = writeln!(out, "|  | Well-formed | {:.1} |", self.well_formed_rate * 100.0);
        let graph_names = ["No Roles", "No Discourse", "No Operators", "No Senses"];
        for (i, (name, s)) in
            graph_names.iter().zip([&g.no_roles, &g.no_discourse, &g.no_operators, &g.no_senses]).enumerate()
        {
            let level = if i == 0 { "Graph" } else { "" };
            let _ = writeln!(out, "| {level} | {name} | {} |", pct(s));
        }
        let node_names = [
            "Names",
            "Negation",
            "Discourse",
            "Roles",
            "Members",
            "Concepts",
            "&nbsp;&nbsp;*noun*",
            "&nbsp;&nbsp;*adj*",
            "&nbsp;&nbsp;*adv*",
            "&nbsp;&nbsp;*verb*",
        ];
        for (i, (name, (_, s))) in node_names.iter().zip(self.node_level.rows()).enumerate() {
            let level = if i == 0 { "Node" } else { "" };
            let _ = writeln!(out, "| {level} | {name} | {} |", pct(s));
        }
        let edge_names = ["Roles", "Names", "Members", "Operators", "Discourse"];
        for (i, (name, (_, s))) in edge_names.iter().zip(self.edge_level.rows()).enumerate() {
            let level = if i == 0 { "Edge" } else { "" };
            let _ = writeln!(out, "| {level} | {name} | {} |", pct(s));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbn::split_corpus;

    const GOLD: &str =
        "female.n.02 time.n.08 EQU now use.v.01 Agent -2 Time -1\n\nmale.n.02 Name \"Yunus\" found.v.01 Agent -1\n";

    #[test]
    fn identical_corpora() {
        let docs = split_corpus(GOLD);
        let r = corpus_report(&docs, &docs, &ReportConfig::default()).unwrap();
        assert_eq!(r.well_formed_rate, 1.0);
        for (_, s) in r.graph_level.rows() {
            assert_eq!(s.f1, 1.0);
        }
        for (_, s) in r.node_level.rows() {
            assert_eq!(s.f1, 1.0);
        }
        assert!(r.malformed.is_empty());
    }

    #[test]
    fn length_mismatch() {
        let docs = split_corpus(GOLD);
        assert!(matches!(
            corpus_report(&docs[..1], &docs, &ReportConfig::default()),
            Err(CorpusError::LengthMismatch { pred: 1, gold: 2 })
        ));
    }

    #[test]
    fn unparseable_prediction_counts_as_empty() {
        let gold = split_corpus(GOLD);
        let pred = split_corpus("female.n.02 Agent +7\n\nmale.n.02 Name \"Yunus\" found.v.01 Agent -1\n");
        let r = corpus_report(&pred, &gold, &ReportConfig::default()).unwrap();
        assert_eq!(r.well_formed_rate, 0.5);
        assert_eq!(r.malformed.len(), 1);
        assert!(!r.malformed[0].parsed);
        let single = corpus_report(&gold[1..], &gold[1..], &ReportConfig::default()).unwrap();
        assert_eq!(r.graph_level.smatch_coarse.matched, single.graph_level.smatch_coarse.matched);
        assert!(r.graph_level.smatch_coarse.recall < 1.0);
        assert_eq!(r.graph_level.smatch_coarse.precision, 1.0);
    }

    #[test]
    fn outputs_are_stable() {
        let docs = split_corpus(GOLD);
        let r = corpus_report(&docs, &docs, &ReportConfig::default()).unwrap();
        assert_eq!(r.to_tsv().lines().count(), 1 + 6 + 10 + 5 + 1);
        assert!(r.to_markdown().contains("| Node | Names | 100.0 |"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["node_level"]["concepts_noun"]["f1"], 1.0);
        assert_eq!(r.to_json(), corpus_report(&docs, &docs, &ReportConfig::default()).unwrap().to_json());
    }
}
