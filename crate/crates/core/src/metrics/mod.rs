//! Overall and fine-grained evaluation.
//!
//! Graph-level scores run the triple matcher on whole graphs (optionally
//! with one information type removed). Node- and edge-level scores compare
//! multisets of labels, anchored by node labels rather than by a variable
//! mapping, so they are deterministic and cheap.

mod report;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::penman::{extract_triples, strip_category, Granularity, StripCategory, TripleSet};
use crate::sbn::{Drg, EdgeKind, EdgeTarget, NodeId, Pos, NEGATION_LABEL};
use crate::smatch::{smatch_score_in_stream, Counts, Score};

pub use report::{corpus_report, CorpusError, FineGrainedReport, Malformed, ReportConfig, ReportMetadata};

/// Multiset of labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelBag {
    items: BTreeMap<String, usize>,
    total: usize,
}

impl LabelBag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>) {
        *self.items.entry(label.into()).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn count(&self, label: &str) -> usize {
        self.items.get(label).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.items.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Σ min(count in self, count in other).
    pub fn overlap(&self, other: &LabelBag) -> usize {
        self.items.iter().map(|(k, n)| (*n).min(other.count(k))).sum()
    }
}

impl<S: Into<String>> FromIterator<S> for LabelBag {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut bag = LabelBag::new();
        for s in iter {
            bag.insert(s);
        }
        bag
    }
}

pub fn multiset_counts(pred: &LabelBag, gold: &LabelBag) -> Counts {
    Counts::new(pred.overlap(gold), pred.len(), gold.len())
}

pub fn multiset_f1(pred: &LabelBag, gold: &LabelBag) -> (f64, f64, f64) {
    multiset_counts(pred, gold).prf()
}

/// Graph-level block. Per document each entry is a full match result; for
/// a corpus the entries are pooled counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphLevel<T> {
    pub smatch_fine: T,
    pub smatch_coarse: T,
    pub no_roles: T,
    pub no_discourse: T,
    pub no_operators: T,
    pub no_senses: T,
}

impl<T> GraphLevel<T> {
    pub fn rows(&self) -> [(&'static str, &T); 6] {
        [
            ("smatch_fine", &self.smatch_fine),
            ("smatch_coarse", &self.smatch_coarse),
            ("no_roles", &self.no_roles),
            ("no_discourse", &self.no_discourse),
            ("no_operators", &self.no_operators),
            ("no_senses", &self.no_senses),
        ]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> GraphLevel<U> {
        GraphLevel {
            smatch_fine: f(&self.smatch_fine),
            smatch_coarse: f(&self.smatch_coarse),
            no_roles: f(&self.no_roles),
            no_discourse: f(&self.no_discourse),
            no_operators: f(&self.no_operators),
            no_senses: f(&self.no_senses),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeLevel {
    pub names: Score,
    pub negation: Score,
    pub discourse: Score,
    pub roles: Score,
    pub members: Score,
    pub concepts: Score,
    pub concepts_noun: Score,
    pub concepts_adj: Score,
    pub concepts_adv: Score,
    pub concepts_verb: Score,
}

impl NodeLevel {
    pub const KEYS: [&'static str; 10] = [
        "names",
        "negation",
        "discourse",
        "roles",
        "members",
        "concepts",
        "concepts_noun",
        "concepts_adj",
        "concepts_adv",
        "concepts_verb",
    ];

    fn from_counts(c: [Counts; 10]) -> Self {
        NodeLevel {
            names: c[0].score(),
            negation: c[1].score(),
            discourse: c[2].score(),
            roles: c[3].score(),
            members: c[4].score(),
            concepts: c[5].score(),
            concepts_noun: c[6].score(),
            concepts_adj: c[7].score(),
            concepts_adv: c[8].score(),
            concepts_verb: c[9].score(),
        }
    }

    pub fn rows(&self) -> [(&'static str, &Score); 10] {
        let s = [
            &self.names,
            &self.negation,
            &self.discourse,
            &self.roles,
            &self.members,
            &self.concepts,
            &self.concepts_noun,
            &self.concepts_adj,
            &self.concepts_adv,
            &self.concepts_verb,
        ];
        std::array::from_fn(|i| (Self::KEYS[i], s[i]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeLevel {
    pub roles: Score,
    pub names: Score,
    pub members: Score,
    pub operators: Score,
    pub discourse: Score,
}

impl EdgeLevel {
    pub const KEYS: [&'static str; 5] = ["roles", "names", "members", "operators", "discourse"];

    fn from_counts(c: [Counts; 5]) -> Self {
        EdgeLevel {
            roles: c[0].score(),
            names: c[1].score(),
            members: c[2].score(),
            operators: c[3].score(),
            discourse: c[4].score(),
        }
    }

    pub fn rows(&self) -> [(&'static str, &Score); 5] {
        let s = [&self.roles, &self.names, &self.members, &self.operators, &self.discourse];
        std::array::from_fn(|i| (Self::KEYS[i], s[i]))
    }
}

const UNIT: &str = "*";

fn node_bags(d: &Drg) -> [LabelBag; 10] {
    let mut bags: [LabelBag; 10] = Default::default();
    for (i, c) in d.concepts.iter().enumerate() {
        let named = d.edges_of_kind(EdgeKind::Name).any(|e| e.source == NodeId::Concept(i));
        if named {
            bags[0].insert(c.synset.to_string());
        }
        bags[5].insert(c.synset.to_string());
        let sub = match c.synset.pos() {
            Pos::Noun => 6,
            Pos::Adjective => 7,
            Pos::Adverb => 8,
            Pos::Verb => 9,
        };
        bags[sub].insert(c.synset.to_string());
    }
    for e in &d.edges {
        match e.kind {
            EdgeKind::Discourse if e.label == NEGATION_LABEL => bags[1].insert(UNIT),
            EdgeKind::Discourse => bags[2].insert(e.label.clone()),
            EdgeKind::Role => bags[3].insert(e.label.clone()),
            EdgeKind::Member => bags[4].insert(UNIT),
            EdgeKind::Name | EdgeKind::Operator => {}
        }
    }
    bags
}

fn anchored(d: &Drg, source: NodeId, label: &str, target: &EdgeTarget) -> String {
    let tgt = match target {
        EdgeTarget::Node(n) => d.node_label(*n),
        EdgeTarget::Constant(c) => c.clone(),
        EdgeTarget::Literal(l) => format!("\"{l}\""),
    };
    format!("{}\t{label}\t{tgt}", d.node_label(source))
}

fn edge_bags(d: &Drg) -> [LabelBag; 5] {
    let mut bags: [LabelBag; 5] = Default::default();
    for e in &d.edges {
        let slot = match e.kind {
            EdgeKind::Role => 0,
            EdgeKind::Name => 1,
            EdgeKind::Member => 2,
            EdgeKind::Operator => 3,
            EdgeKind::Discourse => 4,
        };
        bags[slot].insert(anchored(d, e.source, &e.label, &e.target));
    }
    bags
}

pub(crate) fn node_level_counts(pred: &Drg, gold: &Drg) -> [Counts; 10] {
    let (p, g) = (node_bags(pred), node_bags(gold));
    std::array::from_fn(|i| multiset_counts(&p[i], &g[i]))
}

pub(crate) fn edge_level_counts(pred: &Drg, gold: &Drg) -> [Counts; 5] {
    let (p, g) = (edge_bags(pred), edge_bags(gold));
    std::array::from_fn(|i| multiset_counts(&p[i], &g[i]))
}

/// Names, negation, discourse (NEGATION excluded), roles, members and
/// concepts with their part-of-speech breakdown. Negation and members are
/// compared as counts only.
pub fn node_level_report(pred: &Drg, gold: &Drg) -> NodeLevel {
    NodeLevel::from_counts(node_level_counts(pred, gold))
}

/// Edge triples written as `source-label, edge-label, target-label`, so a
/// Name edge only matches when its literal is identical.
pub fn edge_level_report(pred: &Drg, gold: &Drg) -> EdgeLevel {
    EdgeLevel::from_counts(edge_level_counts(pred, gold))
}

pub fn graph_level_report(
    pred: &Drg,
    gold: &Drg,
    restarts: usize,
    seed: u64,
) -> GraphLevel<crate::smatch::MatchResult> {
    graph_level_in_stream(pred, gold, restarts, seed, 0)
}

pub(crate) fn graph_level_in_stream(
    pred: &Drg,
    gold: &Drg,
    restarts: usize,
    seed: u64,
    stream: u64,
) -> GraphLevel<crate::smatch::MatchResult> {
    let score = |p: &TripleSet, g: &TripleSet| smatch_score_in_stream(p, g, restarts, seed, stream);
    let (pf, gf) = (extract_triples(pred, Granularity::Fine), extract_triples(gold, Granularity::Fine));
    let (pc, gc) = (extract_triples(pred, Granularity::Coarse), extract_triples(gold, Granularity::Coarse));
    let stripped = |c| {
        let (p, g) = (strip_category(&pc, c), strip_category(&gc, c));
        score(&p, &g)
    };
    GraphLevel {
        smatch_fine: score(&pf, &gf),
        smatch_coarse: score(&pc, &gc),
        no_roles: stripped(StripCategory::Roles),
        no_discourse: stripped(StripCategory::Discourse),
        no_operators: stripped(StripCategory::Operators),
        no_senses: stripped(StripCategory::Senses),
    }
}
