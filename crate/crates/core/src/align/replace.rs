use std::collections::HashMap;

use serde::Serialize;

use super::ne::{name_key, NeEntry, NeFlag};
use crate::sbn::{Drg, EdgeKind, EdgeTarget, NodeId};

pub const NATIONALITY_SYNSET: &str = "country.n.02";
pub const SOURCE_ROLE: &str = "Source";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReplacementStatus {
    Replaced,
    Patched,
    Flagged,
    NationalitySkipped,
    Unmatched,
}

impl std::fmt::Display for ReplacementStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Outcome for one Name edge with a literal target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplacementRecord {
    pub edge: usize,
    pub concept: String,
    pub source: String,
    /// literal now on the edge
    pub target: String,
    pub status: ReplacementStatus,
    pub flags: Vec<NeFlag>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReplacementReport {
    pub records: Vec<ReplacementRecord>,
}

impl ReplacementReport {
    pub fn count(&self, status: ReplacementStatus) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }
}

fn is_nationality(drg: &Drg, concept: usize) -> bool {
    drg.concepts[concept].synset.to_string() == NATIONALITY_SYNSET
        && drg.edges.iter().any(|e| {
            e.kind == EdgeKind::Role && e.label == SOURCE_ROLE && e.target == EdgeTarget::Node(NodeId::Concept(concept))
        })
}

/// Rewrites Name literals that have an unflagged dictionary entry.
///
/// Entries are looked up by name case-insensitively, with `~`, `_` and
/// spaces treated alike. Only Name-edge literals ever change.
pub fn replace_names(drg: &Drg, entries: &[NeEntry], skip_nationality: bool) -> (Drg, ReplacementReport) {
    let mut by_key: HashMap<String, &NeEntry> = HashMap::new();
    for e in entries {
        by_key.entry(name_key(&e.src_literal)).or_insert(e);
    }
    let mut out = drg.clone();
    let mut report = ReplacementReport::default();
    for (i, edge) in drg.edges.iter().enumerate() {
        let (EdgeKind::Name, NodeId::Concept(c), EdgeTarget::Literal(lit)) = (edge.kind, edge.source, &edge.target)
        else {
            continue;
        };
        let mut record = ReplacementRecord {
            edge: i,
            concept: drg.node_label(edge.source),
            source: lit.clone(),
            target: lit.clone(),
            status: ReplacementStatus::Unmatched,
            flags: Vec::new(),
        };
        if let Some(entry) = by_key.get(&name_key(lit)) {
            record.flags = entry.flags.iter().copied().collect();
        }
        if skip_nationality && is_nationality(drg, c) {
            record.status = ReplacementStatus::NationalitySkipped;
        } else if let Some(entry) = by_key.get(&name_key(lit)) {
            if entry.is_clean() {
                out.edges[i].target = EdgeTarget::Literal(entry.tgt_literal.clone());
                record.target = entry.tgt_literal.clone();
                record.status = ReplacementStatus::Replaced;
            } else {
                record.status = ReplacementStatus::Flagged;
            }
        }
        report.records.push(record);
    }
    (out, report)
}

/// Manual correction: (document id, source literal, corrected target).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Patch {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Applies corrections for this document after [`replace_names`]. A patch
/// overrides whatever happened to the matching name before.
pub fn apply_patches(drg: &mut Drg, report: &mut ReplacementReport, id: &str, patches: &[Patch]) {
    for p in patches.iter().filter(|p| p.id == id) {
        let key = name_key(&p.src);
        for r in report.records.iter_mut().filter(|r| name_key(&r.source) == key) {
            drg.edges[r.edge].target = EdgeTarget::Literal(p.tgt.clone());
            r.target = p.tgt.clone();
            r.status = ReplacementStatus::Patched;
        }
    }
}
