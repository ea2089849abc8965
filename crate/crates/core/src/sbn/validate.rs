use std::fmt;

use serde::Serialize;

use super::drg::{Drg, EdgeKind, EdgeTarget, NodeId, NAME_LABEL};
use super::token::Position;
use super::vocab::Vocabulary;
use super::SbnError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Location {
    Document,
    Token(Position),
    Concept(usize),
    Box(usize),
    Edge(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Document => write!(f, "document"),
            Location::Token(p) => write!(f, "{p}"),
            Location::Concept(i) => write!(f, "c{i}"),
            Location::Box(i) => write!(f, "b{i}"),
            Location::Edge(i) => write!(f, "edge {i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IssueCode {
    // syntax
    UnterminatedLiteral,
    UnknownToken,
    DanglingNodeRef,
    DanglingBoxRef,
    OddEdgeTokens,
    EdgeWithoutConcept,
    EmptyDocument,
    // structure
    MissingRootBox,
    DanglingNode,
    KindMismatch,
    MissingMember,
    MultipleMembers,
    OrphanBox,
    MultipleParents,
    RootHasParent,
    BoxCycle,
    // warnings
    EmptyNameLiteral,
    IsolatedConcept,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub location: Location,
    pub code: IssueCode,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct WellFormedReport {
    pub well_formed: bool,
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl WellFormedReport {
    fn from_issues(errors: Vec<Issue>, warnings: Vec<Issue>) -> Self {
        WellFormedReport { well_formed: errors.is_empty(), errors, warnings }
    }

    /// Report for a document that did not get past the parser.
    pub fn from_parse_error(err: &SbnError) -> Self {
        let (location, code) = match err {
            SbnError::UnterminatedLiteral { pos } => (Location::Token(*pos), IssueCode::UnterminatedLiteral),
            SbnError::UnknownToken { pos, .. } => (Location::Token(*pos), IssueCode::UnknownToken),
            SbnError::DanglingNodeRef { pos, .. } => (Location::Token(*pos), IssueCode::DanglingNodeRef),
            SbnError::DanglingBoxRef { pos, .. } => (Location::Token(*pos), IssueCode::DanglingBoxRef),
            SbnError::OddEdgeTokens { pos, .. } => (Location::Token(*pos), IssueCode::OddEdgeTokens),
            SbnError::EdgeWithoutConcept { pos, .. } => (Location::Token(*pos), IssueCode::EdgeWithoutConcept),
            SbnError::EmptyDocument => (Location::Document, IssueCode::EmptyDocument),
            SbnError::NotSerializable { .. } => (Location::Document, IssueCode::KindMismatch),
        };
        WellFormedReport::from_issues(vec![Issue { location, code, message: err.to_string() }], vec![])
    }
}

/// Checks the structural invariants of `drg` against the default vocabulary.
pub fn validate(drg: &Drg) -> WellFormedReport {
    validate_with(drg, &Vocabulary::default())
}

pub fn validate_with(drg: &Drg, vocab: &Vocabulary) -> WellFormedReport {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let mut err = |location, code, message: String| errors.push(Issue { location, code, message });

    if drg.is_empty() {
        err(Location::Document, IssueCode::EmptyDocument, "document has no nodes".into());
        return WellFormedReport::from_issues(errors, warnings);
    }
    if drg.box_count == 0 {
        err(Location::Document, IssueCode::MissingRootBox, "concepts present but no box".into());
    }

    let mut members = vec![0usize; drg.concepts.len()];
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); drg.box_count];
    let mut connected = vec![false; drg.concepts.len()];

    for (i, e) in drg.edges.iter().enumerate() {
        let loc = Location::Edge(i);
        if !drg.contains(e.source) {
            err(loc, IssueCode::DanglingNode, format!("source {} does not exist", e.source));
            continue;
        }
        if let Some(t) = e.target.node() {
            if !drg.contains(t) {
                err(loc, IssueCode::DanglingNode, format!("target {t} does not exist"));
                continue;
            }
        }
        let target = e.target.node();
        let shape_ok = match e.kind {
            EdgeKind::Member => {
                matches!((e.source, target), (NodeId::Box(_), Some(NodeId::Concept(_))))
            }
            EdgeKind::Discourse => matches!((e.source, target), (NodeId::Box(_), Some(NodeId::Box(_)))),
            EdgeKind::Role | EdgeKind::Operator | EdgeKind::Name => {
                matches!(e.source, NodeId::Concept(_)) && !matches!(target, Some(NodeId::Box(_)))
            }
        };
        if !shape_ok {
            err(
                loc,
                IssueCode::KindMismatch,
                format!("{:?} edge {} -> {:?} has the wrong endpoints", e.kind, e.source, e.target),
            );
            continue;
        }
        if matches!(e.kind, EdgeKind::Role | EdgeKind::Operator | EdgeKind::Name) {
            let expected = if e.label == NAME_LABEL {
                EdgeKind::Name
            } else if vocab.is_operator(&e.label) {
                EdgeKind::Operator
            } else {
                EdgeKind::Role
            };
            if expected != e.kind {
                err(
                    loc,
                    IssueCode::KindMismatch,
                    format!("label {} implies {expected:?}, edge is {:?}", e.label, e.kind),
                );
            }
        }
        match (e.kind, e.source, target) {
            (EdgeKind::Member, _, Some(NodeId::Concept(c))) => members[c] += 1,
            (EdgeKind::Discourse, NodeId::Box(s), Some(NodeId::Box(t))) => parents[t].push(s),
            (EdgeKind::Role | EdgeKind::Operator, NodeId::Concept(s), t) => {
                connected[s] = true;
                if let Some(NodeId::Concept(t)) = t {
                    connected[t] = true;
                }
            }
            _ => {}
        }
        if e.kind == EdgeKind::Name && e.target == EdgeTarget::Literal(String::new()) {
            warnings.push(Issue {
                location: loc,
                code: IssueCode::EmptyNameLiteral,
                message: format!("{} has an empty name", e.source),
            });
        }
    }

    for (c, &n) in members.iter().enumerate() {
        match n {
            0 => err(Location::Concept(c), IssueCode::MissingMember, format!("c{c} belongs to no box")),
            1 => {}
            _ => err(Location::Concept(c), IssueCode::MultipleMembers, format!("c{c} belongs to {n} boxes")),
        }
    }

    let mut tree_shaped = true;
    for (b, ps) in parents.iter().enumerate() {
        match (b, ps.len()) {
            (0, 0) => {}
            (0, _) => {
                tree_shaped = false;
                err(Location::Box(0), IssueCode::RootHasParent, "b0 has an incoming discourse edge".into());
            }
            (_, 0) => {
                tree_shaped = false;
                err(Location::Box(b), IssueCode::OrphanBox, format!("b{b} has no incoming discourse edge"));
            }
            (_, 1) => {}
            (_, n) => {
                tree_shaped = false;
                err(Location::Box(b), IssueCode::MultipleParents, format!("b{b} has {n} incoming discourse edges"));
            }
        }
    }
    if tree_shaped {
        for start in 1..drg.box_count {
            let mut b = start;
            let mut steps = 0;
            while b != 0 && steps <= drg.box_count {
                b = parents[b][0];
                steps += 1;
            }
            if b != 0 {
                err(Location::Box(start), IssueCode::BoxCycle, format!("b{start} is not reachable from b0"));
            }
        }
    }

    for (c, &ok) in connected.iter().enumerate() {
        if !ok && drg.concepts.len() > 1 {
            warnings.push(Issue {
                location: Location::Concept(c),
                code: IssueCode::IsolatedConcept,
                message: format!("c{c} ({}) has no role or operator edge", drg.concepts[c].synset),
            });
        }
    }

    WellFormedReport::from_issues(errors, warnings)
}

/// Parses and validates one document, folding parse failures into the report.
pub fn check_document(text: &str, vocab: &Vocabulary, origin: &str) -> (Option<Drg>, WellFormedReport) {
    match super::parse::parse_document(text, vocab, origin) {
        Ok(drg) => {
            let report = validate_with(&drg, vocab);
            (Some(drg), report)
        }
        Err(e) => (None, WellFormedReport::from_parse_error(&e)),
    }
}
