use std::fmt;

use serde::Serialize;

use super::synset::SynsetId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NodeId {
    Box(usize),
    Concept(usize),
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Box(i) => write!(f, "b{i}"),
            NodeId::Concept(i) => write!(f, "c{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    Role,
    Operator,
    Name,
    Member,
    Discourse,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeTarget {
    Node(NodeId),
    Constant(String),
    Literal(String),
}

impl EdgeTarget {
    pub fn node(&self) -> Option<NodeId> {
        match self {
            EdgeTarget::Node(n) => Some(*n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub source: NodeId,
    pub label: String,
    pub kind: EdgeKind,
    pub target: EdgeTarget,
}

pub const MEMBER_LABEL: &str = "member";
pub const NAME_LABEL: &str = "Name";
pub const NEGATION_LABEL: &str = "NEGATION";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Concept {
    pub synset: SynsetId,
}

/// A Discourse Representation Graph.
///
/// Concepts and boxes are addressed by their position in document order.
/// Edges are stored in the order they were introduced, which is also the
/// order the serializer writes them back.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Drg {
    pub concepts: Vec<Concept>,
    pub box_count: usize,
    pub edges: Vec<Edge>,
    pub origin: String,
}

impl Drg {
    pub fn new(origin: impl Into<String>) -> Self {
        Drg { origin: origin.into(), ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.box_count == 0
    }

    pub fn add_box(&mut self) -> usize {
        self.box_count += 1;
        self.box_count - 1
    }

    /// Appends a concept to `in_box`, adding its member edge.
    pub fn add_concept(&mut self, synset: SynsetId, in_box: usize) -> usize {
        let idx = self.concepts.len();
        self.concepts.push(Concept { synset });
        self.edges.push(Edge {
            source: NodeId::Box(in_box),
            label: MEMBER_LABEL.to_string(),
            kind: EdgeKind::Member,
            target: EdgeTarget::Node(NodeId::Concept(idx)),
        });
        idx
    }

    pub fn add_edge(&mut self, source: NodeId, label: impl Into<String>, kind: EdgeKind, target: EdgeTarget) {
        self.edges.push(Edge { source, label: label.into(), kind, target });
    }

    pub fn edges_of_kind(&self, kind: EdgeKind) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.kind == kind)
    }

    /// Box that holds concept `idx`, according to its first member edge.
    pub fn box_of(&self, idx: usize) -> Option<usize> {
        self.edges_of_kind(EdgeKind::Member).find_map(|e| match (e.source, &e.target) {
            (NodeId::Box(b), EdgeTarget::Node(NodeId::Concept(c))) if *c == idx => Some(b),
            _ => None,
        })
    }

    /// Human-readable label of a node: the synset for concepts, `box` for boxes.
    pub fn node_label(&self, node: NodeId) -> String {
        match node {
            NodeId::Box(_) => "box".to_string(),
            NodeId::Concept(i) => {
                self.concepts.get(i).map(|c| c.synset.to_string()).unwrap_or_else(|| format!("?c{i}"))
            }
        }
    }

    pub fn contains(&self, node: NodeId) -> bool {
        match node {
            NodeId::Box(i) => i < self.box_count,
            NodeId::Concept(i) => i < self.concepts.len(),
        }
    }
}
