//! Triple and Penman views of a [`Drg`].
//!
//! Variables are `b0, b1, ...` for boxes and `c0, c1, ...` for concepts, in
//! document order. In fine mode constants and literals additionally get their
//! own `x0, x1, ...` variables.

mod read;
mod render;
mod strip;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::sbn::{Drg, EdgeKind, EdgeTarget, NodeId};

pub use read::read_penman;
pub use render::{render_penman, to_penman, triples_tsv};
pub use strip::{strip_category, StripCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    /// Synsets split into lemma, pos and sense facts; constants get variables.
    Fine,
    /// Synsets kept whole; constants attached directly as attributes.
    Coarse,
}

impl FromStr for Granularity {
    type Err = PenmanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fine" => Ok(Granularity::Fine),
            "coarse" => Ok(Granularity::Coarse),
            other => Err(PenmanError::UnknownGranularity(other.to_string())),
        }
    }
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Granularity::Fine => "fine",
            Granularity::Coarse => "coarse",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PenmanError {
    #[error("unknown granularity `{0}` (expected fine or coarse)")]
    UnknownGranularity(String),
    #[error("unknown category `{0}` (expected roles, discourse, operators or senses)")]
    UnknownCategory(String),
    #[error("penman syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

pub type VarId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VarKind {
    Box,
    Concept,
    Constant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Triple {
    Instance { var: VarId, label: String },
    Relation { source: VarId, label: String, target: VarId },
    Attribute { var: VarId, label: String, value: String },
}

/// What part of the graph a triple came from; drives the ablations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Category {
    Instance,
    ConceptPart,
    Member,
    Discourse,
    Role,
    Operator,
    Name,
}

impl From<EdgeKind> for Category {
    fn from(k: EdgeKind) -> Self {
        match k {
            EdgeKind::Role => Category::Role,
            EdgeKind::Operator => Category::Operator,
            EdgeKind::Name => Category::Name,
            EdgeKind::Member => Category::Member,
            EdgeKind::Discourse => Category::Discourse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedTriple {
    pub triple: Triple,
    pub category: Category,
}

/// A triple with variables spelled out by name; used for comparisons that
/// should not depend on variable numbering internals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedTriple {
    Instance(String, String),
    Relation(String, String, String),
    Attribute(String, String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleSet {
    pub granularity: Granularity,
    pub vars: Vec<Variable>,
    pub triples: Vec<TaggedTriple>,
}

pub const BOX_LABEL: &str = "box";
pub const CONCEPT_LABEL: &str = "concept";
pub const LEMMA_LABEL: &str = "lemma";
pub const POS_LABEL: &str = "pos";
pub const SENSE_LABEL: &str = "sense";

impl TripleSet {
    pub fn empty(granularity: Granularity) -> Self {
        TripleSet { granularity, vars: Vec::new(), triples: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter().map(|t| &t.triple)
    }

    fn add_var(&mut self, name: String, kind: VarKind) -> VarId {
        self.vars.push(Variable { name, kind });
        self.vars.len() - 1
    }

    fn push(&mut self, triple: Triple, category: Category) {
        self.triples.push(TaggedTriple { triple, category });
    }

    pub fn named(&self, t: &Triple) -> NamedTriple {
        let n = |v: &VarId| self.vars[*v].name.clone();
        match t {
            Triple::Instance { var, label } => NamedTriple::Instance(n(var), label.clone()),
            Triple::Relation { source, label, target } => NamedTriple::Relation(n(source), label.clone(), n(target)),
            Triple::Attribute { var, label, value } => NamedTriple::Attribute(n(var), label.clone(), value.clone()),
        }
    }

    /// All triples by name, sorted; equal for equal multisets.
    pub fn named_sorted(&self) -> Vec<NamedTriple> {
        let mut v: Vec<_> = self.iter().map(|t| self.named(t)).collect();
        v.sort();
        v
    }

    /// Label of the instance triple of `var`, if any.
    pub fn instance_label(&self, var: VarId) -> Option<&str> {
        self.iter().find_map(|t| match t {
            Triple::Instance { var: v, label } if *v == var => Some(label.as_str()),
            _ => None,
        })
    }
}

/// Builds the triple multiset of `drg` at the given granularity.
pub fn extract_triples(drg: &Drg, g: Granularity) -> TripleSet {
    let mut ts = TripleSet::empty(g);
    let boxes: Vec<VarId> = (0..drg.box_count).map(|i| ts.add_var(format!("b{i}"), VarKind::Box)).collect();
    let concepts: Vec<VarId> = (0..drg.concepts.len()).map(|i| ts.add_var(format!("c{i}"), VarKind::Concept)).collect();
    let var_of = |n: NodeId| match n {
        NodeId::Box(i) => boxes[i],
        NodeId::Concept(i) => concepts[i],
    };

    for &b in &boxes {
        ts.push(Triple::Instance { var: b, label: BOX_LABEL.into() }, Category::Instance);
    }
    for (i, c) in drg.concepts.iter().enumerate() {
        let var = concepts[i];
        match g {
            Granularity::Coarse => {
                ts.push(Triple::Instance { var, label: c.synset.to_string() }, Category::Instance);
            }
            Granularity::Fine => {
                ts.push(Triple::Instance { var, label: CONCEPT_LABEL.into() }, Category::Instance);
                let parts = [
                    (LEMMA_LABEL, c.synset.lemma().to_string()),
                    (POS_LABEL, c.synset.pos().as_char().to_string()),
                    (SENSE_LABEL, format!("{:02}", c.synset.sense())),
                ];
                for (label, value) in parts {
                    ts.push(Triple::Attribute { var, label: label.into(), value }, Category::ConceptPart);
                }
            }
        }
    }

    let mut fresh = 0;
    for e in &drg.edges {
        let source = var_of(e.source);
        let category = Category::from(e.kind);
        match &e.target {
            EdgeTarget::Node(n) => {
                ts.push(Triple::Relation { source, label: e.label.clone(), target: var_of(*n) }, category);
            }
            EdgeTarget::Constant(v) | EdgeTarget::Literal(v) => match g {
                Granularity::Coarse => {
                    ts.push(Triple::Attribute { var: source, label: e.label.clone(), value: v.clone() }, category);
                }
                Granularity::Fine => {
                    let x = ts.add_var(format!("x{fresh}"), VarKind::Constant);
                    fresh += 1;
                    ts.push(Triple::Instance { var: x, label: v.clone() }, Category::Instance);
                    ts.push(Triple::Relation { source, label: e.label.clone(), target: x }, category);
                }
            },
        }
    }
    ts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbn::{parse_document, Vocabulary};

    fn drg(s: &str) -> Drg {
        parse_document(s, &Vocabulary::default(), "t").unwrap()
    }

    #[test]
    fn coarse_minimal() {
        let ts = extract_triples(&drg("time.n.08 EQU now"), Granularity::Coarse);
        let n = |s: &str| s.to_string();
        let mut expected = vec![
            NamedTriple::Instance(n("b0"), n("box")),
            NamedTriple::Relation(n("b0"), n("member"), n("c0")),
            NamedTriple::Instance(n("c0"), n("time.n.08")),
            NamedTriple::Attribute(n("c0"), n("EQU"), n("now")),
        ];
        expected.sort();
        assert_eq!(ts.named_sorted(), expected);
        assert_eq!(ts.var_count(), 2);
    }

    #[test]
    fn coarse_count_for_adjective_document() {
        let ts = extract_triples(
            &drg("female.n.02 time.n.08 EQU now very.r.01 handy.a.03 AttributeOf -3 Time -2 Degree -1 Instrument +1 saw.n.02"),
            Granularity::Coarse,
        );
        assert_eq!(ts.len(), 16);
        let count = |c: Category| ts.triples.iter().filter(|t| t.category == c).count();
        assert_eq!(count(Category::Instance), 6);
        assert_eq!(count(Category::Member), 5);
        assert_eq!(count(Category::Role), 4);
        assert_eq!(count(Category::Operator), 1);
    }

    #[test]
    fn fine_splits_synsets_and_lifts_constants() {
        let d = drg("time.n.08 EQU now");
        let fine = extract_triples(&d, Granularity::Fine);
        let coarse = extract_triples(&d, Granularity::Coarse);
        assert!(fine.len() > coarse.len());
        let n = |s: &str| s.to_string();
        assert!(fine.named_sorted().contains(&NamedTriple::Attribute(n("c0"), n("sense"), n("08"))));
        assert!(fine.named_sorted().contains(&NamedTriple::Relation(n("c0"), n("EQU"), n("x0"))));
        assert!(fine.named_sorted().contains(&NamedTriple::Instance(n("x0"), n("now"))));
        // one instance per variable in both modes
        for ts in [&fine, &coarse] {
            let instances = ts.iter().filter(|t| matches!(t, Triple::Instance { .. })).count();
            assert_eq!(instances, ts.var_count());
        }
    }

    #[test]
    fn granularity_parse() {
        assert_eq!("fine".parse::<Granularity>().unwrap(), Granularity::Fine);
        assert!("medium".parse::<Granularity>().is_err());
    }
}
