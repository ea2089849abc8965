use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Category, Granularity, PenmanError, TaggedTriple, Triple, TripleSet, VarKind, SENSE_LABEL};
use crate::sbn::SynsetId;

/// Information type removed for a graph-level ablation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StripCategory {
    Roles,
    Discourse,
    Operators,
    Senses,
}

impl StripCategory {
    pub const ALL: [StripCategory; 4] =
        [StripCategory::Roles, StripCategory::Discourse, StripCategory::Operators, StripCategory::Senses];
}

impl FromStr for StripCategory {
    type Err = PenmanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "roles" => Ok(StripCategory::Roles),
            "discourse" => Ok(StripCategory::Discourse),
            "operators" => Ok(StripCategory::Operators),
            "senses" => Ok(StripCategory::Senses),
            _ => Err(PenmanError::UnknownCategory(s.to_string())),
        }
    }
}

impl fmt::Display for StripCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Removes (or, for senses, coarsens) one information type.
///
/// Name and member triples survive every ablation. Sense stripping rewrites
/// `lemma.pos.NN` instance labels to `lemma.pos` in coarse mode and drops the
/// split-off sense facts in fine mode.
pub fn strip_category(ts: &TripleSet, category: StripCategory) -> TripleSet {
    let drop = |t: &TaggedTriple| match category {
        StripCategory::Roles => t.category == Category::Role,
        StripCategory::Discourse => t.category == Category::Discourse,
        StripCategory::Operators => t.category == Category::Operator,
        StripCategory::Senses => {
            ts.granularity == Granularity::Fine
                && t.category == Category::ConceptPart
                && matches!(&t.triple, Triple::Attribute { label, .. } if label == SENSE_LABEL)
        }
    };
    let triples = ts
        .triples
        .iter()
        .filter(|t| !drop(t))
        .map(|t| match (&t.triple, category) {
            (Triple::Instance { var, label }, StripCategory::Senses) if ts.vars[*var].kind == VarKind::Concept => {
                let label = label.parse::<SynsetId>().map(|s| s.without_sense()).unwrap_or_else(|_| label.clone());
                TaggedTriple { triple: Triple::Instance { var: *var, label }, category: t.category }
            }
            _ => t.clone(),
        })
        .collect();
    TripleSet { granularity: ts.granularity, vars: ts.vars.clone(), triples }
}
