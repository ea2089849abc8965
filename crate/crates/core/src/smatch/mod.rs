//! Triple-overlap scoring between two [`TripleSet`]s.
//!
//! The score is the best matched-triple count over injective mappings from
//! prediction variables to gold variables. [`smatch_score`] searches with
//! steepest-ascent hill climbing and restarts; [`exhaustive_match`] enumerates
//! every mapping and serves as the reference for small graphs.

mod exhaustive;
mod hill;
mod state;

use serde::{Serialize, Serializer};

use crate::penman::TripleSet;

pub use exhaustive::{exhaustive_match, DEFAULT_MAX_VARS};
pub use hill::{smatch_score, smatch_score_in_stream, DEFAULT_RESTARTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmatchError {
    #[error("exhaustive search over {vars} variables exceeds the limit of {max_vars}")]
    TooLarge { vars: usize, max_vars: usize },
    #[error("mapping is not injective: gold variable {0} is used twice")]
    NotInjective(usize),
    #[error("mapping refers to a variable outside the triple sets")]
    OutOfRange,
}

/// Matched / predicted / gold triple counts. Sums of counts are how corpus
/// scores are pooled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Counts {
    pub matched: usize,
    pub pred_total: usize,
    pub gold_total: usize,
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            matched: self.matched + o.matched,
            pred_total: self.pred_total + o.pred_total,
            gold_total: self.gold_total + o.gold_total,
        }
    }
}

impl std::ops::AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        *self = *self + o;
    }
}

impl std::iter::Sum for Counts {
    fn sum<I: Iterator<Item = Counts>>(iter: I) -> Counts {
        iter.fold(Counts::default(), |a, b| a + b)
    }
}

impl Counts {
    pub fn new(matched: usize, pred_total: usize, gold_total: usize) -> Self {
        Counts { matched, pred_total, gold_total }
    }

    /// Precision, recall and F1. A zero total gives zero for that side, and
    /// two empty inputs score 1.0 across the board.
    pub fn prf(&self) -> (f64, f64, f64) {
        if self.pred_total == 0 && self.gold_total == 0 {
            return (1.0, 1.0, 1.0);
        }
        let ratio = |n: usize, d: usize| if d == 0 { 0.0 } else { n as f64 / d as f64 };
        let p = ratio(self.matched, self.pred_total);
        let r = ratio(self.matched, self.gold_total);
        let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
        (p, r, f)
    }

    pub fn score(&self) -> Score {
        let (precision, recall, f1) = self.prf();
        Score { matched: self.matched, pred_total: self.pred_total, gold_total: self.gold_total, precision, recall, f1 }
    }
}

/// Counts together with the derived precision, recall and F1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Score {
    pub matched: usize,
    pub pred_total: usize,
    pub gold_total: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Score {
    pub fn counts(&self) -> Counts {
        Counts::new(self.matched, self.pred_total, self.gold_total)
    }
}

/// Partial injective map from prediction variables to gold variables,
/// indexed by prediction variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VariableMapping {
    targets: Vec<Option<usize>>,
}

impl VariableMapping {
    pub fn new(targets: Vec<Option<usize>>) -> Result<Self, SmatchError> {
        let mut seen = std::collections::HashSet::new();
        for g in targets.iter().flatten() {
            if !seen.insert(*g) {
                return Err(SmatchError::NotInjective(*g));
            }
        }
        Ok(VariableMapping { targets })
    }

    /// Maps variable `i` to `i` for the first `n` variables.
    pub fn identity(n: usize) -> Self {
        VariableMapping { targets: (0..n).map(Some).collect() }
    }

    pub fn from_pairs(pred_vars: usize, pairs: &[(usize, usize)]) -> Result<Self, SmatchError> {
        let mut targets = vec![None; pred_vars];
        for &(p, g) in pairs {
            *targets.get_mut(p).ok_or(SmatchError::OutOfRange)? = Some(g);
        }
        VariableMapping::new(targets)
    }

    pub fn get(&self, pred_var: usize) -> Option<usize> {
        self.targets.get(pred_var).copied().flatten()
    }

    pub fn targets(&self) -> &[Option<usize>] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same pairs seen from the gold side.
    pub fn inverse(&self, gold_vars: usize) -> VariableMapping {
        let mut targets = vec![None; gold_vars];
        for (p, g) in self.targets.iter().enumerate() {
            if let Some(g) = g {
                if *g < gold_vars {
                    targets[*g] = Some(p);
                }
            }
        }
        VariableMapping { targets }
    }

    fn resized(&self, pred_vars: usize, gold_vars: usize) -> Vec<Option<usize>> {
        (0..pred_vars).map(|p| self.get(p).filter(|g| *g < gold_vars)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub counts: Counts,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub mapping: VariableMapping,
    /// Variable names for the mapping, (prediction, gold).
    pub mapped_names: Vec<(String, String)>,
}

impl MatchResult {
    pub(crate) fn build(pred: &TripleSet, gold: &TripleSet, matched: usize, map: Vec<Option<usize>>) -> Self {
        let counts = Counts::new(matched, pred.len(), gold.len());
        let (precision, recall, f1) = counts.prf();
        let mapped_names = map
            .iter()
            .enumerate()
            .filter_map(|(p, g)| g.map(|g| (pred.vars[p].name.clone(), gold.vars[g].name.clone())))
            .collect();
        MatchResult { counts, precision, recall, f1, mapping: VariableMapping { targets: map }, mapped_names }
    }

    pub fn matched(&self) -> usize {
        self.counts.matched
    }

    pub fn score(&self) -> Score {
        self.counts.score()
    }
}

impl Serialize for MatchResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MatchResult", 7)?;
        st.serialize_field("matched", &self.counts.matched)?;
        st.serialize_field("pred_total", &self.counts.pred_total)?;
        st.serialize_field("gold_total", &self.counts.gold_total)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("recall", &self.recall)?;
        st.serialize_field("f1", &self.f1)?;
        st.serialize_field("mapping", &self.mapped_names)?;
        st.end()
    }
}

/// Number of prediction triples that equal a distinct gold triple once
/// their variables are renamed through `m`. Unmapped variables match nothing.
pub fn matched_triples(pred: &TripleSet, gold: &TripleSet, m: &VariableMapping) -> usize {
    let problem = state::Problem::new(pred, gold);
    let map = m.resized(pred.vars.len(), gold.vars.len());
    state::State::with_mapping(&problem, &map).matched
}
