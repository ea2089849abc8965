use super::state::{Problem, State};
use super::{MatchResult, SmatchError};
use crate::penman::TripleSet;

pub const DEFAULT_MAX_VARS: usize = 8;

/// Global optimum over all injective mappings from the smaller variable set
/// into the larger one. Branches that cannot beat the best count so far are
/// cut, which does not change the result.
pub fn exhaustive_match(pred: &TripleSet, gold: &TripleSet, max_vars: usize) -> Result<MatchResult, SmatchError> {
    let smaller = pred.var_count().min(gold.var_count());
    if smaller > max_vars {
        return Err(SmatchError::TooLarge { vars: smaller, max_vars });
    }
    let problem = Problem::new(pred, gold);
    let mut search = Search {
        st: State::new(&problem),
        best: 0,
        best_map: vec![None; problem.pred_vars],
        pred_side: problem.pred_vars <= problem.gold_vars,
    };
    search.dfs(0);
    let Search { best, best_map, .. } = search;
    Ok(MatchResult::build(pred, gold, best, best_map))
}

struct Search<'p> {
    st: State<'p>,
    best: usize,
    best_map: Vec<Option<usize>>,
    /// enumerate over prediction variables (true) or gold variables (false)
    pred_side: bool,
}

impl Search<'_> {
    /// matched so far plus every triple that is not yet fully mapped
    fn bound(&self) -> usize {
        self.st.matched + (self.st.pred_total() - self.st.scorable)
    }

    fn dfs(&mut self, depth: usize) {
        let (pred_vars, gold_vars) = (self.st.map.len(), self.st.used.len());
        if self.st.matched > self.best {
            self.best = self.st.matched;
            self.best_map = self.st.map.clone();
        }
        let levels = if self.pred_side { pred_vars } else { gold_vars };
        if depth == levels || self.bound() <= self.best {
            return;
        }
        if self.pred_side {
            for g in 0..gold_vars {
                if self.st.used[g].is_none() {
                    self.st.set(&[(depth, Some(g))]);
                    self.dfs(depth + 1);
                    self.st.set(&[(depth, None)]);
                }
            }
        } else {
            for p in 0..pred_vars {
                if self.st.map[p].is_none() {
                    self.st.set(&[(p, Some(depth))]);
                    self.dfs(depth + 1);
                    self.st.set(&[(p, None)]);
                }
            }
        }
    }
}
