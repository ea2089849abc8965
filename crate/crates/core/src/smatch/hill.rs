use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::state::{Problem, State};
use super::MatchResult;
use crate::penman::TripleSet;

pub const DEFAULT_RESTARTS: usize = 4;

/// Best mapping found by `restarts` hill-climbing runs.
///
/// The first run starts from a greedy seeding that pairs variables with equal
/// instance labels in order; the others start from random injective mappings
/// drawn from a ChaCha8 stream seeded with `seed`. Each run applies the
/// single reassignment or swap with the largest gain until none improves.
/// A `restarts` of 0 is treated as 1.
pub fn smatch_score(pred: &TripleSet, gold: &TripleSet, restarts: usize, seed: u64) -> MatchResult {
    smatch_score_in_stream(pred, gold, restarts, seed, 0)
}

/// As [`smatch_score`], drawing random starts from ChaCha stream `stream`.
/// Corpus scoring uses the document index so every document gets its own
/// reproducible sequence regardless of evaluation order.
pub fn smatch_score_in_stream(
    pred: &TripleSet,
    gold: &TripleSet,
    restarts: usize,
    seed: u64,
    stream: u64,
) -> MatchResult {
    let problem = Problem::new(pred, gold);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut best: Option<(usize, Vec<Option<usize>>)> = None;

    for r in 0..restarts.max(1) {
        let init = if r == 0 { greedy_init(&problem) } else { random_init(&problem, &mut rng) };
        let mut st = State::with_mapping(&problem, &init);
        climb(&mut st, &problem);
        if best.as_ref().is_none_or(|(m, _)| st.matched > *m) {
            best = Some((st.matched, st.map.clone()));
        }
        if st.matched == problem.pred_total.min(problem.gold_total) {
            break;
        }
    }
    let (matched, map) = best.expect("at least one restart");
    MatchResult::build(pred, gold, matched, map)
}

fn greedy_init(p: &Problem) -> Vec<Option<usize>> {
    let mut used = vec![false; p.gold_vars];
    (0..p.pred_vars)
        .map(|v| {
            let label = p.pred_instance(v)?;
            let g = (0..p.gold_vars).find(|&g| !used[g] && p.gold_instance(g) == Some(label))?;
            used[g] = true;
            Some(g)
        })
        .collect()
}

/// Pairs a random subset of prediction variables with a random subset of
/// gold variables, as many as the smaller side allows.
fn random_init(p: &Problem, rng: &mut ChaCha8Rng) -> Vec<Option<usize>> {
    let mut pred: Vec<usize> = (0..p.pred_vars).collect();
    let mut gold: Vec<usize> = (0..p.gold_vars).collect();
    pred.shuffle(rng);
    gold.shuffle(rng);
    let mut map = vec![None; p.pred_vars];
    for (&v, &g) in pred.iter().zip(&gold) {
        map[v] = Some(g);
    }
    map
}

#[derive(Clone, Copy)]
enum Move {
    Assign(usize, usize),
    Swap(usize, usize),
}

fn climb(st: &mut State, p: &Problem) {
    loop {
        let base = st.matched;
        let mut best_gain = 0;
        let mut best_move = None;

        for v in 0..p.pred_vars {
            let old = st.map[v];
            for g in 0..p.gold_vars {
                if st.used[g].is_some() {
                    continue;
                }
                st.set(&[(v, Some(g))]);
                if st.matched > base + best_gain {
                    best_gain = st.matched - base;
                    best_move = Some(Move::Assign(v, g));
                }
                st.set(&[(v, old)]);
            }
        }
        for a in 0..p.pred_vars {
            for b in a + 1..p.pred_vars {
                let (ga, gb) = (st.map[a], st.map[b]);
                if ga == gb {
                    continue;
                }
                st.set(&[(a, gb), (b, ga)]);
                if st.matched > base + best_gain {
                    best_gain = st.matched - base;
                    best_move = Some(Move::Swap(a, b));
                }
                st.set(&[(a, ga), (b, gb)]);
            }
        }

        match best_move {
            None => return,
            Some(Move::Assign(v, g)) => st.set(&[(v, Some(g))]),
            Some(Move::Swap(a, b)) => {
                let (ga, gb) = (st.map[a], st.map[b]);
                st.set(&[(a, gb), (b, ga)]);
            }
        }
    }
}
