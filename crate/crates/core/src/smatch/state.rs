//! Incremental matched-triple bookkeeping shared by the hill climber and the
//! exhaustive search.
//!
//! Matching is over multisets: with `k` copies of a mapped prediction triple
//! and `g` copies of the gold triple, `min(k, g)` of them count. Changing the
//! mapping of one variable only touches the triples that mention it.

use std::collections::HashMap;

use crate::penman::{Triple, TripleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Form {
    Instance,
    Relation,
    Attribute,
}

/// (form, gold var, label id, gold var or value id)
type Key = (Form, usize, u32, u32);

#[derive(Debug, Clone, Copy)]
struct PredTriple {
    form: Form,
    a: usize,
    label: u32,
    /// target var for relations, interned value otherwise
    b: u32,
}

pub(crate) struct Problem {
    pred: Vec<PredTriple>,
    gold_counts: HashMap<Key, u32>,
    by_var: Vec<Vec<usize>>,
    pub pred_vars: usize,
    pub gold_vars: usize,
    pub pred_total: usize,
    pub gold_total: usize,
    pred_instance: Vec<Option<u32>>,
    gold_instance: Vec<Option<u32>>,
}

#[derive(Default)]
struct Interner(HashMap<String, u32>);

impl Interner {
    fn id(&mut self, s: &str) -> u32 {
        let n = self.0.len() as u32;
        *self.0.entry(s.to_string()).or_insert(n)
    }
}

impl Problem {
    pub fn new(pred: &TripleSet, gold: &TripleSet) -> Self {
        let mut strings = Interner::default();
        let mut gold_counts = HashMap::new();
        let mut gold_instance = vec![None; gold.vars.len()];
        for t in gold.iter() {
            let key = match t {
                Triple::Instance { var, label } => {
                    let l = strings.id(label);
                    gold_instance[*var].get_or_insert(l);
                    (Form::Instance, *var, l, 0)
                }
                Triple::Relation { source, label, target } => {
                    (Form::Relation, *source, strings.id(label), *target as u32)
                }
                Triple::Attribute { var, label, value } => {
                    (Form::Attribute, *var, strings.id(label), strings.id(value))
                }
            };
            *gold_counts.entry(key).or_insert(0) += 1;
        }

        let mut pred_triples = Vec::with_capacity(pred.len());
        let mut by_var = vec![Vec::new(); pred.vars.len()];
        let mut pred_instance = vec![None; pred.vars.len()];
        for (i, t) in pred.iter().enumerate() {
            let pt = match t {
                Triple::Instance { var, label } => {
                    let l = strings.id(label);
                    pred_instance[*var].get_or_insert(l);
                    PredTriple { form: Form::Instance, a: *var, label: l, b: 0 }
                }
                Triple::Relation { source, label, target } => {
                    PredTriple { form: Form::Relation, a: *source, label: strings.id(label), b: *target as u32 }
                }
                Triple::Attribute { var, label, value } => {
                    PredTriple { form: Form::Attribute, a: *var, label: strings.id(label), b: strings.id(value) }
                }
            };
            by_var[pt.a].push(i);
            if pt.form == Form::Relation && pt.b as usize != pt.a {
                by_var[pt.b as usize].push(i);
            }
            pred_triples.push(pt);
        }

        Problem {
            pred: pred_triples,
            gold_counts,
            by_var,
            pred_vars: pred.vars.len(),
            gold_vars: gold.vars.len(),
            pred_total: pred.len(),
            gold_total: gold.len(),
            pred_instance,
            gold_instance,
        }
    }

    pub fn pred_instance(&self, v: usize) -> Option<u32> {
        self.pred_instance[v]
    }

    pub fn gold_instance(&self, v: usize) -> Option<u32> {
        self.gold_instance[v]
    }
}

pub(crate) struct State<'p> {
    problem: &'p Problem,
    pub map: Vec<Option<usize>>,
    pub used: Vec<Option<usize>>,
    counts: HashMap<Key, u32>,
    pub matched: usize,
    /// prediction triples whose variables are all mapped
    pub scorable: usize,
    scratch: Vec<usize>,
}

impl<'p> State<'p> {
    pub fn new(problem: &'p Problem) -> Self {
        State {
            problem,
            map: vec![None; problem.pred_vars],
            used: vec![None; problem.gold_vars],
            counts: HashMap::new(),
            matched: 0,
            scorable: 0,
            scratch: Vec::new(),
        }
    }

    pub fn with_mapping(problem: &'p Problem, map: &[Option<usize>]) -> Self {
        let mut s = State::new(problem);
        for (p, g) in map.iter().enumerate() {
            if let Some(g) = *g {
                s.map[p] = Some(g);
                s.used[g] = Some(p);
            }
        }
        for i in 0..problem.pred.len() {
            s.add(i);
        }
        s
    }

    pub fn pred_total(&self) -> usize {
        self.problem.pred_total
    }

    fn key(&self, i: usize) -> Option<Key> {
        let t = self.problem.pred[i];
        let a = self.map[t.a]?;
        match t.form {
            Form::Relation => Some((t.form, a, t.label, self.map[t.b as usize]? as u32)),
            _ => Some((t.form, a, t.label, t.b)),
        }
    }

    fn add(&mut self, i: usize) {
        if let Some(k) = self.key(i) {
            self.scorable += 1;
            let gold = self.problem.gold_counts.get(&k).copied().unwrap_or(0);
            if gold == 0 {
                return;
            }
            let c = self.counts.entry(k).or_insert(0);
            if *c < gold {
                self.matched += 1;
            }
            *c += 1;
        }
    }

    fn remove(&mut self, i: usize) {
        if let Some(k) = self.key(i) {
            self.scorable -= 1;
            let gold = self.problem.gold_counts.get(&k).copied().unwrap_or(0);
            if gold == 0 {
                return;
            }
            let c = self.counts.get_mut(&k).expect("added before");
            *c -= 1;
            if *c < gold {
                self.matched -= 1;
            }
        }
    }

    fn touching(&mut self, vars: &[usize]) -> Vec<usize> {
        let mut idx = std::mem::take(&mut self.scratch);
        idx.clear();
        for &v in vars {
            idx.extend_from_slice(&self.problem.by_var[v]);
        }
        if vars.len() > 1 {
            idx.sort_unstable();
            idx.dedup();
        }
        idx
    }

    /// Points prediction variables at new gold variables (or none) in one step.
    /// The caller keeps the mapping injective.
    pub fn set(&mut self, changes: &[(usize, Option<usize>)]) {
        let vars: Vec<usize> = changes.iter().map(|c| c.0).collect();
        let idx = self.touching(&vars);
        for &i in &idx {
            self.remove(i);
        }
        for &(p, _) in changes {
            if let Some(g) = self.map[p].take() {
                if self.used[g] == Some(p) {
                    self.used[g] = None;
                }
            }
        }
        for &(p, g) in changes {
            self.map[p] = g;
            if let Some(g) = g {
                self.used[g] = Some(p);
            }
        }
        for &i in &idx {
            self.add(i);
        }
        self.scratch = idx;
    }
}
