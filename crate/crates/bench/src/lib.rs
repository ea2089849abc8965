//! Inputs shared by the benchmarks in `benches/`.

use sbneval::align::ParallelSentence;
use sbneval::sbn::{split_corpus, Document};

pub const FIXTURES: &str = include_str!("../../core/tests/data/fixtures.sbn");

pub fn fixture_documents() -> Vec<Document> {
    split_corpus(FIXTURES)
}

/// `n` template sentence pairs over a small rotating vocabulary.
pub fn parallel_corpus(n: usize) -> Vec<ParallelSentence> {
    let people = [("yunus", "尤努斯"), ("mary", "玛丽"), ("tom", "汤姆"), ("ann", "安")];
    let places = [("boston", "波士顿"), ("paris", "巴黎"), ("ohio", "俄亥俄州")];
    let verbs = [("visited", "访问 了"), ("left", "离开"), ("likes", "喜欢")];
    (0..n)
        .map(|i| {
            let (pe, pz) = people[i % people.len()];
            let (le, lz) = places[(i / 2) % places.len()];
            let (ve, vz) = verbs[(i / 3) % verbs.len()];
            ParallelSentence::from_text(&i.to_string(), &format!("{pe} {ve} {le} ."), &format!("{pz} {vz} {lz} 。"))
        })
        .collect()
}
