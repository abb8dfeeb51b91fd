//! Byte-pair-encoding subwords over SLP1 code points.
//!
//! Training works on a word-frequency table. Each step merges the adjacent
//! unit pair with the highest frequency-weighted count; equal counts go to
//! the lexicographically smallest `(left, right)`. Application replays the
//! merges in training order.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use crate::error::{Error, Result};

/// Continuation marker carried by non-final subwords.
pub const MARKER: &str = "+";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Stop after this many merges.
    Merges(usize),
    /// Stop once the vocabulary (single codes plus merged units) reaches this size.
    VocabSize(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpeModel {
    merges: Vec<(String, String)>,
    vocab: BTreeMap<String, u64>,
    marker: String,
    ranks: BTreeMap<(String, String), usize>,
}

impl BpeModel {
    /// Build a model from an explicit merge list. Vocabulary counts are zero.
    pub fn from_merges(merges: Vec<(String, String)>, marker: &str) -> BpeModel {
        let mut vocab = BTreeMap::new();
        for (l, r) in &merges {
            for unit in [l.clone(), r.clone(), alloc::format!("{l}{r}")] {
                vocab.entry(unit).or_insert(0);
            }
        }
        BpeModel::with_vocab(merges, vocab, marker)
    }

    fn with_vocab(merges: Vec<(String, String)>, vocab: BTreeMap<String, u64>, marker: &str) -> BpeModel {
        let mut ranks = BTreeMap::new();
        for (rank, pair) in merges.iter().enumerate() {
            // a repeated pair can never fire twice; keep the first
            ranks.entry(pair.clone()).or_insert(rank);
        }
        BpeModel {
            merges,
            vocab,
            marker: marker.to_string(),
            ranks,
        }
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    /// Units with their frequency in the training corpus after all merges.
    pub fn vocab(&self) -> &BTreeMap<String, u64> {
        &self.vocab
    }

    pub fn marker(&self) -> &str {
        &self.marker
    }

    /// Segment a word into units, without continuation markers.
    pub fn segment(&self, word: &str) -> Vec<String> {
        let mut units: Vec<String> = word.chars().map(|c| c.to_string()).collect();
        let mut floor = None;
        loop {
            // lowest-ranked applicable merge after the last one replayed
            let best = units
                .windows(2)
                .filter_map(|w| self.ranks.get(&(w[0].clone(), w[1].clone())).copied())
                .filter(|&r| floor.is_none_or(|f| r > f))
                .min();
            let Some(rank) = best else { break };
            let (l, r) = &self.merges[rank];
            units = merge_units(&units, l, r);
            floor = Some(rank);
        }
        units
    }

    /// Segment a word and mark every non-final subword with the marker.
    pub fn apply(&self, word: &str) -> Vec<String> {
        let mut units = self.segment(word);
        let last = units.len().saturating_sub(1);
        for unit in &mut units[..last] {
            unit.push_str(&self.marker);
        }
        units
    }

    /// Inverse of [`BpeModel::apply`]: strip markers and concatenate.
    pub fn decode<S: AsRef<str>>(&self, subwords: &[S]) -> String {
        subwords
            .iter()
            .map(|s| {
                let s = s.as_ref();
                s.strip_suffix(self.marker.as_str()).unwrap_or(s)
            })
            .collect()
    }
}

fn merge_units(units: &[String], left: &str, right: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(units.len());
    let mut i = 0;
    while i < units.len() {
        if i + 1 < units.len() && units[i] == left && units[i + 1] == right {
            let mut joined = units[i].clone();
            joined.push_str(&units[i + 1]);
            out.push(joined);
            i += 2;
        } else {
            out.push(units[i].clone());
            i += 1;
        }
    }
    out
}

struct Candidate {
    count: u64,
    left: String,
    right: String,
    pair: (u32, u32),
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // max-heap: highest count, then smallest (left, right)
    fn cmp(&self, other: &Self) -> Ordering {
        self.count
            .cmp(&other.count)
            .then_with(|| Reverse((&self.left, &self.right)).cmp(&Reverse((&other.left, &other.right))))
    }
}

struct Trainer {
    units: Vec<String>,
    ids: BTreeMap<String, u32>,
    words: Vec<(Vec<u32>, u64)>,
    pair_counts: BTreeMap<(u32, u32), u64>,
    pair_words: BTreeMap<(u32, u32), BTreeSet<usize>>,
    heap: BinaryHeap<Candidate>,
}

impl Trainer {
    fn intern(&mut self, unit: &str) -> u32 {
        if let Some(&id) = self.ids.get(unit) {
            return id;
        }
        let id = self.units.len() as u32;
        self.units.push(unit.to_string());
        self.ids.insert(unit.to_string(), id);
        id
    }

    fn push(&mut self, pair: (u32, u32)) {
        let count = self.pair_counts.get(&pair).copied().unwrap_or(0);
        if count > 0 {
            self.heap.push(Candidate {
                count,
                left: self.units[pair.0 as usize].clone(),
                right: self.units[pair.1 as usize].clone(),
                pair,
            });
        }
    }

    fn account(&mut self, w: usize, sign: bool) {
        let (symbols, freq) = &self.words[w];
        let freq = *freq;
        let pairs: Vec<(u32, u32)> = symbols.windows(2).map(|p| (p[0], p[1])).collect();
        for pair in pairs {
            let count = self.pair_counts.entry(pair).or_insert(0);
            if sign {
                *count += freq;
                self.pair_words.entry(pair).or_default().insert(w);
            } else {
                *count -= freq;
            }
        }
    }

    /// Highest live pair, discarding stale heap entries.
    fn best(&mut self) -> Option<Candidate> {
        while let Some(top) = self.heap.pop() {
            if self.pair_counts.get(&top.pair).copied() == Some(top.count) {
                return Some(top);
            }
        }
        None
    }

    fn merge(&mut self, pair: (u32, u32), merged: u32) {
        let touched = self.pair_words.remove(&pair).unwrap_or_default();
        let mut changed = BTreeSet::new();
        for w in touched {
            if !self.words[w].0.windows(2).any(|p| (p[0], p[1]) == pair) {
                continue;
            }
            let before: Vec<(u32, u32)> = self.words[w].0.windows(2).map(|p| (p[0], p[1])).collect();
            self.account(w, false);
            let symbols = &self.words[w].0;
            let mut next = Vec::with_capacity(symbols.len());
            let mut i = 0;
            while i < symbols.len() {
                if i + 1 < symbols.len() && (symbols[i], symbols[i + 1]) == pair {
                    next.push(merged);
                    i += 2;
                } else {
                    next.push(symbols[i]);
                    i += 1;
                }
            }
            self.words[w].0 = next;
            self.account(w, true);
            changed.extend(before);
            changed.extend(self.words[w].0.windows(2).map(|p| (p[0], p[1])));
        }
        self.pair_counts.remove(&pair);
        for p in changed {
            if p != pair {
                self.push(p);
            }
        }
    }
}

/// Train a model on a word-frequency table.
///
/// Stops when the target is reached or the best pair occurs fewer than two
/// times.
pub fn train<S: AsRef<str>>(corpus: &[(S, u64)], target: Target) -> Result<BpeModel> {
    train_with_marker(corpus, target, MARKER)
}

pub fn train_with_marker<S: AsRef<str>>(corpus: &[(S, u64)], target: Target, marker: &str) -> Result<BpeModel> {
    // merge duplicate words so training is independent of input order
    let mut table: BTreeMap<&str, u64> = BTreeMap::new();
    for (word, count) in corpus {
        if !word.as_ref().is_empty() && *count > 0 {
            *table.entry(word.as_ref()).or_insert(0) += count;
        }
    }
    if table.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let mut trainer = Trainer {
        units: Vec::new(),
        ids: BTreeMap::new(),
        words: Vec::new(),
        pair_counts: BTreeMap::new(),
        pair_words: BTreeMap::new(),
        heap: BinaryHeap::new(),
    };
    let mut vocab: BTreeSet<String> = BTreeSet::new();
    for (word, count) in table {
        let mut buf = [0u8; 4];
        let symbols = word.chars().map(|c| trainer.intern(c.encode_utf8(&mut buf))).collect();
        vocab.extend(word.chars().map(|c| c.to_string()));
        trainer.words.push((symbols, count));
    }
    for w in 0..trainer.words.len() {
        trainer.account(w, true);
    }
    let pairs: Vec<(u32, u32)> = trainer.pair_counts.keys().copied().collect();
    for pair in pairs {
        trainer.push(pair);
    }

    let mut merges = Vec::new();
    loop {
        let done = match target {
            Target::Merges(n) => merges.len() >= n,
            Target::VocabSize(n) => vocab.len() >= n,
        };
        if done {
            break;
        }
        let Some(best) = trainer.best() else { break };
        if best.count < 2 {
            break;
        }
        let joined = alloc::format!("{}{}", best.left, best.right);
        let merged = trainer.intern(&joined);
        trainer.merge(best.pair, merged);
        vocab.insert(joined);
        merges.push((best.left, best.right));
    }

    let mut counts: BTreeMap<String, u64> = vocab.into_iter().map(|u| (u, 0)).collect();
    for (symbols, freq) in &trainer.words {
        for &s in symbols {
            *counts.get_mut(&trainer.units[s as usize]).expect("unit in vocab") += freq;
        }
    }
    Ok(BpeModel::with_vocab(merges, counts, marker))
}
