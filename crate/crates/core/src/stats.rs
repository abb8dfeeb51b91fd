//! Vocabulary statistics measured on SLP1 codes: word lengths, consonant
//! runs and rare-word rates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::script::classify;

/// Upper bounds of the short and medium length bins.
pub const SHORT_MAX: usize = 6;
pub const MEDIUM_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LengthStats {
    pub vocab_size: usize,
    /// Length in codes to number of vocabulary words of that length.
    pub counts: BTreeMap<usize, usize>,
    /// Percentages for N <= 6, 6 < N <= 12, N > 12.
    pub bins: [f64; 3],
    pub mean: f64,
}

impl LengthStats {
    /// Length to fraction of the vocabulary.
    pub fn histogram(&self) -> BTreeMap<usize, f64> {
        self.counts
            .iter()
            .map(|(&len, &c)| (len, c as f64 / self.vocab_size as f64))
            .collect()
    }
}

fn distinct<'a, I, S>(vocab: I) -> BTreeSet<&'a str>
where
    I: IntoIterator<Item = &'a S>,
    S: AsRef<str> + ?Sized + 'a,
{
    vocab.into_iter().map(AsRef::as_ref).filter(|w| !w.is_empty()).collect()
}

fn percent(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 * 100.0 / whole as f64
    }
}

/// Length statistics over the distinct words of `vocab`.
pub fn word_length_stats<'a, I, S>(vocab: I) -> LengthStats
where
    I: IntoIterator<Item = &'a S>,
    S: AsRef<str> + ?Sized + 'a,
{
    let words = distinct(vocab);
    let mut stats = LengthStats {
        vocab_size: words.len(),
        ..LengthStats::default()
    };
    let mut bins = [0usize; 3];
    let mut total = 0usize;
    for w in &words {
        let len = w.chars().count();
        *stats.counts.entry(len).or_insert(0) += 1;
        total += len;
        let bin = match len {
            0..=SHORT_MAX => 0,
            l if l <= MEDIUM_MAX => 1,
            _ => 2,
        };
        bins[bin] += 1;
    }
    stats.bins = bins.map(|b| percent(b, words.len()));
    if !words.is_empty() {
        stats.mean = total as f64 / words.len() as f64;
    }
    stats
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RunMode {
    /// Every maximal consonant run in every word.
    #[default]
    Runs,
    /// The longest run of each word that has a consonant.
    PerWordMax,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunStats {
    pub mode: RunMode,
    /// Run length to number of runs (or words, in per-word mode).
    pub counts: BTreeMap<usize, usize>,
    pub max_run: usize,
}

impl RunStats {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Run length to percentage.
    pub fn distribution(&self) -> BTreeMap<usize, f64> {
        let total = self.total();
        self.counts.iter().map(|(&len, &c)| (len, percent(c, total))).collect()
    }
}

/// Lengths of the maximal runs of consonant-class codes (anusvara, visarga
/// and candrabindu included) in one word.
pub fn consonant_runs(word: &str) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current = 0;
    for c in word.chars() {
        if classify(c).is_consonant() {
            current += 1;
        } else if current > 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    runs
}

pub fn consonant_run_stats<'a, I, S>(vocab: I, mode: RunMode) -> RunStats
where
    I: IntoIterator<Item = &'a S>,
    S: AsRef<str> + ?Sized + 'a,
{
    let mut stats = RunStats {
        mode,
        ..RunStats::default()
    };
    for w in distinct(vocab) {
        let runs = consonant_runs(w);
        let selected: Vec<usize> = match mode {
            RunMode::Runs => runs,
            RunMode::PerWordMax => runs.into_iter().max().into_iter().collect(),
        };
        for len in selected {
            *stats.counts.entry(len).or_insert(0) += 1;
            stats.max_run = stats.max_run.max(len);
        }
    }
    stats
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RareWordStats {
    pub threshold: u64,
    pub rare_types: usize,
    pub types: usize,
    /// Percent of types occurring fewer than `threshold` times.
    pub rate: f64,
}

pub fn rare_word_rate<'a, I, S>(counts: I, threshold: u64) -> Result<RareWordStats>
where
    I: IntoIterator<Item = (&'a S, u64)>,
    S: AsRef<str> + ?Sized + 'a,
{
    if threshold < 1 {
        return Err(Error::InvalidThreshold);
    }
    let mut merged: BTreeMap<&str, u64> = BTreeMap::new();
    for (w, c) in counts {
        *merged.entry(w.as_ref()).or_insert(0) += c;
    }
    merged.retain(|_, c| *c > 0);
    let rare = merged.values().filter(|&&c| c < threshold).count();
    Ok(RareWordStats {
        threshold,
        rare_types: rare,
        types: merged.len(),
        rate: percent(rare, merged.len()),
    })
}

/// Round half away from zero to two decimals.
pub fn round2(x: f64) -> f64 {
    let scaled = x * 100.0;
    let r = if scaled >= 0.0 {
        floor(scaled + 0.5)
    } else {
        -floor(-scaled + 0.5)
    };
    r / 100.0
}

// no_std stand-in for f64::floor
fn floor(x: f64) -> f64 {
    if x.abs() >= 4_503_599_627_370_496.0 {
        return x;
    }
    let t = x as i64 as f64;
    if t > x {
        t - 1.0
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_examples() {
        let s = word_length_stats(["vAgarTapratipattaye"].iter());
        assert_eq!(s.counts.get(&19), Some(&1));
        assert_eq!(s.bins, [0.0, 0.0, 100.0]);

        let s = word_length_stats(["a"].iter());
        assert_eq!(s.mean, 1.0);
        assert_eq!(s.bins[0], 100.0);

        let s = word_length_stats(["rAma", "Bavati", "vAgarTapratipattaye"].iter());
        assert_eq!(s.bins.map(round2), [66.67, 0.0, 33.33]);
        assert_eq!(s.mean, 29.0 / 3.0);
        assert_eq!(s.histogram().values().sum::<f64>(), 1.0);
    }

    #[test]
    fn duplicates_and_order_ignored() {
        let a = word_length_stats(["rAma", "sItA", "rAma"].iter());
        let b = word_length_stats(["sItA", "rAma"].iter());
        assert_eq!(a, b);
    }

    #[test]
    fn empty_vocab() {
        let s = word_length_stats(core::iter::empty::<&&str>());
        assert_eq!(s.vocab_size, 0);
        assert_eq!(s.mean, 0.0);
        assert!(s.histogram().is_empty());
    }

    #[test]
    fn run_examples() {
        let s = consonant_run_stats(["udyAnaH"].iter(), RunMode::Runs);
        assert_eq!(s.counts, BTreeMap::from([(1, 2), (2, 1)]));
        let d = s.distribution();
        assert_eq!((round2(d[&1]), round2(d[&2])), (66.67, 33.33));

        let s = consonant_run_stats(["a"].iter(), RunMode::Runs);
        assert!(s.counts.is_empty());
        assert_eq!(s.max_run, 0);

        let s = consonant_run_stats(["kArtsnyam"].iter(), RunMode::Runs);
        assert_eq!(s.max_run, 5);
        assert_eq!(consonant_runs("kArtsnyam"), [1, 5, 1]);
    }

    #[test]
    fn per_word_max_mode() {
        let s = consonant_run_stats(["udyAnaH", "kArtsnyam", "a"].iter(), RunMode::PerWordMax);
        assert_eq!(s.counts, BTreeMap::from([(2, 1), (5, 1)]));
    }

    #[test]
    fn rare_examples() {
        assert_eq!(rare_word_rate([("a", 5)], 3).unwrap().rate, 0.0);
        let r = rare_word_rate([("a", 1), ("b", 2), ("c", 3)], 3).unwrap();
        assert_eq!(round2(r.rate), 66.67);
        assert_eq!(rare_word_rate([("a", 1)], 1).unwrap().rate, 0.0);
        assert_eq!(rare_word_rate([("a", 1)], 0).unwrap_err(), Error::InvalidThreshold);
    }

    #[test]
    fn rounding() {
        assert_eq!(round2(66.666), 66.67);
        assert_eq!(round2(0.125), 0.13);
        assert_eq!(round2(33.333), 33.33);
        assert_eq!(round2(100.0), 100.0);
    }
}
