//! Word and character alignment, WER/CER, merge/split-tolerant WER and OOV
//! recovery.
//!
//! Plain alignment is Levenshtein with unit costs. Among alignments of equal
//! cost the one with the fewest insertions plus deletions wins, which makes
//! the S/D/I breakdown a property of the pair rather than of the backtrace.
//!
//! The merge/split-tolerant alignment adds two zero-cost operations: several
//! consecutive reference words whose concatenation equals one hypothesis
//! word (merge), and one reference word equal to the concatenation of
//! several hypothesis words (split). Both need exact string equality.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_SPAN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignOp {
    Match {
        ref_idx: usize,
        hyp_idx: usize,
    },
    Sub {
        ref_idx: usize,
        hyp_idx: usize,
    },
    Del {
        ref_idx: usize,
    },
    Ins {
        hyp_idx: usize,
    },
    /// `ref[ref_start..ref_start + ref_len]` concatenated equals `hyp[hyp_idx]`.
    Merge {
        ref_start: usize,
        ref_len: usize,
        hyp_idx: usize,
    },
    /// `ref[ref_idx]` equals `hyp[hyp_start..hyp_start + hyp_len]` concatenated.
    Split {
        ref_idx: usize,
        hyp_start: usize,
        hyp_len: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ErrorCounts {
    pub sub: usize,
    pub del: usize,
    pub ins: usize,
}

impl ErrorCounts {
    pub fn total(&self) -> usize {
        self.sub + self.del + self.ins
    }

    fn add(&mut self, other: ErrorCounts) {
        self.sub += other.sub;
        self.del += other.del;
        self.ins += other.ins;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alignment {
    pub ops: Vec<AlignOp>,
}

impl Alignment {
    pub fn counts(&self) -> ErrorCounts {
        let mut c = ErrorCounts::default();
        for op in &self.ops {
            match op {
                AlignOp::Sub { .. } => c.sub += 1,
                AlignOp::Del { .. } => c.del += 1,
                AlignOp::Ins { .. } => c.ins += 1,
                _ => {}
            }
        }
        c
    }

    pub fn cost(&self) -> usize {
        self.counts().total()
    }

    /// Recognition status of each reference position.
    fn ref_status(&self, n_ref: usize) -> Vec<RefStatus> {
        let mut status = vec![RefStatus::Error; n_ref];
        for op in &self.ops {
            match *op {
                AlignOp::Match { ref_idx, .. } => status[ref_idx] = RefStatus::Match,
                AlignOp::Merge { ref_start, ref_len, .. } => {
                    for s in &mut status[ref_start..ref_start + ref_len] {
                        *s = RefStatus::Joined;
                    }
                }
                AlignOp::Split { ref_idx, .. } => status[ref_idx] = RefStatus::Joined,
                _ => {}
            }
        }
        status
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RefStatus {
    Match,
    Joined,
    Error,
}

// (errors, insertions + deletions), compared lexicographically
type Cost = (usize, usize);

fn plus(c: Cost, errors: usize, indels: usize) -> Cost {
    (c.0 + errors, c.1 + indels)
}

fn concat_eq<S: AsRef<str>>(parts: &[S], whole: &str) -> bool {
    let mut rest = whole;
    for p in parts {
        match rest.strip_prefix(p.as_ref()) {
            Some(r) => rest = r,
            None => return false,
        }
    }
    rest.is_empty()
}

struct Table {
    cols: usize,
    cells: Vec<Cost>,
}

impl Table {
    fn new(rows: usize, cols: usize) -> Table {
        Table {
            cols,
            cells: vec![(usize::MAX, usize::MAX); rows * cols],
        }
    }

    fn get(&self, i: usize, j: usize) -> Cost {
        self.cells[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, c: Cost) {
        self.cells[i * self.cols + j] = c;
    }
}

/// Shared DP. With `span >= 2`, `eq` decides which zero-cost merges and
/// splits are available.
fn align_dp<T, F>(reference: &[T], hyp: &[T], eq: F, span: usize) -> Alignment
where
    F: Fn(&[T], &[T]) -> bool,
    T: PartialEq,
{
    let (n, m) = (reference.len(), hyp.len());
    let mut t = Table::new(n + 1, m + 1);
    t.set(0, 0, (0, 0));
    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = (usize::MAX, usize::MAX);
            if i > 0 && j > 0 {
                let same = reference[i - 1] == hyp[j - 1];
                best = best.min(plus(t.get(i - 1, j - 1), usize::from(!same), 0));
            }
            if i > 0 {
                best = best.min(plus(t.get(i - 1, j), 1, 1));
            }
            if j > 0 {
                best = best.min(plus(t.get(i, j - 1), 1, 1));
            }
            if span >= 2 {
                for k in 2..=span {
                    if j > 0 && i >= k && eq(&reference[i - k..i], &hyp[j - 1..j]) {
                        best = best.min(t.get(i - k, j - 1));
                    }
                    if i > 0 && j >= k && eq(&hyp[j - k..j], &reference[i - 1..i]) {
                        best = best.min(t.get(i - 1, j - k));
                    }
                }
            }
            t.set(i, j, best);
        }
    }

    // backtrace: match, merge, split, sub, del, ins
    let mut ops = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = t.get(i, j);
        if i > 0 && j > 0 && reference[i - 1] == hyp[j - 1] && t.get(i - 1, j - 1) == here {
            ops.push(AlignOp::Match {
                ref_idx: i - 1,
                hyp_idx: j - 1,
            });
            i -= 1;
            j -= 1;
            continue;
        }
        if span >= 2 {
            let merge = (2..=span)
                .find(|&k| j > 0 && i >= k && eq(&reference[i - k..i], &hyp[j - 1..j]) && t.get(i - k, j - 1) == here);
            if let Some(k) = merge {
                ops.push(AlignOp::Merge {
                    ref_start: i - k,
                    ref_len: k,
                    hyp_idx: j - 1,
                });
                i -= k;
                j -= 1;
                continue;
            }
            let split = (2..=span)
                .find(|&k| i > 0 && j >= k && eq(&hyp[j - k..j], &reference[i - 1..i]) && t.get(i - 1, j - k) == here);
            if let Some(k) = split {
                ops.push(AlignOp::Split {
                    ref_idx: i - 1,
                    hyp_start: j - k,
                    hyp_len: k,
                });
                i -= 1;
                j -= k;
                continue;
            }
        }
        if i > 0 && j > 0 && plus(t.get(i - 1, j - 1), 1, 0) == here {
            ops.push(AlignOp::Sub {
                ref_idx: i - 1,
                hyp_idx: j - 1,
            });
            i -= 1;
            j -= 1;
        } else if i > 0 && plus(t.get(i - 1, j), 1, 1) == here {
            ops.push(AlignOp::Del { ref_idx: i - 1 });
            i -= 1;
        } else {
            ops.push(AlignOp::Ins { hyp_idx: j - 1 });
            j -= 1;
        }
    }
    ops.reverse();
    Alignment { ops }
}

fn no_join<T>(_: &[T], _: &[T]) -> bool {
    false
}

fn join_eq<S: AsRef<str>>(parts: &[S], whole: &[S]) -> bool {
    concat_eq(parts, whole[0].as_ref())
}

/// Minimal-cost Levenshtein alignment.
pub fn align<T: PartialEq>(reference: &[T], hyp: &[T]) -> Result<Alignment> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    Ok(align_dp(reference, hyp, no_join, 0))
}

/// Alignment with zero-cost exact merges and splits of up to `max_span` words.
pub fn msd_align<S: AsRef<str> + PartialEq>(reference: &[S], hyp: &[S], max_span: usize) -> Result<Alignment> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    if max_span < 2 {
        return Err(Error::InvalidSpan(max_span));
    }
    Ok(align_dp(reference, hyp, join_eq, max_span))
}

/// Collapse whitespace runs to one space and trim the ends.
pub fn normalize_chars(text: &str) -> Vec<char> {
    let mut out = Vec::new();
    for (k, word) in text.split_whitespace().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        out.extend(word.chars());
    }
    out
}

/// Character edits and reference length after whitespace normalization.
pub fn char_edits(reference: &str, hyp: &str) -> (usize, usize) {
    let r = normalize_chars(reference);
    let h = normalize_chars(hyp);
    (align_dp(&r, &h, no_join, 0).cost(), r.len())
}

/// Character error rate over code points; spaces are alignable codes.
pub fn cer(reference: &str, hyp: &str) -> Result<f64> {
    let (edits, n) = char_edits(reference, hyp);
    if n == 0 {
        return Err(Error::EmptyReference);
    }
    Ok(edits as f64 / n as f64)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OovReport {
    pub ref_tokens: usize,
    pub ref_types: usize,
    pub oov_tokens: usize,
    pub oov_types: usize,
    pub recovered: usize,
    pub msd_recovered: usize,
}

impl OovReport {
    pub fn oov_token_rate(&self) -> Option<f64> {
        ratio(self.oov_tokens, self.ref_tokens)
    }

    pub fn oov_type_rate(&self) -> Option<f64> {
        ratio(self.oov_types, self.ref_types)
    }

    /// Percent of OOV reference tokens aligned as a match; `None` without OOVs.
    pub fn recovered_pct(&self) -> Option<f64> {
        ratio(self.recovered, self.oov_tokens).map(|r| r * 100.0)
    }

    /// Percent aligned as a match, merge or split.
    pub fn msd_recovered_pct(&self) -> Option<f64> {
        ratio(self.msd_recovered, self.oov_tokens).map(|r| r * 100.0)
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

#[derive(Default)]
struct OovTally {
    report: OovReport,
    types: BTreeSet<String>,
    oov_types: BTreeSet<String>,
}

impl OovTally {
    fn add<S: AsRef<str>>(&mut self, vocab: &BTreeSet<String>, reference: &[S], plain: &Alignment, msd: &Alignment) {
        let plain = plain.ref_status(reference.len());
        let msd = msd.ref_status(reference.len());
        for (k, token) in reference.iter().enumerate() {
            let token = token.as_ref();
            self.report.ref_tokens += 1;
            self.types.insert(token.into());
            if vocab.contains(token) {
                continue;
            }
            self.report.oov_tokens += 1;
            self.oov_types.insert(token.into());
            if plain[k] == RefStatus::Match {
                self.report.recovered += 1;
            }
            if msd[k] != RefStatus::Error {
                self.report.msd_recovered += 1;
            }
        }
    }

    fn finish(mut self) -> OovReport {
        self.report.ref_types = self.types.len();
        self.report.oov_types = self.oov_types.len();
        self.report
    }
}

/// OOV rates and recovery for one utterance. Both alignments must be over
/// the same `reference`.
pub fn oov_report<S: AsRef<str>>(
    train_vocab: &BTreeSet<String>,
    reference: &[S],
    plain: &Alignment,
    msd: &Alignment,
) -> OovReport {
    let mut tally = OovTally::default();
    tally.add(train_vocab, reference, plain, msd);
    tally.finish()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    pub id: String,
    pub reference: Vec<String>,
    pub hyp: Vec<String>,
}

/// Pair reference and hypothesis utterances by id, in reference order.
pub fn pair_utterances(refs: Vec<(String, Vec<String>)>, hyps: Vec<(String, Vec<String>)>) -> Result<Vec<Utterance>> {
    let mut by_id: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (id, tokens) in hyps {
        if by_id.contains_key(&id) {
            return Err(Error::DuplicateUtterance(id));
        }
        by_id.insert(id, tokens);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(refs.len());
    for (id, reference) in refs {
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateUtterance(id));
        }
        let hyp = by_id.remove(&id).ok_or_else(|| Error::MissingHypothesis(id.clone()))?;
        out.push(Utterance { id, reference, hyp });
    }
    if let Some(extra) = by_id.into_keys().next() {
        return Err(Error::UnexpectedHypothesis(extra));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreOptions {
    pub max_span: usize,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            max_span: DEFAULT_MAX_SPAN,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub n_ref: usize,
    pub errors: ErrorCounts,
    pub msd_errors: ErrorCounts,
    pub n_ref_chars: usize,
    pub char_edits: usize,
    pub wer: f64,
    pub cer: f64,
    pub msd_wer: f64,
    pub oov: Option<OovReport>,
}

/// Corpus-level scores: counts are summed over utterances, then divided.
pub fn score(
    utterances: &[Utterance],
    train_vocab: Option<&BTreeSet<String>>,
    options: ScoreOptions,
) -> Result<ScoreReport> {
    if options.max_span < 2 {
        return Err(Error::InvalidSpan(options.max_span));
    }
    let mut errors = ErrorCounts::default();
    let mut msd_errors = ErrorCounts::default();
    let (mut n_ref, mut n_chars, mut edits) = (0, 0, 0);
    let mut tally = OovTally::default();
    for u in utterances {
        let plain = align_dp(&u.reference, &u.hyp, no_join, 0);
        let msd = align_dp(&u.reference, &u.hyp, join_eq, options.max_span);
        errors.add(plain.counts());
        msd_errors.add(msd.counts());
        n_ref += u.reference.len();
        let (e, n) = char_edits(&u.reference.join(" "), &u.hyp.join(" "));
        edits += e;
        n_chars += n;
        if let Some(vocab) = train_vocab {
            tally.add(vocab, &u.reference, &plain, &msd);
        }
    }
    if n_ref == 0 {
        return Err(Error::EmptyReference);
    }
    Ok(ScoreReport {
        n_ref,
        errors,
        msd_errors,
        n_ref_chars: n_chars,
        char_edits: edits,
        wer: errors.total() as f64 / n_ref as f64,
        cer: edits as f64 / n_chars as f64,
        msd_wer: msd_errors.total() as f64 / n_ref as f64,
        oov: train_vocab.map(|_| tally.finish()),
    })
}
