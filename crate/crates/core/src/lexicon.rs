//! Token inventories and pronunciation lexicons for LM-unit x AM-unit pairs,
//! plus the vocabulary census.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::bpe::{self, BpeModel, Target};
use crate::error::{Error, Result};
use crate::segment::{vowel_segment, CONTINUATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LmUnit {
    Word,
    Bpe,
    Vs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmUnit {
    Grapheme,
    GraphemeVs,
    Phoneme,
}

impl FromStr for LmUnit {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "word" => Ok(LmUnit::Word),
            "bpe" => Ok(LmUnit::Bpe),
            "vs" => Ok(LmUnit::Vs),
            _ => Err(alloc::format!("unknown LM unit {s:?}")),
        }
    }
}

impl FromStr for AmUnit {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "grapheme" => Ok(AmUnit::Grapheme),
            "grapheme_vs" | "grapheme-vs" => Ok(AmUnit::GraphemeVs),
            "phoneme" => Ok(AmUnit::Phoneme),
            _ => Err(alloc::format!("unknown AM unit {s:?}")),
        }
    }
}

/// Word to one or more phone sequences, exact match on the SLP1 form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PronunciationDict {
    entries: BTreeMap<String, Vec<Vec<String>>>,
}

impl PronunciationDict {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a pronunciation; repeated identical variants are kept once.
    pub fn insert(&mut self, word: &str, phones: Vec<String>) {
        let variants = self.entries.entry(word.to_string()).or_default();
        if !variants.contains(&phones) {
            variants.push(phones);
        }
    }

    pub fn get(&self, word: &str) -> Option<&[Vec<String>]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every phone used by any entry.
    pub fn inventory(&self) -> BTreeSet<&str> {
        self.entries.values().flatten().flatten().map(String::as_str).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct UnitScheme<'a> {
    pub lm_unit: LmUnit,
    pub am_unit: AmUnit,
    pub bpe_model: Option<&'a BpeModel>,
    pub phone_dict: Option<&'a PronunciationDict>,
}

impl<'a> UnitScheme<'a> {
    pub fn new(lm_unit: LmUnit, am_unit: AmUnit) -> Self {
        UnitScheme {
            lm_unit,
            am_unit,
            bpe_model: None,
            phone_dict: None,
        }
    }

    pub fn with_bpe(mut self, model: &'a BpeModel) -> Self {
        self.bpe_model = Some(model);
        self
    }

    pub fn with_dict(mut self, dict: &'a PronunciationDict) -> Self {
        self.phone_dict = Some(dict);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lm_unit == LmUnit::Bpe && self.bpe_model.is_none() {
            return Err(Error::MissingModel("a BPE model"));
        }
        if self.am_unit == AmUnit::Phoneme && self.phone_dict.is_none() {
            return Err(Error::MissingModel("a pronunciation dictionary"));
        }
        Ok(())
    }
}

fn tokenize_word(word: &str, scheme: &UnitScheme<'_>) -> Result<Vec<String>> {
    Ok(match scheme.lm_unit {
        LmUnit::Word => vec![word.to_string()],
        LmUnit::Bpe => scheme.bpe_model.ok_or(Error::MissingModel("a BPE model"))?.apply(word),
        LmUnit::Vs => {
            let mut segments = vowel_segment(word)?.segments;
            let last = segments.len() - 1;
            for s in &mut segments[..last] {
                s.push(CONTINUATION);
            }
            segments
        }
    })
}

/// LM token counts over a corpus, one utterance per line.
pub fn build_tokens(corpus: &str, scheme: &UnitScheme<'_>) -> Result<BTreeMap<String, u64>> {
    if scheme.lm_unit == LmUnit::Bpe {
        scheme.bpe_model.ok_or(Error::MissingModel("a BPE model"))?;
    }
    let mut counts = BTreeMap::new();
    for (word_index, word) in corpus.split_whitespace().enumerate() {
        let tokens = tokenize_word(word, scheme).map_err(|e| Error::InWord {
            word_index,
            source: alloc::boxed::Box::new(e),
        })?;
        for t in tokens {
            *counts.entry(t).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

fn strip_marker<'t>(token: &'t str, scheme: &UnitScheme<'_>) -> &'t str {
    let marker = match scheme.bpe_model {
        Some(m) if scheme.lm_unit == LmUnit::Bpe => m.marker(),
        _ => bpe::MARKER,
    };
    match scheme.lm_unit {
        LmUnit::Word => token,
        _ => token.strip_suffix(marker).unwrap_or(token),
    }
}

/// Pronunciation variants of an LM token. Subword markers are stripped first.
pub fn pronounce(token: &str, scheme: &UnitScheme<'_>) -> Result<Vec<Vec<String>>> {
    let bare = strip_marker(token, scheme);
    match scheme.am_unit {
        AmUnit::Grapheme => Ok(vec![bare.chars().map(|c| c.to_string()).collect()]),
        AmUnit::GraphemeVs => Ok(vec![vowel_segment(bare)?.segments]),
        AmUnit::Phoneme => {
            let dict = scheme
                .phone_dict
                .ok_or(Error::MissingModel("a pronunciation dictionary"))?;
            dict.get(bare).map(<[_]>::to_vec).ok_or_else(|| Error::NotInDictionary {
                token: bare.to_string(),
            })
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexiconArtifact {
    pub tokens: BTreeMap<String, u64>,
    pub units: BTreeSet<String>,
    /// Token to pronunciation variants; tokens without a pronunciation are absent.
    pub entries: BTreeMap<String, Vec<Vec<String>>>,
    /// Tokens the phone dictionary could not pronounce.
    pub missing: Vec<String>,
}

impl LexiconArtifact {
    /// `words.txt` order: count descending, then token.
    pub fn words_by_count(&self) -> Vec<(&str, u64)> {
        let mut words: Vec<(&str, u64)> = self.tokens.iter().map(|(t, &c)| (t.as_str(), c)).collect();
        words.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        words
    }
}

/// Tokens plus their pronunciations. Dictionary misses are collected in
/// `missing` rather than failing the build.
pub fn build_lexicon(corpus: &str, scheme: &UnitScheme<'_>) -> Result<LexiconArtifact> {
    scheme.validate()?;
    let tokens = build_tokens(corpus, scheme)?;
    let mut artifact = LexiconArtifact::default();
    for token in tokens.keys() {
        match pronounce(token, scheme) {
            Ok(variants) => {
                for v in &variants {
                    artifact.units.extend(v.iter().cloned());
                }
                artifact.entries.insert(token.clone(), variants);
            }
            Err(Error::NotInDictionary { .. }) => artifact.missing.push(token.clone()),
            Err(e) => return Err(e),
        }
    }
    artifact.tokens = tokens;
    Ok(artifact)
}

#[derive(Debug, Clone, Copy)]
pub enum CensusUnit<'a> {
    Word,
    Vs,
    /// Train a BPE model on the corpus to this vocabulary size, then count.
    Bpe(usize),
    Grapheme,
    Phoneme(&'a PronunciationDict),
}

/// Word-frequency table of a corpus.
pub fn word_counts(corpus: &str) -> BTreeMap<&str, u64> {
    let mut counts = BTreeMap::new();
    for w in corpus.split_whitespace() {
        *counts.entry(w).or_insert(0) += 1;
    }
    counts
}

/// Number of distinct units of the requested kind in the corpus. Subword
/// units are counted as LM tokens, continuation marker included.
pub fn vocab_census(corpus: &str, unit: CensusUnit<'_>) -> Result<usize> {
    Ok(match unit {
        CensusUnit::Word => word_counts(corpus).len(),
        CensusUnit::Grapheme => corpus
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<BTreeSet<_>>()
            .len(),
        CensusUnit::Vs => build_tokens(corpus, &UnitScheme::new(LmUnit::Vs, AmUnit::Grapheme))?.len(),
        CensusUnit::Bpe(target) => {
            let table: Vec<(&str, u64)> = word_counts(corpus).into_iter().collect();
            let model = bpe::train(&table, Target::VocabSize(target))?;
            build_tokens(corpus, &UnitScheme::new(LmUnit::Bpe, AmUnit::Grapheme).with_bpe(&model))?.len()
        }
        CensusUnit::Phoneme(dict) => {
            let mut phones = BTreeSet::new();
            for word in word_counts(corpus).keys() {
                let variants = dict.get(word).ok_or_else(|| Error::NotInDictionary {
                    token: word.to_string(),
                })?;
                phones.extend(variants.iter().flatten().map(String::as_str));
            }
            phones.len()
        }
    })
}
