//! Vowel segmentation and laghu/guru syllable weights.
//!
//! A vowel segment is a rough syllable: each segment holds exactly one
//! vowel, a non-initial segment starts with at most one consonant, and the
//! remaining consonants of a cluster close the preceding segment. A
//! word-initial cluster stays intact.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::script::{classify, Coarse, PhoneCategory};

/// Marker appended to non-final segments when word boundaries must survive.
pub const CONTINUATION: char = '+';

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VowelSegmentation {
    pub segments: Vec<String>,
    /// The word had no vowel and was returned as a single segment.
    pub vowel_less: bool,
}

impl VowelSegmentation {
    pub fn join(&self) -> String {
        self.segments.concat()
    }
}

fn coarse_word(word: &str) -> Result<Vec<(char, Coarse)>> {
    word.chars()
        .enumerate()
        .map(|(index, c)| match classify(c).coarse() {
            Coarse::Neutral => Err(Error::NonPhonemic {
                word: word.to_string(),
                index,
                code: c,
            }),
            coarse => Ok((c, coarse)),
        })
        .collect()
}

/// Split one SLP1 word at vowel boundaries.
///
/// Lookahead past the end of the word never breaks, so final codas stay
/// attached (`udyAnaH` gives `ud yA naH`).
pub fn vowel_segment(word: &str) -> Result<VowelSegmentation> {
    let codes = coarse_word(word)?;
    let first_vowel = codes.iter().position(|&(_, k)| k == Coarse::Vowel);
    let Some(first_vowel) = first_vowel else {
        return Ok(VowelSegmentation {
            segments: alloc::vec![word.to_string()],
            vowel_less: true,
        });
    };

    let kind = |i: usize| codes.get(i).map(|&(_, k)| k);
    let mut segments = Vec::new();
    let mut current = String::new();
    for (i, &(c, k)) in codes.iter().enumerate() {
        current.push(c);
        let next = kind(i + 1);
        let after = kind(i + 2);
        let boundary = match k {
            Coarse::Vowel => matches!(
                (next, after),
                (Some(Coarse::Vowel), _) | (Some(Coarse::Consonant), Some(Coarse::Vowel))
            ),
            _ => match (next, after) {
                // an initial cluster stays with the first vowel
                (Some(Coarse::Consonant), Some(Coarse::Vowel)) => i + 2 != first_vowel,
                _ => false,
            },
        };
        if boundary {
            segments.push(core::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        segments.push(current);
    }
    Ok(VowelSegmentation {
        segments,
        vowel_less: false,
    })
}

/// Apply [`vowel_segment`] to every whitespace-separated word of a line,
/// joining segments with single spaces. With `marker`, every non-final
/// segment of a word carries [`CONTINUATION`].
pub fn vowel_segment_text(line: &str, marker: bool) -> Result<String> {
    let mut out = String::new();
    for (word_index, word) in line.split_whitespace().enumerate() {
        let seg = vowel_segment(word).map_err(|e| Error::InWord {
            word_index,
            source: Box::new(e),
        })?;
        let last = seg.segments.len() - 1;
        for (k, s) in seg.segments.iter().enumerate() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(s);
            if marker && k < last {
                out.push(CONTINUATION);
            }
        }
    }
    Ok(out)
}

/// Syllable weight: laghu (light) or guru (heavy).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Laghu,
    Guru,
}

impl Weight {
    pub fn symbol(self) -> char {
        match self {
            Weight::Laghu => 'l',
            Weight::Guru => 'S',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightString(pub Vec<Weight>);

impl core::fmt::Display for WeightString {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.0
            .iter()
            .try_for_each(|w| core::fmt::Write::write_char(f, w.symbol()))
    }
}

/// One weight per vowel of the word.
///
/// Long vowels and diphthongs are heavy. A short vowel is heavy when it is
/// followed, inside the word, by two or more consonants or by anusvara,
/// visarga or candrabindu.
pub fn syllable_weights(word: &str) -> Result<WeightString> {
    let codes: Vec<PhoneCategory> = word
        .chars()
        .enumerate()
        .map(|(index, c)| {
            let cat = classify(c);
            if cat.coarse() == Coarse::Neutral {
                Err(Error::NonPhonemic {
                    word: word.to_string(),
                    index,
                    code: c,
                })
            } else {
                Ok(cat)
            }
        })
        .collect::<Result<_>>()?;

    let mut weights = Vec::new();
    for (i, &cat) in codes.iter().enumerate() {
        let weight = match cat {
            PhoneCategory::LongVowel | PhoneCategory::Diphthong => Weight::Guru,
            PhoneCategory::ShortVowel => {
                let rest = &codes[i + 1..];
                let run = rest.iter().take_while(|c| c.is_consonant()).count();
                let nasal_or_breath = matches!(
                    rest.first(),
                    Some(PhoneCategory::Anusvara | PhoneCategory::Visarga | PhoneCategory::Candrabindu)
                );
                if run >= 2 || nasal_or_breath {
                    Weight::Guru
                } else {
                    Weight::Laghu
                }
            }
            _ => continue,
        };
        weights.push(weight);
    }
    if weights.is_empty() {
        return Err(Error::NoVowel { word: word.to_string() });
    }
    Ok(WeightString(weights))
}
