//! SLP1 character classes and native-script transliteration.
//!
//! Every algorithm in this crate operates on SLP1, where each code point is
//! exactly one phoneme. Native scripts (Devanagari, Gujarati, Telugu) are
//! mapped in and out through a [`ScriptTable`], loaded from a plain-text
//! data file so the extension codes can be overridden.
//!
//! Table file format, one mapping per line:
//!
//! ```text
//! # comment
//! 0915 k consonant
//! 093E A matra
//! 094D - virama
//! ```
//!
//! Categories: `vowel`, `matra`, `consonant`, `anusvara`, `visarga`,
//! `candrabindu`, `avagraha`, `virama`, `digit`, `punct`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Fine-grained class of a single SLP1 code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhoneCategory {
    ShortVowel,
    LongVowel,
    Diphthong,
    Consonant,
    Anusvara,
    Visarga,
    Candrabindu,
    Avagraha,
    Digit,
    Space,
    Punctuation,
    Other,
}

/// The V / C / neutral projection used by vowel segmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coarse {
    Vowel,
    Consonant,
    Neutral,
}

impl PhoneCategory {
    pub fn coarse(self) -> Coarse {
        use PhoneCategory::*;
        match self {
            ShortVowel | LongVowel | Diphthong => Coarse::Vowel,
            // nasal and breath signs count as consonants for segmentation
            Consonant | Anusvara | Visarga | Candrabindu => Coarse::Consonant,
            _ => Coarse::Neutral,
        }
    }

    pub fn is_vowel(self) -> bool {
        self.coarse() == Coarse::Vowel
    }

    pub fn is_consonant(self) -> bool {
        self.coarse() == Coarse::Consonant
    }

    /// True for codes that belong to the SLP1 alphabet proper.
    pub fn is_phonemic(self) -> bool {
        self.coarse() != Coarse::Neutral || self == PhoneCategory::Avagraha
    }
}

/// Core SLP1 vowels in canonical order.
pub const VOWELS: &str = "aAiIuUfFxXeEoO";
/// Core SLP1 consonants in canonical order.
pub const CONSONANTS: &str = "kKgGNcCjJYwWqQRtTdDnpPbBmyrlvLSzsh";
/// Neutral punctuation accepted inside SLP1 text.
pub const PUNCTUATION: &str = ".,;:!?-()\"";

/// Classify one SLP1 code point. Total: anything unknown is `Other`.
pub fn classify(code: char) -> PhoneCategory {
    use PhoneCategory::*;
    match code {
        'a' | 'i' | 'u' | 'f' | 'x' | 'ĕ' | 'ŏ' => ShortVowel,
        'A' | 'I' | 'U' | 'F' | 'X' | 'ê' | 'ô' => LongVowel,
        'e' | 'E' | 'o' | 'O' => Diphthong,
        'M' => Anusvara,
        'H' => Visarga,
        '~' => Candrabindu,
        '\'' => Avagraha,
        'ṟ' => Consonant,
        c if CONSONANTS.contains(c) => Consonant,
        '0'..='9' => Digit,
        ' ' | '\t' | '\n' | '\r' => Space,
        c if PUNCTUATION.contains(c) => Punctuation,
        _ => Other,
    }
}

/// Native scripts with a shipped table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScriptId {
    Devanagari,
    Gujarati,
    Telugu,
}

impl ScriptId {
    pub const ALL: [ScriptId; 3] = [ScriptId::Devanagari, ScriptId::Gujarati, ScriptId::Telugu];

    pub fn name(self) -> &'static str {
        match self {
            ScriptId::Devanagari => "devanagari",
            ScriptId::Gujarati => "gujarati",
            ScriptId::Telugu => "telugu",
        }
    }

    /// Contents of the shipped table file.
    pub fn builtin_table_source(self) -> &'static str {
        match self {
            ScriptId::Devanagari => include_str!("../tables/devanagari.tab"),
            ScriptId::Gujarati => include_str!("../tables/gujarati.tab"),
            ScriptId::Telugu => include_str!("../tables/telugu.tab"),
        }
    }
}

impl fmt::Display for ScriptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScriptId {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "devanagari" => Ok(ScriptId::Devanagari),
            "gujarati" => Ok(ScriptId::Gujarati),
            "telugu" => Ok(ScriptId::Telugu),
            other => Err(format!("unknown script {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SignKind {
    Anusvara,
    Visarga,
    Candrabindu,
    Avagraha,
}

/// Bidirectional mapping between one native script and SLP1.
#[derive(Debug, Clone)]
pub struct ScriptTable {
    script: ScriptId,
    version: Option<String>,
    vowels: BTreeMap<char, char>,
    matras: BTreeMap<char, char>,
    consonants: BTreeMap<char, char>,
    signs: BTreeMap<char, char>,
    digits: BTreeMap<char, char>,
    punct: BTreeMap<char, String>,
    virama: char,
    // inverse direction
    vowel_letter: BTreeMap<char, char>,
    vowel_sign: BTreeMap<char, char>,
    consonant_letter: BTreeMap<char, char>,
    sign_letter: BTreeMap<char, char>,
    digit_letter: BTreeMap<char, char>,
    // longest SLP1 punctuation string first
    punct_letter: Vec<(String, char)>,
}

impl ScriptTable {
    /// The table shipped with the crate.
    pub fn builtin(script: ScriptId) -> ScriptTable {
        ScriptTable::parse(script, script.builtin_table_source()).expect("shipped script table is valid")
    }

    /// Parse a table file and check its invariants.
    pub fn parse(script: ScriptId, source: &str) -> Result<ScriptTable> {
        let mut version = None;
        let mut vowels = BTreeMap::new();
        let mut matras = BTreeMap::new();
        let mut consonants = BTreeMap::new();
        let mut signs = BTreeMap::new();
        let mut sign_kinds = Vec::new();
        let mut digits = BTreeMap::new();
        let mut punct = BTreeMap::new();
        let mut virama = None;

        for (n, raw) in source.lines().enumerate() {
            let line = n + 1;
            let syntax = |message: String| Error::TableSyntax { line, message };
            let trimmed = raw.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("version:") {
                    version = Some(v.trim().to_string());
                }
                continue;
            }
            let body = match trimmed.find(" #") {
                Some(pos) => trimmed[..pos].trim_end(),
                None => trimmed,
            };
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(syntax(format!("expected 3 fields, found {}", fields.len())));
            }
            let native = u32::from_str_radix(fields[0], 16)
                .ok()
                .and_then(char::from_u32)
                .ok_or_else(|| syntax(format!("bad code point {:?}", fields[0])))?;
            let code = fields[1];
            let single = || {
                let mut it = code.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(syntax(format!("SLP1 code {code:?} must be one code point"))),
                }
            };
            let dup = |taken: bool| match taken {
                true => Err(syntax(format!("duplicate entry for U+{:04X}", native as u32))),
                false => Ok(()),
            };
            match fields[2] {
                "vowel" => dup(vowels.insert(native, single()?).is_some())?,
                "matra" => dup(matras.insert(native, single()?).is_some())?,
                "consonant" => dup(consonants.insert(native, single()?).is_some())?,
                "anusvara" | "visarga" | "candrabindu" | "avagraha" => {
                    let kind = match fields[2] {
                        "anusvara" => SignKind::Anusvara,
                        "visarga" => SignKind::Visarga,
                        "candrabindu" => SignKind::Candrabindu,
                        _ => SignKind::Avagraha,
                    };
                    sign_kinds.push((single()?, kind));
                    dup(signs.insert(native, single()?).is_some())?
                }
                "virama" => {
                    if virama.replace(native).is_some() {
                        return Err(syntax("more than one virama".into()));
                    }
                }
                "digit" => dup(digits.insert(native, single()?).is_some())?,
                "punct" => dup(punct.insert(native, code.to_string()).is_some())?,
                other => return Err(syntax(format!("unknown category {other:?}"))),
            }
        }

        let invariant = |message: String| Error::TableInvariant {
            script: script.name(),
            message,
        };
        let virama = virama.ok_or_else(|| invariant("no virama entry".into()))?;

        let invert = |map: &BTreeMap<char, char>, what: &str| -> Result<BTreeMap<char, char>> {
            let mut inv = BTreeMap::new();
            for (&native, &code) in map {
                if let Some(prev) = inv.insert(code, native) {
                    return Err(invariant(format!(
                        "{what} code {code:?} mapped from both U+{:04X} and U+{:04X}",
                        prev as u32, native as u32
                    )));
                }
            }
            Ok(inv)
        };
        let vowel_letter = invert(&vowels, "vowel")?;
        let vowel_sign = invert(&matras, "matra")?;
        let consonant_letter = invert(&consonants, "consonant")?;
        let sign_letter = invert(&signs, "sign")?;
        let digit_letter = invert(&digits, "digit")?;

        for &code in vowel_letter.keys() {
            if !classify(code).is_vowel() {
                return Err(invariant(format!("{code:?} is not an SLP1 vowel")));
            }
        }
        for &code in vowel_sign.keys() {
            if !vowel_letter.contains_key(&code) {
                return Err(invariant(format!("matra {code:?} has no independent vowel")));
            }
            if code == 'a' {
                return Err(invariant("the inherent vowel has no matra".into()));
            }
        }
        for &code in consonant_letter.keys() {
            if classify(code) != PhoneCategory::Consonant {
                return Err(invariant(format!("{code:?} is not an SLP1 consonant")));
            }
        }
        for (code, kind) in sign_kinds {
            let expected = match kind {
                SignKind::Anusvara => PhoneCategory::Anusvara,
                SignKind::Visarga => PhoneCategory::Visarga,
                SignKind::Candrabindu => PhoneCategory::Candrabindu,
                SignKind::Avagraha => PhoneCategory::Avagraha,
            };
            if classify(code) != expected {
                return Err(invariant(format!("{code:?} is not an SLP1 {expected:?}")));
            }
        }
        for &code in digit_letter.keys() {
            if !code.is_ascii_digit() {
                return Err(invariant(format!("digit code {code:?} is not ASCII")));
            }
        }
        let mut punct_letter = Vec::new();
        for (&native, code) in &punct {
            if code.is_empty() || !code.chars().all(|c| classify(c) == PhoneCategory::Punctuation) {
                return Err(invariant(format!("punctuation code {code:?} is not SLP1 punctuation")));
            }
            if punct_letter.iter().any(|(c, _): &(String, char)| c == code) {
                return Err(invariant(format!("punctuation code {code:?} is not unique")));
            }
            punct_letter.push((code.clone(), native));
        }
        punct_letter.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));

        Ok(ScriptTable {
            script,
            version,
            vowels,
            matras,
            consonants,
            signs,
            digits,
            punct,
            virama,
            vowel_letter,
            vowel_sign,
            consonant_letter,
            sign_letter,
            digit_letter,
            punct_letter,
        })
    }

    pub fn script(&self) -> ScriptId {
        self.script
    }

    /// Value of the `# version:` comment, if the file has one.
    pub fn version(&self) -> Option<&str> {
        self.version.as_deref()
    }

    /// Whether `code` is a phonemic SLP1 code for this script.
    pub fn has_code(&self, code: char) -> bool {
        self.vowel_letter.contains_key(&code)
            || self.consonant_letter.contains_key(&code)
            || self.sign_letter.contains_key(&code)
    }

    /// Phonemic SLP1 codes this table can render, sorted.
    pub fn alphabet(&self) -> BTreeSet<char> {
        self.vowel_letter
            .keys()
            .chain(self.consonant_letter.keys())
            .chain(self.sign_letter.keys())
            .copied()
            .collect()
    }

    /// Native letters by role, for generating test words.
    pub fn native_vowels(&self) -> impl Iterator<Item = char> + '_ {
        self.vowels.keys().copied()
    }

    pub fn native_matras(&self) -> impl Iterator<Item = char> + '_ {
        self.matras.keys().copied()
    }

    pub fn native_consonants(&self) -> impl Iterator<Item = char> + '_ {
        self.consonants.keys().copied()
    }

    pub fn native_signs(&self) -> impl Iterator<Item = char> + '_ {
        self.signs.keys().copied()
    }

    pub fn native_digits(&self) -> impl Iterator<Item = char> + '_ {
        self.digits.keys().copied()
    }

    pub fn virama(&self) -> char {
        self.virama
    }
}

/// How unmapped input is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Fail on the first unmapped code point.
    #[default]
    Strict,
    /// Copy unmapped code points to the output and record a warning.
    Lossy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub index: usize,
    pub code: char,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransliterationReport {
    pub output: String,
    pub warnings: Vec<Warning>,
    /// Set when some input was copied through untransliterated.
    pub lossy: bool,
}

impl TransliterationReport {
    fn warn(&mut self, mode: Mode, index: usize, code: char, reason: &'static str) -> Result<()> {
        match mode {
            Mode::Strict => Err(Error::Unmapped {
                index,
                code: code as u32,
                reason,
            }),
            Mode::Lossy => {
                self.output.push(code);
                self.warnings.push(Warning { index, code, reason });
                self.lossy = true;
                Ok(())
            }
        }
    }
}

fn is_passthrough(c: char) -> bool {
    matches!(
        classify(c),
        PhoneCategory::Space | PhoneCategory::Punctuation | PhoneCategory::Digit
    )
}

/// Native script to SLP1.
///
/// Input is NFC-normalized first; warning indices refer to positions in the
/// normalized character sequence. A consonant keeps its inherent `a` unless
/// a virama or vowel sign follows.
pub fn to_slp1(text: &str, table: &ScriptTable, mode: Mode) -> Result<TransliterationReport> {
    let mut report = TransliterationReport::default();
    // a consonant has been written and still owes its inherent vowel
    let mut pending = false;

    for (index, c) in text.nfc().enumerate() {
        if let Some(&code) = table.matras.get(&c) {
            if pending {
                report.output.push(code);
                pending = false;
            } else {
                report.warn(mode, index, c, "vowel sign without consonant")?;
            }
            continue;
        }
        if c == table.virama {
            if pending {
                pending = false;
            } else {
                report.warn(mode, index, c, "virama without consonant")?;
            }
            continue;
        }
        if pending {
            report.output.push('a');
            pending = false;
        }
        if let Some(&code) = table.consonants.get(&c) {
            report.output.push(code);
            pending = true;
        } else if let Some(&code) = table
            .vowels
            .get(&c)
            .or_else(|| table.signs.get(&c))
            .or_else(|| table.digits.get(&c))
        {
            report.output.push(code);
        } else if let Some(code) = table.punct.get(&c) {
            report.output.push_str(code);
        } else if is_passthrough(c) {
            report.output.push(c);
        } else {
            let reason = if c == '\u{093C}' || c == '\u{0ABC}' || c == '\u{0C3C}' {
                "nukta is outside the phoneme inventory"
            } else {
                "not in script table"
            };
            report.warn(mode, index, c, reason)?;
        }
    }
    if pending {
        report.output.push('a');
    }
    Ok(report)
}

/// SLP1 to native script. Input must pass [`validate_slp1`] for the table.
pub fn from_slp1(text: &str, table: &ScriptTable) -> Result<TransliterationReport> {
    let chars: Vec<char> = text.chars().collect();
    let mut report = TransliterationReport::default();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if let Some(&letter) = table.consonant_letter.get(&c) {
            report.output.push(letter);
            match chars.get(i + 1) {
                Some(&next) if table.vowel_letter.contains_key(&next) => {
                    if let Some(&sign) = table.vowel_sign.get(&next) {
                        report.output.push(sign);
                    }
                    i += 2;
                }
                _ => {
                    report.output.push(table.virama);
                    i += 1;
                }
            }
            continue;
        }
        if let Some(&letter) = table
            .vowel_letter
            .get(&c)
            .or_else(|| table.sign_letter.get(&c))
            .or_else(|| table.digit_letter.get(&c))
        {
            report.output.push(letter);
            i += 1;
            continue;
        }
        if let Some((code, native)) = table
            .punct_letter
            .iter()
            .find(|(code, _)| code.chars().enumerate().all(|(k, p)| chars.get(i + k) == Some(&p)))
        {
            report.output.push(*native);
            i += code.chars().count();
            continue;
        }
        if is_passthrough(c) {
            report.output.push(c);
            i += 1;
            continue;
        }
        return Err(Error::InvalidSlp1 { index: i, code: c });
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagnostic {
    pub index: usize,
    pub code: char,
    pub reason: &'static str,
}

pub const NOT_IN_ALPHABET: &str = "not-in-alphabet";

/// Report every code point outside the table's SLP1 alphabet and the
/// neutral classes. Empty result means the text is valid.
pub fn validate_slp1(text: &str, table: &ScriptTable) -> Vec<Diagnostic> {
    text.chars()
        .enumerate()
        .filter(|&(_, c)| !(table.has_code(c) || is_passthrough(c)))
        .map(|(index, code)| Diagnostic {
            index,
            code,
            reason: NOT_IN_ALPHABET,
        })
        .collect()
}
