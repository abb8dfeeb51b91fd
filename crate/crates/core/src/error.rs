use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    TableSyntax { line: usize, message: String },

    #[error("script table {script}: {message}")]
    TableInvariant { script: &'static str, message: String },

    #[error("index {index}: unmapped code point U+{code:04X} ({reason})")]
    Unmapped {
        index: usize,
        code: u32,
        reason: &'static str,
    },

    #[error("index {index}: {code:?} is not a valid SLP1 code")]
    InvalidSlp1 { index: usize, code: char },

    #[error("word {word:?} contains non-phonemic code {code:?} at index {index}")]
    NonPhonemic { word: String, index: usize, code: char },

    #[error("word {word:?} has no vowel")]
    NoVowel { word: String },

    #[error("word {word_index}: {source}")]
    InWord {
        word_index: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("empty reference")]
    EmptyReference,

    #[error("max span must be at least 2, got {0}")]
    InvalidSpan(usize),

    #[error("threshold must be at least 1")]
    InvalidThreshold,

    #[error("unit scheme requires {0}")]
    MissingModel(&'static str),

    #[error("{token:?} not found in pronunciation dictionary")]
    NotInDictionary { token: String },

    #[error("missing hypothesis {0}")]
    MissingHypothesis(String),

    #[error("unexpected hypothesis {0}")]
    UnexpectedHypothesis(String),

    #[error("duplicate utterance id {0}")]
    DuplicateUtterance(String),
}
