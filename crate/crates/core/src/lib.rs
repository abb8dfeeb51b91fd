//! Text-side pipeline for Sanskrit and Indic speech recognition.
//!
//! Everything here works on SLP1, a phonemic ASCII encoding with one code
//! point per phoneme:
//!
//! - [`script`]: character classes and native-script transliteration
//! - [`segment`]: vowel segmentation and laghu/guru weights
//! - [`bpe`]: byte-pair-encoding subwords
//! - [`lexicon`]: token inventories, pronunciation lexicons and census
//! - [`metrics`]: WER, CER, merge/split-tolerant WER, OOV recovery
//! - [`stats`]: word-length and consonant-run statistics
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the CLI
//! live in the `aksara` crate.
#![no_std]
extern crate alloc;

pub mod bpe;
pub mod error;
pub mod lexicon;
pub mod metrics;
pub mod script;
pub mod segment;
pub mod stats;

pub use error::{Error, Result};
pub use script::{classify, Coarse, PhoneCategory, ScriptId, ScriptTable};
