//! Text input formats: corpora, phone dictionaries, transcripts and
//! vocabulary lists. All UTF-8, one record per line.

use std::collections::BTreeSet;

use aksara_core::lexicon::PronunciationDict;

use crate::error::{Error, Result};

/// Utterance text of each corpus line, dropping the leading id column when
/// `id_col` is set.
pub fn corpus_lines(text: &str, id_col: bool) -> impl Iterator<Item = &str> {
    text.lines().map(move |line| {
        if !id_col {
            return line;
        }
        let line = line.trim_start();
        match line.find(char::is_whitespace) {
            Some(pos) => &line[pos..],
            None => "",
        }
    })
}

/// Corpus text with ids removed, lines joined by `\n`.
pub fn corpus_text(text: &str, id_col: bool) -> String {
    if !id_col {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    for line in corpus_lines(text, true) {
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// `word phone phone ...` per line. Repeated words add variants.
pub fn parse_phone_dict(text: &str, file: &str) -> Result<PronunciationDict> {
    let mut dict = PronunciationDict::new();
    for (n, line) in text.lines().enumerate() {
        let mut fields = line.split_whitespace();
        let Some(word) = fields.next() else { continue };
        let phones: Vec<String> = fields.map(str::to_string).collect();
        if phones.is_empty() {
            return Err(Error::data(file, Some(n + 1), format!("word {word:?} has no phones")));
        }
        dict.insert(word, phones);
    }
    Ok(dict)
}

pub type Transcript = (String, Vec<String>);

/// Transcripts as `utt_id token ...` lines, or plain lines numbered from 1
/// when `by_line` is set. Trailing blank lines are ignored.
pub fn parse_transcripts(text: &str, file: &str, by_line: bool) -> Result<Vec<Transcript>> {
    let mut lines: Vec<&str> = text.lines().collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    let mut out = Vec::with_capacity(lines.len());
    for (n, line) in lines.into_iter().enumerate() {
        let mut fields = line.split_whitespace();
        if by_line {
            out.push(((n + 1).to_string(), fields.map(str::to_string).collect()));
            continue;
        }
        let Some(id) = fields.next() else {
            return Err(Error::data(
                file,
                Some(n + 1),
                "blank line where an utterance id was expected",
            ));
        };
        out.push((id.to_string(), fields.map(str::to_string).collect()));
    }
    Ok(out)
}

/// First field of every line. Accepts plain word lists and `words.txt`.
pub fn parse_vocab(text: &str) -> BTreeSet<String> {
    text.lines()
        .filter_map(|l| l.split_whitespace().next())
        .map(str::to_string)
        .collect()
}
