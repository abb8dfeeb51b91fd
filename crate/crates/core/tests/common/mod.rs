#![allow(dead_code)]

use aksara_core::script::{CONSONANTS, VOWELS};
use aksara_core::ScriptTable;
use rand::seq::SliceRandom;
use rand::Rng;

/// A well-formed native word: syllables of a consonant cluster plus an
/// optional matra, or an independent vowel, each optionally followed by a
/// sign. May end in a virama.
pub fn native_word<R: Rng>(rng: &mut R, table: &ScriptTable) -> String {
    let vowels: Vec<char> = table.native_vowels().collect();
    let matras: Vec<char> = table.native_matras().collect();
    let consonants: Vec<char> = table.native_consonants().collect();
    let signs: Vec<char> = table.native_signs().collect();
    let virama = table.virama();

    let mut out = String::new();
    let syllables = rng.gen_range(1..=5);
    for _ in 0..syllables {
        if rng.gen_bool(0.2) {
            out.push(*vowels.choose(rng).unwrap());
        } else {
            out.push(*consonants.choose(rng).unwrap());
            for _ in 0..rng.gen_range(0..=2) {
                out.push(virama);
                out.push(*consonants.choose(rng).unwrap());
            }
            if rng.gen_bool(0.7) {
                out.push(*matras.choose(rng).unwrap());
            }
        }
        if rng.gen_bool(0.15) {
            out.push(*signs.choose(rng).unwrap());
        }
    }
    if rng.gen_bool(0.1) {
        out.push(*consonants.choose(rng).unwrap());
        out.push(virama);
    }
    out
}

/// Random string over a script's SLP1 alphabet.
pub fn slp1_word<R: Rng>(rng: &mut R, alphabet: &[char], max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

/// Random word over the core SLP1 vowels and consonants.
pub fn core_word<R: Rng>(rng: &mut R, max_len: usize) -> String {
    let alphabet: Vec<char> = VOWELS.chars().chain(CONSONANTS.chars()).chain("MH".chars()).collect();
    slp1_word(rng, &alphabet, max_len)
}
