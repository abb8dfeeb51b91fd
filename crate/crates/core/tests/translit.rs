mod common;

use std::time::Instant;

use aksara_core::script::{from_slp1, to_slp1, validate_slp1, Mode};
use aksara_core::{ScriptId, ScriptTable};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N: usize = 10_000;

#[test]
fn native_round_trip_every_script() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for script in ScriptId::ALL {
        let table = ScriptTable::builtin(script);
        for _ in 0..N {
            let word = common::native_word(&mut rng, &table);
            let slp = to_slp1(&word, &table, Mode::Strict).unwrap().output;
            let back = from_slp1(&slp, &table).unwrap().output;
            assert_eq!(back, word, "{script}: {word} -> {slp}");
        }
    }
    eprintln!("native round trip: {:?}", start.elapsed());
}

#[test]
fn slp1_round_trip_every_script() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for script in ScriptId::ALL {
        let table = ScriptTable::builtin(script);
        let alphabet: Vec<char> = table.alphabet().into_iter().collect();
        for _ in 0..N {
            let word = common::slp1_word(&mut rng, &alphabet, 12);
            assert!(validate_slp1(&word, &table).is_empty());
            let native = from_slp1(&word, &table).unwrap().output;
            let back = to_slp1(&native, &table, Mode::Strict).unwrap().output;
            assert_eq!(back, word, "{script}: {word} -> {native}");
        }
    }
}

#[test]
fn golden_devanagari() {
    let table = ScriptTable::builtin(ScriptId::Devanagari);
    let out = to_slp1("वागर्थप्रतिपत्तये", &table, Mode::Strict).unwrap().output;
    assert_eq!(out, "vAgarTapratipattaye");
    assert_eq!(out.chars().count(), 19);
}

#[test]
fn extension_codes_are_script_specific() {
    let dev = ScriptTable::builtin(ScriptId::Devanagari);
    let tel = ScriptTable::builtin(ScriptId::Telugu);
    let guj = ScriptTable::builtin(ScriptId::Gujarati);
    for c in ['ĕ', 'ŏ', 'ṟ'] {
        assert!(tel.has_code(c) && !dev.has_code(c));
    }
    for c in ['ê', 'ô'] {
        assert!(guj.has_code(c) && !dev.has_code(c));
    }
    assert_eq!(validate_slp1("ṟa", &dev).len(), 1);
}

proptest! {
    #[test]
    fn lossy_never_fails_and_strict_agrees_when_clean(s in "\\PC{0,20}") {
        let table = ScriptTable::builtin(ScriptId::Devanagari);
        let lossy = to_slp1(&s, &table, Mode::Lossy).unwrap();
        prop_assert_eq!(lossy.lossy, !lossy.warnings.is_empty());
        match to_slp1(&s, &table, Mode::Strict) {
            Ok(strict) => {
                prop_assert!(lossy.warnings.is_empty());
                prop_assert_eq!(strict.output, lossy.output);
            }
            Err(_) => prop_assert!(!lossy.warnings.is_empty()),
        }
    }

    #[test]
    fn sentences_round_trip(words in prop::collection::vec("[aAiIuUkKgGcjtTdDnpbmyrlvSzshMH]{1,8}", 1..6)) {
        let table = ScriptTable::builtin(ScriptId::Devanagari);
        let line = words.join(" ") + " .";
        let native = from_slp1(&line, &table).unwrap().output;
        prop_assert!(native.ends_with('।'));
        prop_assert_eq!(to_slp1(&native, &table, Mode::Strict).unwrap().output, line);
    }
}

#[test]
fn devanagari_length_law() {
    let table = ScriptTable::builtin(ScriptId::Devanagari);
    let consonants: Vec<char> = table.native_consonants().collect();
    let virama = table.virama();
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..1000 {
        let word = common::native_word(&mut rng, &table);
        let chars: Vec<char> = word.chars().collect();
        // each consonant not followed by a virama or matra gains an inherent 'a'
        let mut expected = 0;
        for (i, &c) in chars.iter().enumerate() {
            if c == virama {
                continue;
            }
            expected += 1;
            if consonants.contains(&c) {
                let next = chars.get(i + 1).copied();
                let bare = next.is_none_or(|n| n != virama && !table.native_matras().any(|m| m == n));
                expected += usize::from(bare);
            }
        }
        let slp = to_slp1(&word, &table, Mode::Strict).unwrap().output;
        assert_eq!(slp.chars().count(), expected, "{word} -> {slp}");
    }
}
