use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use aksara_core::script::{from_slp1, to_slp1, Mode};
use aksara_core::segment::vowel_segment_text;
use aksara_core::{ScriptId, ScriptTable};
use serde_json::Value;

fn aksara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aksara"))
        .args(args)
        .env_remove("AKSARA_TABLES")
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn translit_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out.txt");
    let text = "वागर्थप्रतिपत्तये\nरामः गच्छति ।";
    fs::write(&input, text).unwrap();
    let out = aksara(&[
        "translit",
        "--script",
        "devanagari",
        "--to",
        "slp1",
        path(&input),
        path(&output),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let table = ScriptTable::builtin(ScriptId::Devanagari);
    let expected: String = text
        .lines()
        .map(|l| to_slp1(l, &table, Mode::Strict).unwrap().output + "\n")
        .collect();
    assert_eq!(fs::read_to_string(&output).unwrap(), expected);
    assert!(expected.starts_with("vAgarTapratipattaye\n"));

    let back = dir.path().join("back.txt");
    let out = aksara(&[
        "translit",
        "--script",
        "devanagari",
        "--to",
        "native",
        path(&output),
        path(&back),
    ]);
    assert!(out.status.success());
    let lines: String = expected
        .lines()
        .map(|l| from_slp1(l, &table).unwrap().output + "\n")
        .collect();
    assert_eq!(fs::read_to_string(&back).unwrap(), lines);
    assert_eq!(lines, format!("{text}\n"));
}

#[test]
fn translit_errors_carry_location() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, "राम\nक़\n").unwrap();
    let out = aksara(&["translit", "--script", "devanagari", "--to", "slp1", path(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("in.txt:2:"), "{}", stderr(&out));

    let out = aksara(&[
        "translit",
        "--script",
        "devanagari",
        "--to",
        "slp1",
        "--lossy",
        path(&input),
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));

    fs::write(&input, "rAma\nṟa\n").unwrap();
    let out = aksara(&["translit", "--script", "devanagari", "--to", "native", path(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("in.txt:2:"));
}

#[test]
fn vseg_and_prosody() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, "udyAnaH tallitaMqrulu\nanyAni saMyAti\n").unwrap();
    let out = aksara(&["vseg", path(&input)]);
    assert!(out.status.success());
    let expected = format!(
        "{}\n{}\n",
        vowel_segment_text("udyAnaH tallitaMqrulu", false).unwrap(),
        vowel_segment_text("anyAni saMyAti", false).unwrap()
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);

    let out = aksara(&["vseg", "--marker", path(&input)]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("ud+ yA+ naH tal+"));

    let out = aksara(&["prosody", path(&input)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "SSS SlSll\nSSl SSl\n");
}

#[test]
fn bpe_train_and_apply() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    let model = dir.path().join("m.bpe");
    fs::write(&corpus, "abab abab ab\n").unwrap();
    let out = aksara(&[
        "bpe",
        "train",
        "--target",
        "1",
        "--merges",
        "--corpus",
        path(&corpus),
        "--model",
        path(&model),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(&model).unwrap(), "#aksara-bpe v1 marker=+\na b\n");

    let out = aksara(&["bpe", "apply", "--model", path(&model), path(&corpus)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "ab+ ab ab+ ab ab\n");

    let first = fs::read(&model).unwrap();
    aksara(&[
        "bpe",
        "train",
        "--target",
        "1",
        "--merges",
        "--corpus",
        path(&corpus),
        "--model",
        path(&model),
    ]);
    assert_eq!(fs::read(&model).unwrap(), first);
}

#[test]
fn lexicon_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    let dict = dir.path().join("d.txt");
    let out_dir = dir.path().join("lex");
    fs::write(&corpus, "rAmaH sItA rAmaH\n").unwrap();
    fs::write(&dict, "rAmaH r A m a H\n").unwrap();

    let out = aksara(&[
        "lexicon",
        "--lm-unit",
        "bpe",
        "--am-unit",
        "grapheme",
        "--corpus",
        path(&corpus),
        "--out",
        path(&out_dir),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--bpe-model"));

    let out = aksara(&[
        "lexicon",
        "--lm-unit",
        "vs",
        "--am-unit",
        "grapheme_vs",
        "--corpus",
        path(&corpus),
        "--out",
        path(&out_dir),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(out_dir.join("lexicon.txt")).unwrap(),
        "maH maH\nrA+ rA\nsI+ sI\ntA tA\n"
    );

    let out = aksara(&[
        "lexicon",
        "--lm-unit",
        "word",
        "--am-unit",
        "phoneme",
        "--phone-dict",
        path(&dict),
        "--corpus",
        path(&corpus),
        "--out",
        path(&out_dir),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(out_dir.join("lexicon.txt")).unwrap(),
        "rAmaH r A m a H\n"
    );
    assert_eq!(fs::read_to_string(out_dir.join("oov_lexicon.txt")).unwrap(), "sItA\n");
    assert_eq!(
        fs::read_to_string(out_dir.join("words.txt")).unwrap(),
        "rAmaH\t2\nsItA\t1\n"
    );
}

#[test]
fn census_counts() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    fs::write(&corpus, "u1 rAmaH sItA rAmaH\n").unwrap();
    let run = |unit: &str| {
        let out = aksara(&["census", "--unit", unit, "--id-col", "--corpus", path(&corpus)]);
        assert!(out.status.success(), "{}", stderr(&out));
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(run("word"), "2\n");
    assert_eq!(run("vs"), "4\n");
    assert_eq!(run("grapheme"), "8\n");
}

#[test]
fn score_merge_example() {
    let dir = tempfile::tempdir().unwrap();
    let (r, h, j) = (
        dir.path().join("r.txt"),
        dir.path().join("h.txt"),
        dir.path().join("s.json"),
    );
    fs::write(&r, "u1 mahAn prAkAraH\n").unwrap();
    fs::write(&h, "u1 mahAnprAkAraH\n").unwrap();
    let out = aksara(&["score", "--ref", path(&r), "--hyp", path(&h), "--json", path(&j)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(v["msd_wer"], 0.0);
    assert_eq!(v["wer"], 1.0);
    assert_eq!(
        (v["sub"].as_u64(), v["del"].as_u64(), v["ins"].as_u64()),
        (Some(1), Some(1), Some(0))
    );
    assert!(v["oov_token_rate"].is_null());

    fs::write(&h, "u2 mahAn\n").unwrap();
    let out = aksara(&["score", "--ref", path(&r), "--hyp", path(&h)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing hypothesis u1"));
}

#[test]
fn stats_files() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    let out_dir = dir.path().join("stats");
    fs::write(&corpus, "").unwrap();
    let out = aksara(&["stats", "--corpus", path(&corpus), "--out", path(&out_dir)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty corpus"));

    fs::write(&corpus, "udyAnaH kArtsnyam .\n").unwrap();
    let out = aksara(&["stats", "--corpus", path(&corpus), "--out", path(&out_dir)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(out_dir.join("length_stats.csv")).unwrap(),
        "length,count,normalized\n7,1,0.5\n9,1,0.5\n"
    );
    let runs = fs::read_to_string(out_dir.join("run_stats.csv")).unwrap();
    assert!(runs.contains("\n5,1,"), "{runs}");
    let summary: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["consonant_runs"]["max_run"], 5);

    // the same corpus in Devanagari gives the same statistics
    let native = dir.path().join("n.txt");
    let native_dir = dir.path().join("native");
    fs::write(&native, "उद्यानः कार्त्स्न्यम् ।\n").unwrap();
    let out = aksara(&[
        "stats",
        "--corpus",
        path(&native),
        "--script",
        "devanagari",
        "--out",
        path(&native_dir),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    for f in ["length_stats.csv", "run_stats.csv", "summary.json"] {
        assert_eq!(
            fs::read(out_dir.join(f)).unwrap(),
            fs::read(native_dir.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn exit_codes_and_version() {
    assert_eq!(aksara(&["--help"]).status.code(), Some(0));
    assert_eq!(aksara(&["bogus"]).status.code(), Some(1));
    assert_eq!(aksara(&["score", "--ref", "r"]).status.code(), Some(1));
    let missing = aksara(&["vseg", "/nonexistent/file"]);
    assert_eq!(missing.status.code(), Some(2));

    let out = aksara(&["--version"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("devanagari v1") && text.contains("telugu v1"), "{text}");
}

#[test]
fn tables_override() {
    let dir = tempfile::tempdir().unwrap();
    let src = ScriptId::Telugu
        .builtin_table_source()
        .replace("# version: 1", "# version: 9");
    fs::write(dir.path().join("telugu.tab"), src).unwrap();
    for s in ["devanagari", "gujarati"] {
        fs::write(
            dir.path().join(format!("{s}.tab")),
            ScriptId::from_str_name(s).builtin_table_source(),
        )
        .unwrap();
    }
    let out = Command::new(env!("CARGO_BIN_EXE_aksara"))
        .arg("--version")
        .env("AKSARA_TABLES", dir.path())
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("telugu v9"));
}

trait FromStrName {
    fn from_str_name(s: &str) -> ScriptId;
}

impl FromStrName for ScriptId {
    fn from_str_name(s: &str) -> ScriptId {
        s.parse().unwrap()
    }
}
