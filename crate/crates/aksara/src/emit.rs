//! Output files: lexicons, plot data and JSON reports. Every renderer is
//! byte-deterministic for a given input.

use std::fs;
use std::path::Path;

use aksara_core::lexicon::LexiconArtifact;
use aksara_core::metrics::ScoreReport;
use aksara_core::stats::{round2, LengthStats, RareWordStats, RunMode, RunStats};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// `token unit unit ...`, one line per pronunciation, tokens sorted.
pub fn lexicon_txt(artifact: &LexiconArtifact) -> String {
    let mut out = String::new();
    for (token, variants) in &artifact.entries {
        for units in variants {
            out.push_str(token);
            for u in units {
                out.push(' ');
                out.push_str(u);
            }
            out.push('\n');
        }
    }
    out
}

pub fn units_txt(artifact: &LexiconArtifact) -> String {
    artifact.units.iter().map(|u| format!("{u}\n")).collect()
}

/// `token<TAB>count`, count descending then token.
pub fn words_txt(artifact: &LexiconArtifact) -> String {
    artifact
        .words_by_count()
        .into_iter()
        .map(|(t, c)| format!("{t}\t{c}\n"))
        .collect()
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(&path.display().to_string(), e))
}

/// Write `lexicon.txt`, `units.txt` and `words.txt`, plus `oov_lexicon.txt`
/// listing tokens the phone dictionary lacked, if any.
pub fn write_lexicon(artifact: &LexiconArtifact, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(&dir.display().to_string(), e))?;
    write(&dir.join("lexicon.txt"), &lexicon_txt(artifact))?;
    write(&dir.join("units.txt"), &units_txt(artifact))?;
    write(&dir.join("words.txt"), &words_txt(artifact))?;
    let oov = dir.join("oov_lexicon.txt");
    if artifact.missing.is_empty() {
        if oov.exists() {
            fs::remove_file(&oov).map_err(|e| Error::io(&oov.display().to_string(), e))?;
        }
    } else {
        write(
            &oov,
            &artifact.missing.iter().map(|t| format!("{t}\n")).collect::<String>(),
        )?;
    }
    Ok(())
}

/// `length,count,normalized`; `normalized` is the fraction of the vocabulary.
pub fn length_csv(stats: &LengthStats) -> String {
    let mut out = String::from("length,count,normalized\n");
    for (len, &count) in &stats.counts {
        let normalized = count as f64 / stats.vocab_size as f64;
        out.push_str(&format!("{len},{count},{normalized:?}\n"));
    }
    out
}

/// `run_length,count,percent`.
pub fn run_csv(stats: &RunStats) -> String {
    let mut out = String::from("run_length,count,percent\n");
    let dist = stats.distribution();
    for (len, &count) in &stats.counts {
        out.push_str(&format!("{len},{count},{:.2}\n", round2(dist[len])));
    }
    out
}

pub fn length_json(stats: &LengthStats) -> Value {
    json!({
        "vocab_size": stats.vocab_size,
        "histogram": stats
            .histogram()
            .iter()
            .map(|(len, f)| json!({ "length": len, "count": stats.counts[len], "normalized": f }))
            .collect::<Vec<_>>(),
        "bins": {
            "le_6": round2(stats.bins[0]),
            "7_to_12": round2(stats.bins[1]),
            "gt_12": round2(stats.bins[2]),
        },
        "mean": round2(stats.mean),
    })
}

pub fn run_json(stats: &RunStats) -> Value {
    json!({
        "mode": match stats.mode {
            RunMode::Runs => "runs",
            RunMode::PerWordMax => "per-word-max",
        },
        "distribution": stats
            .distribution()
            .iter()
            .map(|(len, p)| json!({ "run_length": len, "count": stats.counts[len], "percent": round2(*p) }))
            .collect::<Vec<_>>(),
        "max_run": stats.max_run,
    })
}

pub fn summary_json(tokens: u64, lengths: &LengthStats, runs: &RunStats, rare: &RareWordStats) -> Value {
    json!({
        "tokens": tokens,
        "length": length_json(lengths),
        "consonant_runs": run_json(runs),
        "rare_words": {
            "threshold": rare.threshold,
            "rare_types": rare.rare_types,
            "types": rare.types,
            "rate": round2(rare.rate),
        },
    })
}

/// Score report with the fixed key set. Rates are fractions, `*_pct` are
/// percentages; unavailable values are `null`.
pub fn score_json(report: &ScoreReport) -> Value {
    let oov = report.oov.as_ref();
    json!({
        "n_ref": report.n_ref,
        "sub": report.errors.sub,
        "del": report.errors.del,
        "ins": report.errors.ins,
        "wer": report.wer,
        "cer": report.cer,
        "msd_wer": report.msd_wer,
        "oov_token_rate": oov.and_then(|o| o.oov_token_rate()),
        "oov_type_rate": oov.and_then(|o| o.oov_type_rate()),
        "oov_recovered_pct": oov.and_then(|o| o.recovered_pct()),
        "oov_msd_recovered_pct": oov.and_then(|o| o.msd_recovered_pct()),
    })
}

/// Pretty JSON with a trailing newline.
pub fn json_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}
