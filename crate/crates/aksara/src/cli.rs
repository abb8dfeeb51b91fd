//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error. Data errors are
//! reported as `file:line: message`.

use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use aksara_core::bpe::{self, Target};
use aksara_core::lexicon::{self, AmUnit, CensusUnit, LmUnit, PronunciationDict, UnitScheme};
use aksara_core::metrics::{self, ScoreOptions, DEFAULT_MAX_SPAN};
use aksara_core::script::{self, Mode, PhoneCategory};
use aksara_core::segment;
use aksara_core::stats::{self, RunMode};
use aksara_core::{classify, ScriptId};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::{bpe_file, emit, formats, tables};

#[derive(Debug, Parser)]
#[command(
    name = "aksara",
    about = "Text pipeline for Sanskrit and Indic speech recognition",
    disable_version_flag = true
)]
pub struct Cli {
    /// Print toolkit and script-table versions
    #[arg(long)]
    pub version: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transliterate between a native script and SLP1
    Translit(TranslitArgs),
    /// Vowel-segment SLP1 text, one utterance per line
    Vseg(VsegArgs),
    /// Laghu/guru weights of every word
    Prosody(IoArgs),
    /// Train or apply BPE subword models
    Bpe {
        #[command(subcommand)]
        command: BpeCommand,
    },
    /// Build token inventories and pronunciation lexicons
    Lexicon(LexiconArgs),
    /// Count distinct units in a corpus
    Census(CensusArgs),
    /// Score hypotheses against references
    Score(ScoreArgs),
    /// Word-length, consonant-run and rare-word statistics
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct IoArgs {
    /// Input file (stdin when omitted)
    pub input: Option<PathBuf>,
    /// Output file (stdout when omitted)
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Slp1,
    Native,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScriptArg {
    Devanagari,
    Gujarati,
    Telugu,
}

impl From<ScriptArg> for ScriptId {
    fn from(s: ScriptArg) -> ScriptId {
        match s {
            ScriptArg::Devanagari => ScriptId::Devanagari,
            ScriptArg::Gujarati => ScriptId::Gujarati,
            ScriptArg::Telugu => ScriptId::Telugu,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TranslitArgs {
    #[arg(long, value_enum)]
    pub script: ScriptArg,
    #[arg(long, value_enum)]
    pub to: Direction,
    /// Copy unmapped characters through with a warning instead of failing
    #[arg(long)]
    pub lossy: bool,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VsegArgs {
    /// Mark non-final segments with `+`
    #[arg(long)]
    pub marker: bool,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Debug, Subcommand)]
pub enum BpeCommand {
    Train(BpeTrainArgs),
    Apply(BpeApplyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BpeTrainArgs {
    /// Target vocabulary size, or merge count with --merges
    #[arg(long)]
    pub target: usize,
    /// Interpret --target as a number of merges
    #[arg(long)]
    pub merges: bool,
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    /// Corpus lines start with an utterance id
    #[arg(long)]
    pub id_col: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BpeApplyArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LmUnitArg {
    Word,
    Bpe,
    Vs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AmUnitArg {
    Grapheme,
    #[value(name = "grapheme_vs", alias = "grapheme-vs")]
    GraphemeVs,
    Phoneme,
}

#[derive(Debug, Clone, Args)]
pub struct LexiconArgs {
    #[arg(long, value_enum)]
    pub lm_unit: LmUnitArg,
    #[arg(long, value_enum)]
    pub am_unit: AmUnitArg,
    #[arg(long)]
    pub bpe_model: Option<PathBuf>,
    #[arg(long)]
    pub phone_dict: Option<PathBuf>,
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub id_col: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusUnitArg {
    Word,
    Vs,
    Bpe,
    Grapheme,
    Phoneme,
}

#[derive(Debug, Clone, Args)]
pub struct CensusArgs {
    #[arg(long, value_enum)]
    pub unit: CensusUnitArg,
    /// BPE vocabulary size (required for --unit bpe)
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long)]
    pub phone_dict: Option<PathBuf>,
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub id_col: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    #[arg(long = "ref")]
    pub reference: PathBuf,
    #[arg(long)]
    pub hyp: PathBuf,
    /// Training vocabulary, one word per line, for OOV analysis
    #[arg(long)]
    pub train_vocab: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_SPAN)]
    pub max_span: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Pair utterances by line number instead of a leading id
    #[arg(long)]
    pub by_line: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunModeArg {
    Runs,
    PerWordMax,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Corpus is in this native script rather than SLP1
    #[arg(long, value_enum)]
    pub script: Option<ScriptArg>,
    #[arg(long, default_value_t = 3)]
    pub threshold: u64,
    #[arg(long, value_enum, default_value = "runs")]
    pub run_mode: RunModeArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub id_col: bool,
}

/// What the caller should do after parsing.
#[derive(Debug)]
pub enum Parsed {
    Run(Cli),
    /// Help was requested; print it and exit 0.
    Help(String),
}

/// Parse and validate arguments. Flag combinations the unit schemes forbid
/// are usage errors naming the missing flag.
pub fn parse_args<I, T>(argv: I) -> Result<Parsed>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.kind() == ErrorKind::DisplayHelp => return Ok(Parsed::Help(e.to_string())),
        Err(e) => return Err(Error::Usage(e.to_string())),
    };
    match &cli.command {
        None if !cli.version => return Err(Error::Usage("a subcommand is required; see --help".into())),
        Some(Command::Lexicon(a)) => {
            if a.lm_unit == LmUnitArg::Bpe && a.bpe_model.is_none() {
                return Err(Error::Usage("--bpe-model is required when --lm-unit is bpe".into()));
            }
            if a.am_unit == AmUnitArg::Phoneme && a.phone_dict.is_none() {
                return Err(Error::Usage(
                    "--phone-dict is required when --am-unit is phoneme".into(),
                ));
            }
        }
        Some(Command::Census(a)) => {
            if a.unit == CensusUnitArg::Bpe && a.target.is_none() {
                return Err(Error::Usage("--target is required when --unit is bpe".into()));
            }
            if a.unit == CensusUnitArg::Phoneme && a.phone_dict.is_none() {
                return Err(Error::Usage("--phone-dict is required when --unit is phoneme".into()));
            }
        }
        Some(Command::Score(a)) if a.max_span < 2 => {
            return Err(Error::Usage(format!(
                "--max-span must be at least 2, got {}",
                a.max_span
            )));
        }
        Some(Command::Stats(a)) if a.threshold < 1 => {
            return Err(Error::Usage("--threshold must be at least 1".into()));
        }
        _ => {}
    }
    Ok(Parsed::Run(cli))
}

/// Parse, dispatch and report. Returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = parse_args(argv).and_then(|parsed| match parsed {
        Parsed::Help(text) => {
            print!("{text}");
            Ok(())
        }
        Parsed::Run(cli) => dispatch(&cli),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("aksara: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<()> {
    if cli.version {
        println!("aksara {}", env!("CARGO_PKG_VERSION"));
        println!("tables: {}", tables::versions()?.join(", "));
        return Ok(());
    }
    match cli.command.as_ref().expect("validated by parse_args") {
        Command::Translit(a) => translit(a),
        Command::Vseg(a) => map_lines(&a.io, |line| {
            segment::vowel_segment_text(line, a.marker).map_err(|e| e.to_string())
        }),
        Command::Prosody(io) => map_lines(io, prosody_line),
        Command::Bpe {
            command: BpeCommand::Train(a),
        } => bpe_train(a),
        Command::Bpe {
            command: BpeCommand::Apply(a),
        } => {
            let model = bpe_file::load(&a.model)?;
            map_lines(&a.io, |line| {
                Ok(line
                    .split_whitespace()
                    .flat_map(|w| model.apply(w))
                    .collect::<Vec<_>>()
                    .join(" "))
            })
        }
        Command::Lexicon(a) => lexicon_cmd(a),
        Command::Census(a) => census(a),
        Command::Score(a) => score(a),
        Command::Stats(a) => stats_cmd(a),
    }
}

fn display(path: Option<&Path>) -> String {
    path.map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string())
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).map_err(|e| Error::io(&display(Some(p)), e))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::io(&p.display().to_string(), e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(&path.display().to_string(), e))
}

/// Stream `input` line by line through `f`, writing one output line each.
fn map_lines<F>(io: &IoArgs, mut f: F) -> Result<()>
where
    F: FnMut(&str) -> std::result::Result<String, String>,
{
    let name = display(io.input.as_deref());
    let mut input = open_input(io.input.as_deref())?;
    let out_name = display(io.output.as_deref()).replace("<stdin>", "<stdout>");
    let mut output = open_output(io.output.as_deref())?;
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        let n = input.read_until(b'\n', &mut buf).map_err(|e| Error::io(&name, e))?;
        if n == 0 {
            break;
        }
        line_no += 1;
        let text = std::str::from_utf8(&buf).map_err(|_| Error::data(&name, Some(line_no), "invalid UTF-8"))?;
        let text = text.strip_suffix('\n').unwrap_or(text);
        let text = text.strip_suffix('\r').unwrap_or(text);
        let mapped = f(text).map_err(|m| Error::data(&name, Some(line_no), m))?;
        writeln!(output, "{mapped}").map_err(|e| Error::io(&out_name, e))?;
    }
    output.flush().map_err(|e| Error::io(&out_name, e))
}

fn translit(a: &TranslitArgs) -> Result<()> {
    let table = tables::load(a.script.into())?;
    let name = display(a.io.input.as_deref());
    let mode = if a.lossy { Mode::Lossy } else { Mode::Strict };
    let mut line_no = 0;
    map_lines(&a.io, |line| {
        line_no += 1;
        match a.to {
            Direction::Slp1 => {
                let report = script::to_slp1(line, &table, mode).map_err(|e| e.to_string())?;
                for w in &report.warnings {
                    eprintln!(
                        "{name}:{line_no}: warning: index {}: U+{:04X} passed through ({})",
                        w.index, w.code as u32, w.reason
                    );
                }
                Ok(report.output)
            }
            Direction::Native => {
                if let Some(d) = script::validate_slp1(line, &table).first() {
                    return Err(format!("index {}: {:?} {}", d.index, d.code, d.reason));
                }
                script::from_slp1(line, &table)
                    .map(|r| r.output)
                    .map_err(|e| e.to_string())
            }
        }
    })
}

fn prosody_line(line: &str) -> std::result::Result<String, String> {
    line.split_whitespace()
        .map(|w| segment::syllable_weights(w).map(|ws| ws.to_string()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(|ws| ws.join(" "))
        .map_err(|e| e.to_string())
}

/// Corpus text with ids stripped, rejecting codes outside SLP1.
fn read_slp1_corpus(path: &Path, id_col: bool) -> Result<String> {
    let name = path.display().to_string();
    let raw = read_file(path)?;
    let text = formats::corpus_text(&raw, id_col);
    for (n, line) in text.lines().enumerate() {
        if let Some((index, c)) = line
            .chars()
            .enumerate()
            .find(|&(_, c)| classify(c) == PhoneCategory::Other)
        {
            return Err(Error::data(
                &name,
                Some(n + 1),
                format!("index {index}: {c:?} is not an SLP1 code"),
            ));
        }
    }
    Ok(text)
}

fn core_error(file: &Path, e: aksara_core::Error) -> Error {
    Error::data(&file.display().to_string(), None, e)
}

fn bpe_train(a: &BpeTrainArgs) -> Result<()> {
    let text = read_slp1_corpus(&a.corpus, a.id_col)?;
    let table: Vec<(&str, u64)> = lexicon::word_counts(&text).into_iter().collect();
    let target = if a.merges {
        Target::Merges(a.target)
    } else {
        Target::VocabSize(a.target)
    };
    let model = bpe::train(&table, target).map_err(|e| core_error(&a.corpus, e))?;
    bpe_file::save(&model, &a.model)
}

fn load_dict(path: &Path) -> Result<PronunciationDict> {
    formats::parse_phone_dict(&read_file(path)?, &path.display().to_string())
}

fn lexicon_cmd(a: &LexiconArgs) -> Result<()> {
    let text = read_slp1_corpus(&a.corpus, a.id_col)?;
    let model = a.bpe_model.as_deref().map(bpe_file::load).transpose()?;
    let dict = a.phone_dict.as_deref().map(load_dict).transpose()?;
    let lm_unit = match a.lm_unit {
        LmUnitArg::Word => LmUnit::Word,
        LmUnitArg::Bpe => LmUnit::Bpe,
        LmUnitArg::Vs => LmUnit::Vs,
    };
    let am_unit = match a.am_unit {
        AmUnitArg::Grapheme => AmUnit::Grapheme,
        AmUnitArg::GraphemeVs => AmUnit::GraphemeVs,
        AmUnitArg::Phoneme => AmUnit::Phoneme,
    };
    let mut scheme = UnitScheme::new(lm_unit, am_unit);
    if let Some(m) = &model {
        scheme = scheme.with_bpe(m);
    }
    if let Some(d) = &dict {
        scheme = scheme.with_dict(d);
    }
    let artifact = lexicon::build_lexicon(&text, &scheme).map_err(|e| core_error(&a.corpus, e))?;
    emit::write_lexicon(&artifact, &a.out)?;
    if !artifact.missing.is_empty() {
        eprintln!(
            "aksara: {} tokens missing from the phone dictionary; see {}",
            artifact.missing.len(),
            a.out.join("oov_lexicon.txt").display()
        );
    }
    Ok(())
}

fn census(a: &CensusArgs) -> Result<()> {
    let text = read_slp1_corpus(&a.corpus, a.id_col)?;
    let dict = a.phone_dict.as_deref().map(load_dict).transpose()?;
    let unit = match a.unit {
        CensusUnitArg::Word => CensusUnit::Word,
        CensusUnitArg::Vs => CensusUnit::Vs,
        CensusUnitArg::Bpe => CensusUnit::Bpe(a.target.expect("validated by parse_args")),
        CensusUnitArg::Grapheme => CensusUnit::Grapheme,
        CensusUnitArg::Phoneme => CensusUnit::Phoneme(dict.as_ref().expect("validated by parse_args")),
    };
    let count = lexicon::vocab_census(&text, unit).map_err(|e| core_error(&a.corpus, e))?;
    println!("{count}");
    Ok(())
}

fn score(a: &ScoreArgs) -> Result<()> {
    let ref_name = a.reference.display().to_string();
    let hyp_name = a.hyp.display().to_string();
    let refs = formats::parse_transcripts(&read_file(&a.reference)?, &ref_name, a.by_line)?;
    let hyps = formats::parse_transcripts(&read_file(&a.hyp)?, &hyp_name, a.by_line)?;
    let utterances = metrics::pair_utterances(refs, hyps).map_err(|e| core_error(&a.hyp, e))?;
    let vocab: Option<BTreeSet<String>> = a
        .train_vocab
        .as_deref()
        .map(|p| read_file(p).map(|t| formats::parse_vocab(&t)))
        .transpose()?;
    let report = metrics::score(&utterances, vocab.as_ref(), ScoreOptions { max_span: a.max_span })
        .map_err(|e| core_error(&a.reference, e))?;

    let json = emit::score_json(&report);
    if let Some(path) = &a.json {
        fs::write(path, emit::json_string(&json)).map_err(|e| Error::io(&path.display().to_string(), e))?;
    }
    let pct = |x: f64| format!("{:.2}%", x * 100.0);
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "utterances {}  n_ref {}", utterances.len(), report.n_ref);
    let _ = writeln!(
        out,
        "WER {}  (sub {} del {} ins {})",
        pct(report.wer),
        report.errors.sub,
        report.errors.del,
        report.errors.ins
    );
    let _ = writeln!(out, "msd-WER {}", pct(report.msd_wer));
    let _ = writeln!(out, "CER {}", pct(report.cer));
    if let Some(oov) = &report.oov {
        let opt = |x: Option<f64>, scale: f64| x.map_or("n/a".to_string(), |v| format!("{:.2}%", v * scale));
        let _ = writeln!(
            out,
            "OOV tokens {}  types {}  recovered {}  msd-recovered {}",
            opt(oov.oov_token_rate(), 100.0),
            opt(oov.oov_type_rate(), 100.0),
            opt(oov.recovered_pct(), 1.0),
            opt(oov.msd_recovered_pct(), 1.0)
        );
    }
    Ok(())
}

/// Vocabulary words of a corpus: whitespace tokens with non-phonemic codes
/// removed, dropping tokens left empty.
pub fn stats_words(text: &str) -> std::collections::BTreeMap<String, u64> {
    let mut counts = std::collections::BTreeMap::new();
    for token in text.split_whitespace() {
        let word: String = token
            .chars()
            .filter(|&c| classify(c).coarse() != aksara_core::Coarse::Neutral)
            .collect();
        if !word.is_empty() {
            *counts.entry(word).or_insert(0) += 1;
        }
    }
    counts
}

fn stats_cmd(a: &StatsArgs) -> Result<()> {
    let name = a.corpus.display().to_string();
    let raw = read_file(&a.corpus)?;
    let mut text = formats::corpus_text(&raw, a.id_col);
    if let Some(s) = a.script {
        let table = tables::load(s.into())?;
        let mut slp = String::with_capacity(text.len());
        for (n, line) in text.lines().enumerate() {
            let report = script::to_slp1(line, &table, Mode::Lossy).map_err(|e| Error::data(&name, Some(n + 1), e))?;
            if !report.warnings.is_empty() {
                eprintln!(
                    "{name}:{}: warning: {} characters passed through",
                    n + 1,
                    report.warnings.len()
                );
            }
            slp.push_str(&report.output);
            slp.push('\n');
        }
        text = slp;
    }
    let counts = stats_words(&text);
    if counts.is_empty() {
        return Err(Error::data(&name, None, "empty corpus"));
    }
    let mode = match a.run_mode {
        RunModeArg::Runs => RunMode::Runs,
        RunModeArg::PerWordMax => RunMode::PerWordMax,
    };
    let lengths = stats::word_length_stats(counts.keys());
    let runs = stats::consonant_run_stats(counts.keys(), mode);
    let rare = stats::rare_word_rate(counts.iter().map(|(w, &c)| (w, c)), a.threshold)
        .map_err(|e| Error::Usage(e.to_string()))?;
    let tokens = counts.values().sum();

    fs::create_dir_all(&a.out).map_err(|e| Error::io(&a.out.display().to_string(), e))?;
    let write = |file: &str, contents: String| {
        let path = a.out.join(file);
        fs::write(&path, contents).map_err(|e| Error::io(&path.display().to_string(), e))
    };
    write("length_stats.csv", emit::length_csv(&lengths))?;
    write("run_stats.csv", emit::run_csv(&runs))?;
    write(
        "summary.json",
        emit::json_string(&emit::summary_json(tokens, &lengths, &runs, &rare)),
    )?;
    Ok(())
}
