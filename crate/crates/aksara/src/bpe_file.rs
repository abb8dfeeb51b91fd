//! BPE model files.
//!
//! ```text
//! #aksara-bpe v1 marker=+
//! a b
//! ab c
//! ```
//!
//! One merge per line, in training order.

use std::fs;
use std::path::Path;

use aksara_core::bpe::BpeModel;

use crate::error::{Error, Result};

const MAGIC: &str = "#aksara-bpe";
const VERSION: &str = "v1";

pub fn to_string(model: &BpeModel) -> String {
    let mut out = format!("{MAGIC} {VERSION} marker={}\n", model.marker());
    for (l, r) in model.merges() {
        out.push_str(l);
        out.push(' ');
        out.push_str(r);
        out.push('\n');
    }
    out
}

/// Parse a model file. `file` names the source in error messages.
pub fn parse(text: &str, file: &str) -> Result<BpeModel> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, l)| l).unwrap_or("");
    let mut fields = header.split(' ');
    if fields.next() != Some(MAGIC) {
        return Err(Error::data(file, Some(1), format!("missing {MAGIC} header")));
    }
    if fields.next() != Some(VERSION) {
        return Err(Error::data(file, Some(1), "unsupported model version"));
    }
    let marker = match fields.next().and_then(|f| f.strip_prefix("marker=")) {
        Some(m) if !m.is_empty() && fields.next().is_none() => m,
        _ => return Err(Error::data(file, Some(1), "header must end with marker=<string>")),
    };

    let mut merges = Vec::new();
    for (n, line) in lines {
        let parts: Vec<&str> = line.split(' ').collect();
        match parts.as_slice() {
            [l, r] if !l.is_empty() && !r.is_empty() => merges.push((l.to_string(), r.to_string())),
            _ => {
                return Err(Error::data(
                    file,
                    Some(n + 1),
                    format!("expected `left right`, found {line:?}"),
                ))
            }
        }
    }
    Ok(BpeModel::from_merges(merges, marker))
}

pub fn save(model: &BpeModel, path: &Path) -> Result<()> {
    fs::write(path, to_string(model)).map_err(|e| Error::io(&path.display().to_string(), e))
}

pub fn load(path: &Path) -> Result<BpeModel> {
    let file = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Error::io(&file, e))?;
    parse(&text, &file)
}
