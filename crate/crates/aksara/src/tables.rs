//! Script-table loading. `AKSARA_TABLES` points at a directory holding
//! `<script>.tab` files that replace the shipped ones.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use aksara_core::{Error as CoreError, ScriptId, ScriptTable};

use crate::error::{Error, Result};

pub const TABLES_ENV: &str = "AKSARA_TABLES";

pub fn table_path(dir: &Path, script: ScriptId) -> PathBuf {
    dir.join(format!("{}.tab", script.name()))
}

/// Load from `dir`, or the shipped table when `dir` is `None`.
pub fn load_from(dir: Option<&Path>, script: ScriptId) -> Result<ScriptTable> {
    let Some(dir) = dir else {
        return Ok(ScriptTable::builtin(script));
    };
    let path = table_path(dir, script);
    let file = path.display().to_string();
    let source = fs::read_to_string(&path).map_err(|e| Error::io(&file, e))?;
    ScriptTable::parse(script, &source).map_err(|e| match e {
        CoreError::TableSyntax { line, message } => Error::data(&file, Some(line), message),
        other => Error::data(&file, None, other),
    })
}

/// Load honoring `AKSARA_TABLES`.
pub fn load(script: ScriptId) -> Result<ScriptTable> {
    let dir = env::var_os(TABLES_ENV).map(PathBuf::from);
    load_from(dir.as_deref(), script)
}

/// `name vN` for every script, for `--version`.
pub fn versions() -> Result<Vec<String>> {
    ScriptId::ALL
        .iter()
        .map(|&s| {
            let table = load(s)?;
            Ok(format!("{} v{}", s.name(), table.version().unwrap_or("?")))
        })
        .collect()
}
