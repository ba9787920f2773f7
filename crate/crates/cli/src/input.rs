use std::fmt;
use std::fs;

use solvquot::groups::{builtin_group, chief_series, ExtensionTower, FiniteGroupTable};
use solvquot::presentations::{builtin_presentation, parse_presentation, Presentation};

/// Failure of a run, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(solvquot::Error),
    /// checks ran but some disagreed
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<solvquot::Error> for CliError {
    fn from(e: solvquot::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read `{path}`: {e}")))
}

/// `builtin:family(args)`, `file:path`, an inline `< ... | ... >`, or a bare
/// family name.
pub fn load_source(spec: &str) -> CliResult<Presentation> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        return Ok(builtin_presentation(rest)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(parse_presentation(&read(path)?)?);
    }
    if spec.trim_start().starts_with('<') {
        return Ok(parse_presentation(spec)?);
    }
    Ok(builtin_presentation(spec)?)
}

/// A group spec, or `file:path` holding a multiplication table.
pub fn load_target(spec: &str) -> CliResult<ExtensionTower> {
    if let Some(path) = spec.strip_prefix("file:") {
        let table = FiniteGroupTable::parse(&read(path)?)?;
        return Ok(chief_series(&table)?.with_name(spec));
    }
    Ok(builtin_group(spec)?)
}

pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ';' || (c == ',' && depth == 0) {
            if !cur.trim().is_empty() {
                out.push(cur.trim().to_string());
            }
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
